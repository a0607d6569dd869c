#include "pgc/projgeom.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "pgc/kernels.hpp"

namespace pgc {

std::uint64_t GeometryDescriptor::q() const {
    std::uint64_t value = 1;
    for (std::uint64_t i = 0; i < e; ++i) value *= p;
    return value;
}

std::uint64_t theta(int n, std::uint64_t q) {
    if (n < 0) return 0;
    std::uint64_t total = 0, power = 1;
    for (int i = 0; i <= n; ++i) {
        total += power;
        if (i < n && power > ~std::uint64_t(0) / q) throw std::overflow_error("theta overflows");
        power *= i < n ? q : 1;
    }
    return total;
}

std::uint64_t subspace_count(int n, int k, std::uint64_t q) {
    if (k < 0 || k > n) return k == -1 ? 1 : 0;
    // [n+1 choose k+1]_q as an exact product of integer ratios
    unsigned __int128 num = 1, den = 1;
    auto qpow_minus1 = [&](int t) {
        unsigned __int128 v = 1;
        for (int i = 0; i < t; ++i) v *= q;
        return v - 1;
    };
    for (int i = 0; i < k + 1; ++i) {
        num *= qpow_minus1(n + 1 - i);
        den *= qpow_minus1(k + 1 - i);
    }
    unsigned __int128 result = num / den;
    if (result > ~std::uint64_t(0)) throw std::overflow_error("subspace count overflows");
    return std::uint64_t(result);
}

namespace detail {

int rref_in_place(const FieldSpec& f, std::vector<std::vector<std::uint64_t>>& rows) {
    if (rows.empty()) return 0;
    std::size_t ncols = rows[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
        std::size_t pivot = r;
        while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[r], rows[pivot]);
        std::uint64_t scale = f.inv(rows[r][c]);
        for (std::size_t j = c; j < ncols; ++j) rows[r][j] = f.mul(rows[r][j], scale);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            std::uint64_t factor = rows[i][c];
            for (std::size_t j = c; j < ncols; ++j)
                rows[i][j] = f.sub(rows[i][j], f.mul(factor, rows[r][j]));
        }
        ++r;
    }
    rows.resize(r);
    return int(r);
}

std::vector<std::vector<std::uint64_t>> enumerate_canonical_vectors(const FieldSpec& f, int len) {
    std::uint64_t q = f.q();
    std::vector<std::vector<std::uint64_t>> out;
    out.reserve(theta(len - 1, q));
    for (int pivot = 0; pivot < len; ++pivot) {
        std::vector<std::uint64_t> v(std::size_t(len), 0);
        v[std::size_t(pivot)] = 1;
        // ascending base-q odometer over the tail, leftmost digit most significant
        while (true) {
            out.push_back(v);
            int d = len - 1;
            while (d > pivot && v[std::size_t(d)] == q - 1) v[std::size_t(d--)] = 0;
            if (d == pivot) break;
            v[std::size_t(d)] += 1;
        }
    }
    return out;
}

std::uint64_t canonical_rank(std::uint64_t q, const std::vector<std::uint64_t>& v) {
    std::size_t len = v.size();
    std::size_t pivot = 0;
    while (pivot < len && v[pivot] == 0) ++pivot;
    if (pivot == len) throw std::invalid_argument("zero vector has no projective rank");
    std::uint64_t id = 0, power = 1;
    // points with an earlier pivot precede; q^(len-1-i) of them per pivot i
    for (std::size_t i = 0; i < len - 1; ++i) power *= q;
    std::uint64_t group = power;
    for (std::size_t i = 0; i < pivot; ++i) {
        id += group;
        group /= q;
    }
    std::uint64_t tail = 0;
    for (std::size_t i = pivot + 1; i < len; ++i) tail = tail * q + v[i];
    return id + tail;
}

}  // namespace detail

std::vector<std::uint64_t> canonical_coords(const FieldSpec& f, std::vector<std::uint64_t> v) {
    std::size_t pivot = 0;
    while (pivot < v.size() && v[pivot] == 0) ++pivot;
    if (pivot == v.size()) throw std::invalid_argument("cannot canonicalize the zero vector");
    if (v[pivot] != 1) {
        std::uint64_t scale = f.inv(v[pivot]);
        for (std::size_t i = pivot; i < v.size(); ++i) v[i] = f.mul(v[i], scale);
    }
    return v;
}

GeometryContext::GeometryContext(int n, FieldPtr field) : n_(n), field_(std::move(field)) {
    if (n_ < 1) throw std::invalid_argument("projective dimension must be >= 1");
    if (field_ == nullptr) throw std::invalid_argument("null field");
    theta(n_, field_->q());  // overflow guard
    auto vectors = detail::enumerate_canonical_vectors(*field_, n_ + 1);
    points_.resize(vectors.size());
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        points_[i].coords = std::move(vectors[i]);
        points_[i].id = i;
    }
    dims_.resize(std::size_t(n_) + 1);
}

GeometryContext::GeometryContext(const GeometryDescriptor& g)
    : GeometryContext(int(g.n), FieldSpec::make(g.p, g.e)) {}

GeometryDescriptor GeometryContext::descriptor() const {
    return GeometryDescriptor{std::uint64_t(n_), field_->p(), field_->e()};
}

std::uint64_t GeometryContext::point_id(const std::vector<std::uint64_t>& coords) const {
    if (coords.size() != std::size_t(n_) + 1) throw std::invalid_argument("coordinate length mismatch");
    auto canon = canonical_coords(*field_, coords);
    return detail::canonical_rank(field_->q(), canon);
}

std::size_t GeometryContext::mask_words() const { return kern::words_for(points_.size()); }

const std::vector<Subspace>& GeometryContext::subspaces(int k) const {
    if (k < 0 || k > n_) throw std::invalid_argument("subspace dimension out of range");
    DimCache& cache = dims_[std::size_t(k)];
    std::call_once(cache.table_once, [&] {
        if (k == 0) {
            // points as 0-spaces, table order = point order
            cache.table.resize(points_.size());
            for (std::size_t i = 0; i < points_.size(); ++i) {
                cache.table[i].dim = 0;
                cache.table[i].rows = points_[i].coords;
                cache.table[i].id = i;
            }
            return;
        }
        const FieldSpec& f = *field_;
        std::uint64_t q = f.q();
        int m = n_ + 1, r = k + 1;
        std::vector<Subspace> table;
        table.reserve(subspace_count(n_, k, q));
        // enumerate RREF matrices directly: pivot columns + free entries
        std::vector<int> pivots(static_cast<std::size_t>(r));
        for (int i = 0; i < r; ++i) pivots[std::size_t(i)] = i;
        while (true) {
            std::vector<bool> is_pivot(std::size_t(m), false);
            for (int c : pivots) is_pivot[std::size_t(c)] = true;
            std::vector<std::pair<int, int>> free_pos;
            for (int i = 0; i < r; ++i)
                for (int j = pivots[std::size_t(i)] + 1; j < m; ++j)
                    if (!is_pivot[std::size_t(j)]) free_pos.emplace_back(i, j);

            std::vector<std::uint64_t> fill(free_pos.size(), 0);
            while (true) {
                Subspace s;
                s.dim = k;
                s.rows.assign(std::size_t(r) * m, 0);
                for (int i = 0; i < r; ++i) s.rows[std::size_t(i) * m + pivots[std::size_t(i)]] = 1;
                for (std::size_t t = 0; t < free_pos.size(); ++t)
                    s.rows[std::size_t(free_pos[t].first) * m + free_pos[t].second] = fill[t];
                table.push_back(std::move(s));
                std::size_t d = fill.size();
                while (d > 0 && fill[d - 1] == q - 1) fill[--d] = 0;
                if (d == 0) break;
                fill[d - 1] += 1;
            }

            // next pivot combination
            int i = r - 1;
            while (i >= 0 && pivots[std::size_t(i)] == m - r + i) --i;
            if (i < 0) break;
            pivots[std::size_t(i)] += 1;
            for (int j = i + 1; j < r; ++j) pivots[std::size_t(j)] = pivots[std::size_t(j - 1)] + 1;
        }
        std::sort(table.begin(), table.end(),
                  [](const Subspace& a, const Subspace& b) { return a.rows < b.rows; });
        for (std::size_t i = 0; i < table.size(); ++i) table[i].id = i;
        cache.table = std::move(table);
    });
    return cache.table;
}

std::uint64_t GeometryContext::subspace_id(const Subspace& s) const {
    if (s.dim == 0) return detail::canonical_rank(field_->q(), s.rows);
    const auto& table = subspaces(s.dim);
    auto it = std::lower_bound(table.begin(), table.end(), s,
                               [](const Subspace& a, const Subspace& b) { return a.rows < b.rows; });
    if (it == table.end() || !it->same_rows(s)) throw std::invalid_argument("subspace not in canonical form");
    return std::uint64_t(it - table.begin());
}

const std::vector<std::vector<std::uint32_t>>& GeometryContext::subspace_point_ids(int k) const {
    const auto& table = subspaces(k);
    DimCache& cache = dims_[std::size_t(k)];
    std::call_once(cache.points_once, [&] {
        cache.point_ids.resize(table.size());
        for (std::size_t i = 0; i < table.size(); ++i) {
            auto ids = points_in(*this, table[i]);
            cache.point_ids[i].assign(ids.begin(), ids.end());
        }
    });
    return cache.point_ids;
}

const std::vector<std::vector<std::uint64_t>>& GeometryContext::subspace_masks(int k) const {
    const auto& lists = subspace_point_ids(k);
    DimCache& cache = dims_[std::size_t(k)];
    std::call_once(cache.masks_once, [&] {
        std::size_t words = mask_words();
        cache.masks.resize(lists.size());
        for (std::size_t i = 0; i < lists.size(); ++i) {
            cache.masks[i].assign(words, 0);
            for (std::uint32_t id : lists[i]) cache.masks[i][id >> 6] |= std::uint64_t(1) << (id & 63);
        }
    });
    return cache.masks;
}

bool incident(const GeometryContext& ctx, const Point& P, const Subspace& S) {
    if (S.dim < 0) return false;
    const FieldSpec& f = ctx.field();
    std::size_t m = std::size_t(ctx.n()) + 1;
    // coefficients against RREF rows come straight off the pivot columns
    std::vector<std::uint64_t> reconstructed(m, 0);
    for (int i = 0; i <= S.dim; ++i) {
        const std::uint64_t* row = S.rows.data() + std::size_t(i) * m;
        std::size_t pc = 0;
        while (pc < m && row[pc] == 0) ++pc;
        std::uint64_t coeff = P.coords[pc];
        if (coeff == 0) continue;
        for (std::size_t j = pc; j < m; ++j)
            reconstructed[j] = f.add(reconstructed[j], f.mul(coeff, row[j]));
    }
    return reconstructed == P.coords;
}

bool incident(const GeometryContext& ctx, std::uint64_t point_id, const Subspace& S) {
    return incident(ctx, ctx.point(point_id), S);
}

Subspace point_subspace(const GeometryContext& ctx, std::uint64_t point_id) {
    Subspace s;
    s.dim = 0;
    s.rows = ctx.point(point_id).coords;
    s.id = point_id;
    return s;
}

namespace {

Subspace from_rows(const GeometryContext& ctx, std::vector<std::vector<std::uint64_t>> rows) {
    int rank = detail::rref_in_place(ctx.field(), rows);
    Subspace s;
    s.dim = rank - 1;
    std::size_t m = std::size_t(ctx.n()) + 1;
    s.rows.reserve(std::size_t(rank) * m);
    for (const auto& r : rows) s.rows.insert(s.rows.end(), r.begin(), r.end());
    return s;
}

}  // namespace

Subspace span_of(const GeometryContext& ctx, const std::vector<Subspace>& parts) {
    std::size_t m = std::size_t(ctx.n()) + 1;
    std::vector<std::vector<std::uint64_t>> rows;
    for (const Subspace& s : parts) {
        if (s.dim < 0) continue;
        if (s.rows.size() != std::size_t(s.dim + 1) * m) throw std::invalid_argument("subspace shape mismatch");
        for (int i = 0; i <= s.dim; ++i)
            rows.emplace_back(s.rows.begin() + std::size_t(i) * m, s.rows.begin() + std::size_t(i + 1) * m);
    }
    return from_rows(ctx, std::move(rows));
}

Subspace span_pair(const GeometryContext& ctx, const Subspace& a, const Subspace& b) {
    return span_of(ctx, {a, b});
}

Subspace span_points(const GeometryContext& ctx, const std::vector<std::uint64_t>& point_ids) {
    std::vector<std::vector<std::uint64_t>> rows;
    rows.reserve(point_ids.size());
    for (std::uint64_t id : point_ids) rows.push_back(ctx.point(id).coords);
    return from_rows(ctx, std::move(rows));
}

// Zassenhaus: RREF of [A|A; B|0]; rows with zero left half carry the
// intersection in their right half.
Subspace meet(const GeometryContext& ctx, const Subspace& a, const Subspace& b) {
    if (a.dim < 0 || b.dim < 0) return Subspace{};
    std::size_t m = std::size_t(ctx.n()) + 1;
    std::vector<std::vector<std::uint64_t>> block;
    for (int i = 0; i <= a.dim; ++i) {
        std::vector<std::uint64_t> row(2 * m, 0);
        for (std::size_t j = 0; j < m; ++j) row[j] = row[m + j] = a.rows[std::size_t(i) * m + j];
        block.push_back(std::move(row));
    }
    for (int i = 0; i <= b.dim; ++i) {
        std::vector<std::uint64_t> row(2 * m, 0);
        for (std::size_t j = 0; j < m; ++j) row[j] = b.rows[std::size_t(i) * m + j];
        block.push_back(std::move(row));
    }
    detail::rref_in_place(ctx.field(), block);
    std::vector<std::vector<std::uint64_t>> inter;
    for (const auto& row : block) {
        bool left_zero = std::all_of(row.begin(), row.begin() + std::ptrdiff_t(m),
                                     [](std::uint64_t v) { return v == 0; });
        if (left_zero) inter.emplace_back(row.begin() + std::ptrdiff_t(m), row.end());
    }
    return from_rows(ctx, std::move(inter));
}

std::vector<std::uint64_t> points_in(const GeometryContext& ctx, const Subspace& S) {
    std::vector<std::uint64_t> ids;
    if (S.dim < 0) return ids;
    const FieldSpec& f = ctx.field();
    std::size_t m = std::size_t(ctx.n()) + 1;
    auto lambdas = detail::enumerate_canonical_vectors(f, S.dim + 1);
    ids.reserve(lambdas.size());
    for (const auto& lam : lambdas) {
        std::vector<std::uint64_t> x(m, 0);
        for (int i = 0; i <= S.dim; ++i) {
            if (lam[std::size_t(i)] == 0) continue;
            for (std::size_t j = 0; j < m; ++j)
                x[j] = f.add(x[j], f.mul(lam[std::size_t(i)], S.rows[std::size_t(i) * m + j]));
        }
        ids.push_back(ctx.point_id(x));
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

std::vector<std::uint64_t> subspace_chart(const GeometryContext& ctx, const Subspace& S) {
    if (S.dim < 0) throw std::invalid_argument("empty subspace has no chart");
    const FieldSpec& f = ctx.field();
    std::size_t m = std::size_t(ctx.n()) + 1;
    auto lambdas = detail::enumerate_canonical_vectors(f, S.dim + 1);
    std::vector<std::uint64_t> parent(lambdas.size());
    for (std::size_t s = 0; s < lambdas.size(); ++s) {
        std::vector<std::uint64_t> x(m, 0);
        for (int i = 0; i <= S.dim; ++i) {
            if (lambdas[s][std::size_t(i)] == 0) continue;
            for (std::size_t j = 0; j < m; ++j)
                x[j] = f.add(x[j], f.mul(lambdas[s][std::size_t(i)], S.rows[std::size_t(i) * m + j]));
        }
        parent[s] = ctx.point_id(x);
    }
    return parent;
}

}  // namespace pgc
