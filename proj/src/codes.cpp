#include "pgc/codes.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "pgc/kernels.hpp"

namespace pgc {

namespace {

void check_geometry(const GeometryContext& ctx, const Codeword& c) {
    if (!(c.geometry == ctx.descriptor())) throw std::invalid_argument("codeword geometry mismatch");
    if (c.values.size() != ctx.num_points()) throw std::invalid_argument("codeword length mismatch");
}

std::vector<std::uint8_t> inverse_table_mod_p(std::uint32_t p) {
    std::vector<std::uint8_t> inv(p, 0);
    for (std::uint32_t a = 1; a < p; ++a) {
        std::uint32_t x = 1, base = a, k = p - 2;
        while (k != 0) {
            if (k & 1) x = x * base % p;
            base = base * base % p;
            k >>= 1;
        }
        inv[a] = std::uint8_t(x);
    }
    return inv;
}

}  // namespace

PMatrix incidence_matrix(const GeometryContext& ctx, int k) {
    if (k < 1 || k > ctx.n() - 1) throw std::invalid_argument("incidence matrix needs 1 <= k <= n-1");
    std::uint64_t p = ctx.field().p();
    if (p > 251) throw std::invalid_argument("characteristic too large for dense F_p matrices");
    const auto& lists = ctx.subspace_point_ids(k);
    PMatrix m;
    m.rows = lists.size();
    m.cols = ctx.num_points();
    m.p = std::uint32_t(p);
    m.entries.assign(m.rows * m.cols, 0);
    for (std::uint64_t r = 0; r < m.rows; ++r)
        for (std::uint32_t id : lists[r]) m.entries[r * m.cols + id] = 1;
    return m;
}

namespace detail {

RawKernel rank_kernel_bytes(std::uint64_t rows, std::uint64_t cols, std::uint32_t p,
                            const std::vector<std::uint8_t>& entries) {
    const auto& k = kern::ops();
    std::vector<std::uint8_t> work(entries);
    std::vector<std::uint64_t> pivot_cols;
    auto inv = inverse_table_mod_p(p);

    std::uint64_t r = 0;
    for (std::uint64_t c = 0; c < cols && r < rows; ++c) {
        std::uint64_t pivot = r;
        while (pivot < rows && work[pivot * cols + c] == 0) ++pivot;
        if (pivot == rows) continue;
        if (pivot != r)
            std::swap_ranges(work.begin() + std::ptrdiff_t(pivot * cols),
                             work.begin() + std::ptrdiff_t((pivot + 1) * cols),
                             work.begin() + std::ptrdiff_t(r * cols));
        std::uint8_t* prow = work.data() + r * cols;
        std::uint8_t scale = inv[prow[c]];
        if (scale != 1)
            for (std::uint64_t j = c; j < cols; ++j) prow[j] = std::uint8_t(prow[j] * scale % p);
        for (std::uint64_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            std::uint8_t factor = work[i * cols + c];
            if (factor == 0) continue;
            k.axpy_bytes_mod_p(work.data() + i * cols, std::uint8_t(p - factor), prow, cols,
                               std::uint8_t(p));
        }
        pivot_cols.push_back(c);
        ++r;
    }

    RawKernel out;
    out.rank = r;
    std::vector<bool> is_pivot(cols, false);
    for (std::uint64_t c : pivot_cols) is_pivot[c] = true;
    for (std::uint64_t fc = 0; fc < cols; ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<std::uint8_t> v(cols, 0);
        v[fc] = 1;
        for (std::uint64_t j = 0; j < pivot_cols.size(); ++j) {
            std::uint8_t coeff = work[j * cols + fc];
            if (coeff != 0) v[pivot_cols[j]] = std::uint8_t(p - coeff);
        }
        out.basis.push_back(std::move(v));
    }

    // canonicalize the basis itself
    if (!out.basis.empty()) {
        std::uint64_t brows = out.basis.size();
        std::vector<std::uint8_t> bwork;
        bwork.reserve(brows * cols);
        for (const auto& v : out.basis) bwork.insert(bwork.end(), v.begin(), v.end());
        std::uint64_t br = 0;
        for (std::uint64_t c = 0; c < cols && br < brows; ++c) {
            std::uint64_t pivot = br;
            while (pivot < brows && bwork[pivot * cols + c] == 0) ++pivot;
            if (pivot == brows) continue;
            if (pivot != br)
                std::swap_ranges(bwork.begin() + std::ptrdiff_t(pivot * cols),
                                 bwork.begin() + std::ptrdiff_t((pivot + 1) * cols),
                                 bwork.begin() + std::ptrdiff_t(br * cols));
            std::uint8_t* prow = bwork.data() + br * cols;
            std::uint8_t scale = inv[prow[c]];
            if (scale != 1)
                for (std::uint64_t j = c; j < cols; ++j) prow[j] = std::uint8_t(prow[j] * scale % p);
            for (std::uint64_t i = 0; i < brows; ++i) {
                if (i == br) continue;
                std::uint8_t factor = bwork[i * cols + c];
                if (factor == 0) continue;
                k.axpy_bytes_mod_p(bwork.data() + i * cols, std::uint8_t(p - factor), prow, cols,
                                   std::uint8_t(p));
            }
            ++br;
        }
        for (std::uint64_t i = 0; i < brows; ++i)
            std::copy(bwork.begin() + std::ptrdiff_t(i * cols),
                      bwork.begin() + std::ptrdiff_t((i + 1) * cols), out.basis[i].begin());
    }
    return out;
}

RawKernel rank_kernel_gf2(std::uint64_t rows, std::uint64_t cols, const std::vector<std::uint8_t>& entries) {
    const auto& k = kern::ops();
    std::size_t words = kern::words_for(cols);
    std::vector<std::uint64_t> work(rows * words, 0);
    for (std::uint64_t i = 0; i < rows; ++i)
        for (std::uint64_t j = 0; j < cols; ++j)
            if (entries[i * cols + j] != 0) work[i * words + (j >> 6)] |= std::uint64_t(1) << (j & 63);

    auto bit = [&](std::uint64_t row, std::uint64_t col) {
        return (work[row * words + (col >> 6)] >> (col & 63)) & 1;
    };

    std::vector<std::uint64_t> pivot_cols;
    std::uint64_t r = 0;
    for (std::uint64_t c = 0; c < cols && r < rows; ++c) {
        std::uint64_t pivot = r;
        while (pivot < rows && bit(pivot, c) == 0) ++pivot;
        if (pivot == rows) continue;
        if (pivot != r)
            std::swap_ranges(work.begin() + std::ptrdiff_t(pivot * words),
                             work.begin() + std::ptrdiff_t((pivot + 1) * words),
                             work.begin() + std::ptrdiff_t(r * words));
        for (std::uint64_t i = 0; i < rows; ++i) {
            if (i == r || bit(i, c) == 0) continue;
            k.xor_words(work.data() + i * words, work.data() + r * words, words);
        }
        pivot_cols.push_back(c);
        ++r;
    }

    RawKernel out;
    out.rank = r;
    std::vector<bool> is_pivot(cols, false);
    for (std::uint64_t c : pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<std::uint64_t>> basis_bits;
    for (std::uint64_t fc = 0; fc < cols; ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<std::uint64_t> v(words, 0);
        v[fc >> 6] |= std::uint64_t(1) << (fc & 63);
        for (std::uint64_t j = 0; j < pivot_cols.size(); ++j)
            if (bit(j, fc)) v[pivot_cols[j] >> 6] |= std::uint64_t(1) << (pivot_cols[j] & 63);
        basis_bits.push_back(std::move(v));
    }

    // RREF of the basis
    std::uint64_t brows = basis_bits.size();
    std::uint64_t br = 0;
    auto bbit = [&](std::uint64_t row, std::uint64_t col) {
        return (basis_bits[row][col >> 6] >> (col & 63)) & 1;
    };
    for (std::uint64_t c = 0; c < cols && br < brows; ++c) {
        std::uint64_t pivot = br;
        while (pivot < brows && bbit(pivot, c) == 0) ++pivot;
        if (pivot == brows) continue;
        std::swap(basis_bits[pivot], basis_bits[br]);
        for (std::uint64_t i = 0; i < brows; ++i) {
            if (i == br || bbit(i, c) == 0) continue;
            k.xor_words(basis_bits[i].data(), basis_bits[br].data(), words);
        }
        ++br;
    }

    for (const auto& v : basis_bits) {
        std::vector<std::uint8_t> row(cols, 0);
        kern::unpack_bits(v.data(), cols, row.data());
        out.basis.push_back(std::move(row));
    }
    return out;
}

}  // namespace detail

RankKernel rank_and_kernel(const PMatrix& m, const GeometryDescriptor& geometry) {
    detail::RawKernel raw = m.p == 2 ? detail::rank_kernel_gf2(m.rows, m.cols, m.entries)
                                     : detail::rank_kernel_bytes(m.rows, m.cols, m.p, m.entries);
    RankKernel out;
    out.rank = raw.rank;
    out.kernel_basis.reserve(raw.basis.size());
    for (auto& v : raw.basis) out.kernel_basis.push_back(Codeword{geometry, std::move(v)});
    return out;
}

std::uint64_t weight(const Codeword& c) {
    return kern::ops().count_nonzero(c.values.data(), c.values.size());
}

std::vector<std::uint64_t> support(const Codeword& c) {
    std::vector<std::uint64_t> ids;
    for (std::uint64_t i = 0; i < c.values.size(); ++i)
        if (c.values[i] != 0) ids.push_back(i);
    return ids;
}

std::optional<std::uint64_t> dual_violation(const GeometryContext& ctx, const Codeword& c, int k) {
    check_geometry(ctx, c);
    std::uint64_t p = ctx.field().p();
    if (p == 2) {
        const auto& masks = ctx.subspace_masks(k);
        auto packed = kern::pack_bits(c.values.data(), c.values.size());
        const auto& ops = kern::ops();
        for (std::uint64_t i = 0; i < masks.size(); ++i)
            if (ops.and_popcount(packed.data(), masks[i].data(), packed.size()) & 1) return i;
        return std::nullopt;
    }
    const auto& lists = ctx.subspace_point_ids(k);
    for (std::uint64_t i = 0; i < lists.size(); ++i) {
        std::uint64_t sum = 0;
        for (std::uint32_t id : lists[i]) sum += c.values[id];
        if (sum % p != 0) return i;
    }
    return std::nullopt;
}

bool is_dual_codeword(const GeometryContext& ctx, const Codeword& c, int k) {
    return !dual_violation(ctx, c, k).has_value();
}

Restriction restrict_codeword(const GeometryContext& ctx, const Codeword& c, const Subspace& S) {
    check_geometry(ctx, c);
    if (S.dim < 2) throw std::invalid_argument("restriction needs a subspace of dimension >= 2");
    Restriction out;
    out.subgeometry = GeometryDescriptor{std::uint64_t(S.dim), ctx.field().p(), ctx.field().e()};
    out.parent_points = subspace_chart(ctx, S);
    out.word.geometry = out.subgeometry;
    out.word.values.resize(out.parent_points.size());
    for (std::size_t i = 0; i < out.parent_points.size(); ++i)
        out.word.values[i] = c.values[out.parent_points[i]];
    return out;
}

std::uint64_t restriction_weight(const GeometryContext& ctx, const Codeword& c, const Subspace& S) {
    check_geometry(ctx, c);
    std::uint64_t w = 0;
    for (std::uint64_t id : points_in(ctx, S)) w += (c.values[id] != 0);
    return w;
}

}  // namespace pgc
