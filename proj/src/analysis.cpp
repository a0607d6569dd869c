#include "pgc/analysis.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <string>

#include "pgc/kernels.hpp"
#include "pgc/parallel.hpp"

namespace pgc {

namespace {

std::vector<std::uint64_t> ids_mask(const GeometryContext& ctx, const std::vector<std::uint64_t>& ids) {
    std::vector<std::uint64_t> mask(ctx.mask_words(), 0);
    for (std::uint64_t id : ids) {
        if (id >= ctx.num_points()) throw std::invalid_argument("point id out of range");
        mask[id >> 6] |= std::uint64_t(1) << (id & 63);
    }
    return mask;
}

SecantSpectrum spectrum_of_mask(const GeometryContext& ctx, const std::vector<std::uint64_t>& mask,
                                int dim, unsigned jobs) {
    if (dim < 1 || dim > ctx.n() - 1) throw std::invalid_argument("spectrum dimension out of range");
    const auto& masks = ctx.subspace_masks(dim);
    std::vector<std::map<std::uint64_t, std::uint64_t>> local(jobs > 1 ? jobs : 1);
    parallel_chunks(masks.size(), jobs <= 1 ? 1 : jobs,
                    [&](unsigned worker, std::uint64_t begin, std::uint64_t end) {
                        const auto& ops = kern::ops();
                        auto& counts = local[worker];
                        for (std::uint64_t i = begin; i < end; ++i)
                            counts[ops.and_popcount(mask.data(), masks[i].data(), mask.size())] += 1;
                    });
    SecantSpectrum out;
    out.dim = dim;
    for (const auto& counts : local)
        for (const auto& [i, n] : counts) out.counts[i] += n;
    return out;
}

}  // namespace

SecantSpectrum secant_spectrum(const GeometryContext& ctx, const PointSet& s, int dim, unsigned jobs) {
    if (!(s.geometry == ctx.descriptor())) throw std::invalid_argument("point set geometry mismatch");
    return spectrum_of_mask(ctx, ids_mask(ctx, s.ids), dim, jobs);
}

SecantSpectrum secant_spectrum(const GeometryContext& ctx, const Codeword& c, int dim, unsigned jobs) {
    if (!(c.geometry == ctx.descriptor())) throw std::invalid_argument("codeword geometry mismatch");
    return spectrum_of_mask(ctx, kern::pack_bits(c.values.data(), c.values.size()), dim, jobs);
}

bool moment_identities(const SecantSpectrum& planes, std::uint64_t s, std::uint64_t q) {
    unsigned __int128 sum1 = 0, sum2 = 0;
    for (const auto& [i, n] : planes.counts) {
        sum1 += (unsigned __int128)(i)*n;
        sum2 += (unsigned __int128)(i)*i * n;
    }
    unsigned __int128 theta2 = theta(2, q), theta1 = theta(1, q);
    unsigned __int128 want1 = (unsigned __int128)(s)*theta2;
    unsigned __int128 want2 = s == 0 ? 0 : (unsigned __int128)(s) * (theta2 + (s - 1) * theta1);
    return sum1 == want1 && sum2 == want2;
}

long long standard_eq_rhs2(std::uint64_t q, std::uint64_t m) {
    long long Q = (long long)(q), M = (long long)(m);
    return (Q + 2) * (2 * Q * M * M - 2 * (2 * Q - 1) * M - Q * (5 * Q - 2));
}

StandardEqCheck standard_eq_check(const SecantSpectrum& planes, std::uint64_t q, std::uint64_t m) {
    StandardEqCheck out;
    long long lo = (long long)(q) + 2, hi = (long long)(q + m);
    out.all_terms_nonnegative = true;
    long long lhs2 = 0;
    for (const auto& [iu, n] : planes.counts) {
        if (iu == 0 || n == 0) continue;
        long long i = (long long)(iu);
        long long term = (i - lo) * (i - hi);
        if (term < 0) out.all_terms_nonnegative = false;
        lhs2 += 2 * term * (long long)(n);
    }
    out.lhs2 = lhs2;
    out.rhs2 = standard_eq_rhs2(q, m);
    out.holds = out.lhs2 <= out.rhs2;
    return out;
}

std::optional<std::uint64_t> min_large_secant(const GeometryContext& ctx, const PointSet& s) {
    if (!(s.geometry == ctx.descriptor())) throw std::invalid_argument("point set geometry mismatch");
    auto mask = ids_mask(ctx, s.ids);
    const auto& lines = ctx.subspace_masks(1);
    const auto& ops = kern::ops();
    std::optional<std::uint64_t> best;
    for (const auto& line : lines) {
        std::uint64_t hits = ops.and_popcount(mask.data(), line.data(), mask.size());
        if (hits > 2 && (!best.has_value() || hits < *best)) best = hits;
    }
    return best;
}

KmLineCounts km_line_counts(std::uint64_t q, std::uint64_t t) {
    if (t <= 2 || t % 2 != 0) throw std::invalid_argument("KM-arc type must be even and > 2");
    if (q % t != 0) throw std::invalid_argument("KM-arc type must divide q");
    KmLineCounts out;
    out.t_secants = (q + t) / t;
    out.two_secants = q * (q + t) / 2;
    out.zero_secants = theta(2, q) - out.t_secants - out.two_secants;
    return out;
}

std::optional<HyperovalCylinder> detect_hyperoval_cylinder(const GeometryContext& ctx, const PointSet& s,
                                                           bool verify_preconditions) {
    if (ctx.n() != 3) throw std::invalid_argument("hyperoval cylinders live in PG(3,q)");
    std::uint64_t q = ctx.q();
    if (verify_preconditions) {
        if (s.ids.size() != q * (q + 2))
            throw std::invalid_argument("expected an even set of size q(q+2), got size " +
                                        std::to_string(s.ids.size()));
        EvenSetCheck check = is_even_set(ctx, s, 1);
        if (!check.all_even || !check.non_empty)
            throw std::invalid_argument("input is not a non-empty even set");
    }

    auto mask = ids_mask(ctx, s.ids);
    auto in_set = [&](std::uint64_t id) { return (mask[id >> 6] >> (id & 63)) & 1; };
    const auto& line_masks = ctx.subspace_masks(1);
    const auto& line_points = ctx.subspace_point_ids(1);
    const auto& ops = kern::ops();

    std::vector<std::uint64_t> candidates;
    for (std::uint64_t i = 0; i < line_masks.size(); ++i) {
        if (ops.and_popcount(mask.data(), line_masks[i].data(), mask.size()) != q) continue;
        for (std::uint32_t id : line_points[i])
            if (!in_set(id)) candidates.push_back(id);
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    if (candidates.empty()) return std::nullopt;

    GeometryContext plane_ctx(GeometryDescriptor{2, ctx.field().p(), ctx.field().e()});
    const auto& planes = ctx.subspaces(2);
    const auto& plane_masks = ctx.subspace_masks(2);

    for (std::uint64_t vertex : candidates) {
        std::uint64_t pick = planes.size();
        for (std::uint64_t i = 0; i < planes.size(); ++i) {
            if (((plane_masks[i][vertex >> 6] >> (vertex & 63)) & 1) == 0) {
                pick = i;
                break;
            }
        }
        if (pick == planes.size()) continue;
        const Subspace& base_plane = planes[pick];

        auto chart = subspace_chart(ctx, base_plane);
        std::vector<std::uint64_t> base_ids;
        for (std::uint64_t sub = 0; sub < chart.size(); ++sub)
            if (in_set(chart[sub])) base_ids.push_back(sub);
        if (base_ids.size() != q + 2) continue;

        PointSet base;
        base.geometry = plane_ctx.descriptor();
        base.ids = base_ids;
        EvenSetCheck hyper = is_even_set(plane_ctx, base, 1);
        if (!hyper.all_even) continue;

        PointSet rebuilt = cylinder_set(ctx, point_subspace(ctx, vertex), base_plane, base);
        if (rebuilt.ids == s.ids) {
            HyperovalCylinder out;
            out.vertex = vertex;
            out.base_plane = base_plane;
            out.base = std::move(base);
            return out;
        }
    }
    return std::nullopt;
}

namespace detail {

std::vector<std::uint64_t> vertex_set_for(const GeometryContext& ctx, const Codeword& c,
                                          const Subspace& plane, std::uint64_t q_point) {
    std::vector<std::uint64_t> out;
    Subspace q_sub = point_subspace(ctx, q_point);
    for (std::uint64_t pid = 0; pid < ctx.num_points(); ++pid) {
        if (incident(ctx, pid, plane)) continue;
        if (pid == q_point) continue;
        Subspace line = span_pair(ctx, point_subspace(ctx, pid), q_sub);
        bool valid = true;
        for (std::uint64_t on_line : points_in(ctx, line)) {
            if (on_line == pid) {
                if (c.values[on_line] != 0) valid = false;
            } else if (c.values[on_line] == 0) {
                valid = false;
            }
            if (!valid) break;
        }
        if (valid) out.push_back(pid);
    }
    return out;
}

}  // namespace detail

CylinderRecognition detect_cylinder_codeword(const GeometryContext& ctx, const Codeword& c,
                                             std::uint64_t d2, bool verify_preconditions) {
    if (!(c.geometry == ctx.descriptor())) throw std::invalid_argument("codeword geometry mismatch");
    if (ctx.n() < 3) throw std::invalid_argument("cylinder recognition needs n >= 3");
    std::uint64_t q = ctx.q();
    std::uint64_t expected = d2;
    for (int i = 0; i + 2 < ctx.n(); ++i) expected *= q;
    if (verify_preconditions) {
        if (weight(c) != expected)
            throw std::invalid_argument("codeword weight is not q^{n-2} * d2");
        if (!is_dual_codeword(ctx, c, 1))
            throw std::invalid_argument("input is not a dual codeword for lines");
    }

    CylinderRecognition rec;
    auto supp_mask = kern::pack_bits(c.values.data(), c.values.size());
    const auto& planes = ctx.subspaces(2);
    const auto& plane_masks = ctx.subspace_masks(2);
    const auto& plane_points = ctx.subspace_point_ids(2);
    const auto& ops = kern::ops();

    std::uint64_t pick = planes.size();
    for (std::uint64_t i = 0; i < planes.size(); ++i) {
        if (ops.and_popcount(supp_mask.data(), plane_masks[i].data(), supp_mask.size()) == d2) {
            pick = i;
            break;
        }
    }
    if (pick == planes.size()) return rec;
    const Subspace& base_plane = planes[pick];

    std::uint64_t q_point = ctx.num_points();
    for (std::uint32_t id : plane_points[pick]) {
        if (c.values[id] != 0) {
            q_point = id;
            break;
        }
    }
    if (q_point == ctx.num_points()) return rec;

    rec.vertex_set = detail::vertex_set_for(ctx, c, base_plane, q_point);
#ifndef NDEBUG
    // the vertex set must not depend on the choice of Q
    for (std::uint32_t id : plane_points[pick]) {
        if (id != q_point && c.values[id] != 0) {
            assert(detail::vertex_set_for(ctx, c, base_plane, id) == rec.vertex_set);
            break;
        }
    }
#endif

    if (rec.vertex_set.empty()) return rec;

    // candidate vertices: the span itself when the set is exactly an
    // (n-3)-space, otherwise (vertices are not unique when d2 = 2q, e.g.
    // q = 2) every (n-3)-space inside the set, smallest first
    std::vector<Subspace> candidates;
    if (rec.vertex_set.size() == theta(ctx.n() - 3, q)) {
        Subspace direct = span_points(ctx, rec.vertex_set);
        if (direct.dim == ctx.n() - 3 && points_in(ctx, direct) == rec.vertex_set)
            candidates.push_back(std::move(direct));
    }
    if (candidates.empty()) {
        for (const Subspace& s : ctx.subspaces(ctx.n() - 3)) {
            auto pts = points_in(ctx, s);
            if (std::includes(rec.vertex_set.begin(), rec.vertex_set.end(), pts.begin(), pts.end()))
                candidates.push_back(s);
        }
    }
    if (candidates.empty()) return rec;

    Restriction base = restrict_codeword(ctx, c, base_plane);
    {
        GeometryContext plane_ctx(base.subgeometry);
        if (!is_dual_codeword(plane_ctx, base.word, 1)) return rec;
    }

    for (Subspace& vertex : candidates) {
        if (meet(ctx, vertex, base_plane).dim != -1) continue;
        CylinderDescriptor desc;
        desc.vertex = vertex;
        desc.base_plane = base_plane;
        desc.base_word = base.word;
        Codeword rebuilt = cylinder_codeword(ctx, desc);
        if (rebuilt == c) {
            rec.is_cylinder = true;
            rec.vertex = std::move(vertex);
            rec.base_plane = base_plane;
            rec.base = base.word;
            return rec;
        }
    }
    return rec;
}

}  // namespace pgc
