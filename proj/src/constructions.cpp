#include "pgc/constructions.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "pgc/kernels.hpp"

namespace pgc {

namespace {

void check_sorted(const PointSet& s, std::uint64_t npoints) {
    for (std::size_t i = 0; i < s.ids.size(); ++i) {
        if (s.ids[i] >= npoints) throw std::invalid_argument("point id out of range");
        if (i > 0 && s.ids[i] <= s.ids[i - 1]) throw std::invalid_argument("point ids must be strictly increasing");
    }
}

std::vector<std::uint64_t> set_mask(const GeometryContext& ctx, const PointSet& s) {
    std::vector<std::uint64_t> mask(ctx.mask_words(), 0);
    for (std::uint64_t id : s.ids) mask[id >> 6] |= std::uint64_t(1) << (id & 63);
    return mask;
}

}  // namespace

PointSet regular_hyperoval(const GeometryContext& plane) {
    if (plane.n() != 2) throw std::invalid_argument("hyperovals live in a plane");
    const FieldSpec& f = plane.field();
    if (f.p() != 2) throw std::invalid_argument("hyperovals require even q");
    std::uint64_t q = f.q();
    PointSet s;
    s.geometry = plane.descriptor();
    s.ids.reserve(q + 2);
    for (std::uint64_t t = 0; t < q; ++t)
        s.ids.push_back(plane.point_id({1, t, f.mul(t, t)}));
    s.ids.push_back(plane.point_id({0, 1, 0}));
    s.ids.push_back(plane.point_id({0, 0, 1}));
    std::sort(s.ids.begin(), s.ids.end());
    return s;
}

Codeword indicator(const GeometryContext& ctx, const PointSet& s) {
    check_sorted(s, ctx.num_points());
    Codeword c;
    c.geometry = ctx.descriptor();
    c.values.assign(ctx.num_points(), 0);
    for (std::uint64_t id : s.ids) c.values[id] = 1;
    return c;
}

Codeword line_difference_codeword(const GeometryContext& ctx, const Subspace& h1, const Subspace& h2,
                                  std::uint8_t alpha) {
    std::uint64_t p = ctx.field().p();
    if (p > 251) throw std::invalid_argument("characteristic too large for byte codewords");
    if (h1.dim != ctx.n() - 1 || h2.dim != ctx.n() - 1)
        throw std::invalid_argument("line difference needs two hyperplanes");
    if (h1.same_rows(h2)) throw std::invalid_argument("hyperplanes must be distinct");
    if (alpha == 0 || alpha >= p) throw std::invalid_argument("alpha must be a nonzero prime-field scalar");
    Codeword c;
    c.geometry = ctx.descriptor();
    c.values.assign(ctx.num_points(), 0);
    for (std::uint64_t id : points_in(ctx, h1)) c.values[id] = alpha;
    for (std::uint64_t id : points_in(ctx, h2)) {
        if (c.values[id] != 0)
            c.values[id] = 0;  // on both hyperplanes
        else
            c.values[id] = std::uint8_t(p - alpha);
    }
    return c;
}

PointSet cylinder_set(const GeometryContext& ctx, const Subspace& vertex, const Subspace& base_plane,
                      const PointSet& base) {
    if (vertex.dim != ctx.n() - 3) throw std::invalid_argument("vertex must have dimension n-3");
    if (base_plane.dim != 2) throw std::invalid_argument("base plane must have dimension 2");
    if (meet(ctx, vertex, base_plane).dim != -1)
        throw std::invalid_argument("vertex meets the base plane");
    GeometryDescriptor plane_g{2, ctx.field().p(), ctx.field().e()};
    if (!(base.geometry == plane_g)) throw std::invalid_argument("base must live in PG(2,q) chart coordinates");
    check_sorted(base, theta(2, ctx.q()));

    auto chart = subspace_chart(ctx, base_plane);
    std::vector<std::uint64_t> vertex_points = points_in(ctx, vertex);
    std::vector<bool> in_vertex(ctx.num_points(), false);
    for (std::uint64_t id : vertex_points) in_vertex[id] = true;

    PointSet out;
    out.geometry = ctx.descriptor();
    for (std::uint64_t sub_id : base.ids) {
        Subspace generator = span_pair(ctx, vertex, point_subspace(ctx, chart[sub_id]));
        for (std::uint64_t id : points_in(ctx, generator))
            if (!in_vertex[id]) out.ids.push_back(id);
    }
    std::sort(out.ids.begin(), out.ids.end());
    out.ids.erase(std::unique(out.ids.begin(), out.ids.end()), out.ids.end());
    return out;
}

Codeword cylinder_codeword(const GeometryContext& ctx, const CylinderDescriptor& desc) {
    if (!desc.base_word.has_value()) throw std::invalid_argument("cylinder codeword needs a base codeword");
    const Codeword& base = *desc.base_word;
    if (desc.vertex.dim != ctx.n() - 3) throw std::invalid_argument("vertex must have dimension n-3");
    if (desc.base_plane.dim != 2) throw std::invalid_argument("base plane must have dimension 2");
    if (meet(ctx, desc.vertex, desc.base_plane).dim != -1)
        throw std::invalid_argument("vertex meets the base plane");
    GeometryDescriptor plane_g{2, ctx.field().p(), ctx.field().e()};
    if (!(base.geometry == plane_g) || base.values.size() != theta(2, ctx.q()))
        throw std::invalid_argument("base must be a codeword over PG(2,q)");
    {
        GeometryContext plane(plane_g);
        if (!is_dual_codeword(plane, base, 1))
            throw std::invalid_argument("base is not a dual codeword of the plane");
    }

    auto chart = subspace_chart(ctx, desc.base_plane);
    Codeword c;
    c.geometry = ctx.descriptor();
    c.values.assign(ctx.num_points(), 0);
    std::vector<bool> assigned(ctx.num_points(), false);
    std::vector<std::uint64_t> vertex_points = points_in(ctx, desc.vertex);
    for (std::uint64_t id : vertex_points) assigned[id] = true;  // stays zero

    // generators through the plane points partition everything off the vertex
    for (std::uint64_t sub_id = 0; sub_id < chart.size(); ++sub_id) {
        Subspace generator = span_pair(ctx, desc.vertex, point_subspace(ctx, chart[sub_id]));
        std::uint8_t value = base.values[sub_id];
        for (std::uint64_t id : points_in(ctx, generator)) {
            if (assigned[id]) continue;
            c.values[id] = value;
            assigned[id] = true;
        }
    }
    if (!std::all_of(assigned.begin(), assigned.end(), [](bool b) { return b; }))
        throw std::runtime_error("cylinder generators failed to cover the space");
    return c;
}

EvenSetCheck is_even_set(const GeometryContext& ctx, const PointSet& s, int k) {
    check_sorted(s, ctx.num_points());
    EvenSetCheck out;
    out.non_empty = !s.ids.empty();
    auto mask = set_mask(ctx, s);
    const auto& masks = ctx.subspace_masks(k);
    const auto& ops = kern::ops();
    out.all_even = true;
    for (const auto& sub : masks) {
        if (ops.and_popcount(mask.data(), sub.data(), mask.size()) & 1) {
            out.all_even = false;
            break;
        }
    }
    return out;
}

std::optional<std::uint64_t> km_arc_type(const GeometryContext& plane, const PointSet& t) {
    if (plane.n() != 2) throw std::invalid_argument("KM-arcs live in a plane");
    check_sorted(t, plane.num_points());
    std::uint64_t q = plane.q();
    auto mask = set_mask(plane, t);
    const auto& masks = plane.subspace_masks(1);
    const auto& ops = kern::ops();
    std::uint64_t big = 0;
    for (const auto& line : masks) {
        std::uint64_t hits = ops.and_popcount(mask.data(), line.data(), mask.size());
        if (hits == 0 || hits == 2) continue;
        if (big != 0 && hits != big) return std::nullopt;
        big = hits;
    }
    if (big <= 2 || big % 2 != 0) return std::nullopt;
    if (t.ids.size() != q + big) return std::nullopt;
    return big;
}

PointSet two_line_km_arc(const GeometryContext& plane, std::uint64_t line1_id, std::uint64_t line2_id) {
    if (plane.n() != 2) throw std::invalid_argument("KM-arc fixture lives in a plane");
    if (line1_id == line2_id) throw std::invalid_argument("lines must be distinct");
    const auto& lines = plane.subspaces(1);
    const Subspace& l1 = lines.at(line1_id);
    const Subspace& l2 = lines.at(line2_id);
    Subspace common = meet(plane, l1, l2);
    if (common.dim != 0) throw std::runtime_error("two plane lines must meet in a point");
    std::uint64_t cut = plane.point_id(common.rows);
    PointSet out;
    out.geometry = plane.descriptor();
    for (std::uint64_t id : points_in(plane, l1))
        if (id != cut) out.ids.push_back(id);
    for (std::uint64_t id : points_in(plane, l2))
        if (id != cut) out.ids.push_back(id);
    std::sort(out.ids.begin(), out.ids.end());
    return out;
}

}  // namespace pgc
