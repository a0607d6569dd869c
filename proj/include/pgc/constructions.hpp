#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pgc/codes.hpp"
#include "pgc/projgeom.hpp"

namespace pgc {

// Sorted set of point ids.
struct PointSet {
    GeometryDescriptor geometry;
    std::vector<std::uint64_t> ids;  // strictly increasing

    bool operator==(const PointSet&) const = default;
};

// Cylinder data: a vertex of dimension n-3, a base plane disjoint from it,
// and a base living in the chart of the base plane (PG(2,q) coordinates).
struct CylinderDescriptor {
    Subspace vertex;
    Subspace base_plane;
    std::optional<Codeword> base_word;  // over PG(2,q)
    std::optional<PointSet> base_set;   // over PG(2,q)
};

// Conic {(1,t,t^2)} plus the nucleus (0,1,0) and the point (0,0,1); the
// q+2 points meet every line of the plane in 0 or 2 points. q must be even.
PointSet regular_hyperoval(const GeometryContext& plane);

// indicator codeword of a point set
Codeword indicator(const GeometryContext& ctx, const PointSet& s);

// alpha on h1 \ h2, -alpha on h2 \ h1, zero elsewhere; always a dual
// codeword for lines, of weight 2 q^{n-1}
Codeword line_difference_codeword(const GeometryContext& ctx, const Subspace& h1, const Subspace& h2,
                                  std::uint8_t alpha);

// union over base points B of <vertex, B> minus the vertex; base is given
// in the chart of base_plane; |result| = |base| * q^{n-2}
PointSet cylinder_set(const GeometryContext& ctx, const Subspace& vertex, const Subspace& base_plane,
                      const PointSet& base);

// lift of a planar dual codeword: value at P (off the vertex) is the base
// value at <vertex,P> meet base_plane; weight is q^{n-2} * wt(base)
Codeword cylinder_codeword(const GeometryContext& ctx, const CylinderDescriptor& desc);

struct EvenSetCheck {
    bool all_even = false;
    bool non_empty = false;
};

// does S meet every k-space in an even number of points?
EvenSetCheck is_even_set(const GeometryContext& ctx, const PointSet& s, int k);

// KM-arc type: t > 2 even with |T| = q+t and all line intersections in
// {0,2,t}; hyperovals (intersections in {0,2}) return nullopt
std::optional<std::uint64_t> km_arc_type(const GeometryContext& plane, const PointSet& t);

// test/CLI fixture: two distinct lines of a plane minus their common
// point, a KM-arc of type q for q > 2 even
PointSet two_line_km_arc(const GeometryContext& plane, std::uint64_t line1_id, std::uint64_t line2_id);

}  // namespace pgc
