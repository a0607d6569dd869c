#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "pgc/codes.hpp"
#include "pgc/constructions.hpp"
#include "pgc/projgeom.hpp"

namespace pgc {

// i -> number of dim-subspaces meeting the set in exactly i points
struct SecantSpectrum {
    int dim = 1;
    std::map<std::uint64_t, std::uint64_t> counts;
};

SecantSpectrum secant_spectrum(const GeometryContext& ctx, const PointSet& s, int dim, unsigned jobs = 1);
SecantSpectrum secant_spectrum(const GeometryContext& ctx, const Codeword& c, int dim, unsigned jobs = 1);

// plane-spectrum double counts in PG(3,q):
//   sum i n_i   == s * theta_2
//   sum i^2 n_i == s (theta_2 + (s-1) theta_1)
// holds for every point set of size s; a failure means the spectrum is wrong
bool moment_identities(const SecantSpectrum& planes, std::uint64_t s, std::uint64_t q);

// Both sides of the spectrum inequality
//   sum_{i>0} (i-(q+2))(i-(q+m)) n_i <= (q+2)(q m^2 - (2q-1)m - q(5q/2 - 1)),
// doubled so the 5q/2 term stays integral.
struct StandardEqCheck {
    long long lhs2 = 0;
    long long rhs2 = 0;
    bool holds = false;
    bool all_terms_nonnegative = false;  // no occurring size strictly between q+2 and q+m
};

long long standard_eq_rhs2(std::uint64_t q, std::uint64_t m);
StandardEqCheck standard_eq_check(const SecantSpectrum& planes, std::uint64_t q, std::uint64_t m);

// smallest line intersection size > 2, if any line is a large secant
std::optional<std::uint64_t> min_large_secant(const GeometryContext& ctx, const PointSet& s);

struct KmLineCounts {
    std::uint64_t t_secants = 0;   // (q+t)/t
    std::uint64_t two_secants = 0; // q(q+t)/2
    std::uint64_t zero_secants = 0;
};

// exact line counts of a KM-arc of type t in PG(2,q); requires t even,
// t > 2, t dividing q; the three counts sum to theta_2
KmLineCounts km_line_counts(std::uint64_t q, std::uint64_t t);

struct HyperovalCylinder {
    std::uint64_t vertex = 0;  // point id
    Subspace base_plane;
    PointSet base;  // chart coordinates of the base plane
};

// Recognition of even sets of size q(q+2) in PG(3,q) through a q-secant
// line: the candidate vertex is the unique off-set point of such a line
// (lexicographically smallest valid one when several work), the base is
// the trace on a plane away from it, and the rebuilt cylinder must equal
// the input. Returns nullopt when no q-secant line exists.
std::optional<HyperovalCylinder> detect_hyperoval_cylinder(const GeometryContext& ctx, const PointSet& s,
                                                           bool verify_preconditions = true);

struct CylinderRecognition {
    bool is_cylinder = false;
    std::optional<Subspace> vertex;
    std::optional<Subspace> base_plane;
    std::optional<Codeword> base;            // chart codeword over PG(2,q)
    std::vector<std::uint64_t> vertex_set;   // computed candidate vertex points
};

// Cylinder-codeword recognition: find a plane whose restriction has
// weight d2, read the vertex set off q-secant lines through a support
// point of that plane, check it forms an (n-3)-space, and rebuild.
// Precondition (checked unless relaxed): c is a dual codeword for lines
// of weight q^{n-2} d2.
CylinderRecognition detect_cylinder_codeword(const GeometryContext& ctx, const Codeword& c,
                                             std::uint64_t d2, bool verify_preconditions = true);

namespace detail {
// {P not in plane : the line <P,Q> misses the support only at P}
std::vector<std::uint64_t> vertex_set_for(const GeometryContext& ctx, const Codeword& c,
                                          const Subspace& plane, std::uint64_t q_point);
}

}  // namespace pgc
