#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <vector>

#include "pgc/gf.hpp"

namespace pgc {

struct GeometryDescriptor {
    std::uint64_t n = 0;  // projective dimension
    std::uint64_t p = 0;
    std::uint64_t e = 0;
    std::uint64_t q() const;
    bool operator==(const GeometryDescriptor&) const = default;
};

// Canonical projective point: leftmost nonzero coordinate equals 1, and
// id is the rank in the canonical enumeration (points grouped by pivot
// position, tails in ascending lexicographic order of element indices).
struct Point {
    std::vector<std::uint64_t> coords;  // n+1 field element indices
    std::uint64_t id = 0;
};

// Subspace in reduced row echelon form; dim = -1 is the empty subspace.
struct Subspace {
    static constexpr std::uint64_t kNoId = ~std::uint64_t(0);

    int dim = -1;
    std::vector<std::uint64_t> rows;  // (dim+1) x (n+1) row-major element indices
    std::uint64_t id = kNoId;         // set for table-enumerated subspaces

    bool same_rows(const Subspace& other) const { return dim == other.dim && rows == other.rows; }
};

// number of points of PG(n,q): q^n + ... + q + 1
std::uint64_t theta(int n, std::uint64_t q);

// Gaussian binomial [n+1 choose k+1]_q = number of k-spaces of PG(n,q)
std::uint64_t subspace_count(int n, int k, std::uint64_t q);

// PG(n,q): eagerly enumerated points, lazily enumerated per-dimension
// subspace tables. Immutable after construction; lazy tables are built
// once and shared, so concurrent readers are fine.
class GeometryContext {
public:
    GeometryContext(int n, FieldPtr field);
    explicit GeometryContext(const GeometryDescriptor& g);

    GeometryContext(const GeometryContext&) = delete;
    GeometryContext& operator=(const GeometryContext&) = delete;

    int n() const { return n_; }
    const FieldSpec& field() const { return *field_; }
    FieldPtr field_ptr() const { return field_; }
    std::uint64_t q() const { return field_->q(); }
    GeometryDescriptor descriptor() const;

    std::uint64_t num_points() const { return points_.size(); }
    const std::vector<Point>& points() const { return points_; }
    const Point& point(std::uint64_t id) const { return points_.at(id); }
    // canonicalizes, then computes the rank arithmetically
    std::uint64_t point_id(const std::vector<std::uint64_t>& coords) const;

    const std::vector<Subspace>& subspaces(int k) const;
    std::uint64_t subspace_id(const Subspace& s) const;
    const Subspace& hyperplane(std::uint64_t id) const { return subspaces(n_ - 1).at(id); }
    // point ids per k-space, canonical order within each list
    const std::vector<std::vector<std::uint32_t>>& subspace_point_ids(int k) const;
    // theta_n-bit masks per k-space
    const std::vector<std::vector<std::uint64_t>>& subspace_masks(int k) const;
    std::size_t mask_words() const;

private:
    struct DimCache {
        std::once_flag table_once, points_once, masks_once;
        std::vector<Subspace> table;
        std::vector<std::vector<std::uint32_t>> point_ids;
        std::vector<std::vector<std::uint64_t>> masks;
    };

    int n_;
    FieldPtr field_;
    std::vector<Point> points_;
    mutable std::deque<DimCache> dims_;
};

// scale a coordinate vector so its leftmost nonzero entry is 1;
// throws on the zero vector
std::vector<std::uint64_t> canonical_coords(const FieldSpec& f, std::vector<std::uint64_t> v);

bool incident(const GeometryContext& ctx, const Point& P, const Subspace& S);
bool incident(const GeometryContext& ctx, std::uint64_t point_id, const Subspace& S);

Subspace point_subspace(const GeometryContext& ctx, std::uint64_t point_id);
Subspace span_of(const GeometryContext& ctx, const std::vector<Subspace>& parts);
Subspace span_pair(const GeometryContext& ctx, const Subspace& a, const Subspace& b);
Subspace span_points(const GeometryContext& ctx, const std::vector<std::uint64_t>& point_ids);
Subspace meet(const GeometryContext& ctx, const Subspace& a, const Subspace& b);

// point ids of S, ascending; empty for dim -1
std::vector<std::uint64_t> points_in(const GeometryContext& ctx, const Subspace& S);

// chart of S: sub-point id of PG(dim S, q) -> parent point id, where the
// RREF rows of S map to the standard basis of the subgeometry
std::vector<std::uint64_t> subspace_chart(const GeometryContext& ctx, const Subspace& S);

namespace detail {
// RREF over GF(q); returns rank, drops zero rows, deterministic pivoting
// (first nonzero column, first row).
int rref_in_place(const FieldSpec& f, std::vector<std::vector<std::uint64_t>>& rows);
// canonical projective representatives of F_q^len in enumeration order
std::vector<std::vector<std::uint64_t>> enumerate_canonical_vectors(const FieldSpec& f, int len);
std::uint64_t canonical_rank(std::uint64_t q, const std::vector<std::uint64_t>& canonical);
}  // namespace detail

}  // namespace pgc
