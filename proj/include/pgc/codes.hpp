#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pgc/projgeom.hpp"

namespace pgc {

// Dense matrix over the prime field F_p, row-major, one value per byte.
struct PMatrix {
    std::uint64_t rows = 0;
    std::uint64_t cols = 0;
    std::uint32_t p = 2;
    std::vector<std::uint8_t> entries;

    std::uint8_t at(std::uint64_t r, std::uint64_t c) const { return entries[r * cols + c]; }
    std::uint8_t& at(std::uint64_t r, std::uint64_t c) { return entries[r * cols + c]; }
};

// Vector over F_p indexed by canonical point id.
struct Codeword {
    GeometryDescriptor geometry;
    std::vector<std::uint8_t> values;

    bool operator==(const Codeword&) const = default;
};

// k-spaces vs points incidence matrix M(kappa, P) over F_p; rows follow
// the canonical k-space table, columns the canonical point order.
PMatrix incidence_matrix(const GeometryContext& ctx, int k);

struct RankKernel {
    std::uint64_t rank = 0;
    std::vector<Codeword> kernel_basis;  // RREF, deterministic
};

RankKernel rank_and_kernel(const PMatrix& m, const GeometryDescriptor& geometry);

std::uint64_t weight(const Codeword& c);
std::vector<std::uint64_t> support(const Codeword& c);

// true iff every k-space sums to zero against c
bool is_dual_codeword(const GeometryContext& ctx, const Codeword& c, int k);
// id of the first k-space with nonzero sum, if any
std::optional<std::uint64_t> dual_violation(const GeometryContext& ctx, const Codeword& c, int k);

// Restriction of c to a subspace S with dim >= 2, re-indexed through the
// chart that maps the RREF rows of S to the standard basis of PG(dim S, q).
struct Restriction {
    GeometryDescriptor subgeometry;
    Codeword word;                              // over the subgeometry
    std::vector<std::uint64_t> parent_points;   // sub point id -> parent point id
};

Restriction restrict_codeword(const GeometryContext& ctx, const Codeword& c, const Subspace& S);

// weight of c on the points of S without building the chart
std::uint64_t restriction_weight(const GeometryContext& ctx, const Codeword& c, const Subspace& S);

namespace detail {
struct RawKernel {
    std::uint64_t rank = 0;
    std::vector<std::vector<std::uint8_t>> basis;
};
// generic odd-characteristic elimination (works for p = 2 as well; used
// as the equivalence oracle for the bit-packed path)
RawKernel rank_kernel_bytes(std::uint64_t rows, std::uint64_t cols, std::uint32_t p,
                            const std::vector<std::uint8_t>& entries);
// bit-packed GF(2) elimination, 64 columns per word
RawKernel rank_kernel_gf2(std::uint64_t rows, std::uint64_t cols, const std::vector<std::uint8_t>& entries);
}  // namespace detail

}  // namespace pgc
