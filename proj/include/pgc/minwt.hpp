#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pgc/codes.hpp"

namespace pgc {

struct MinWeightResult {
    std::uint64_t d = 0;
    std::vector<Codeword> witnesses;  // all minimum-weight codewords when exhaustive
    enum class Method { enumeration, brouwer_zimmermann } method = Method::enumeration;
    bool exhaustive = false;
};

inline constexpr std::uint64_t kDefaultEnumCap = std::uint64_t(1) << 24;

// Walks all p^dim kernel combinations with one row update per step
// (reflected mixed-radix Gray order) and collects every minimum-weight
// codeword. Splitting across jobs fixes prefix digits, so each vector is
// still visited exactly once and the census is schedule-independent.
// Throws when p^dim exceeds cap.
MinWeightResult exhaustive_min_weight(const std::vector<Codeword>& kernel_basis,
                                      std::uint64_t cap = kDefaultEnumCap, unsigned jobs = 1);

// Exact minimum distance by iterated information sets: systematic
// generators over disjoint pivot sets, message enumeration by ascending
// weight, lower bound sum(max(0, r+1-deficit_j)) against the best
// codeword seen. An optional seed codeword (validated for membership)
// initializes the upper bound and guarantees a witness.
MinWeightResult brouwer_zimmermann(const std::vector<Codeword>& kernel_basis,
                                   const std::optional<Codeword>& upper_seed = std::nullopt,
                                   unsigned jobs = 1);

// Known exact values of d(C_1(2,q)^perp): q even -> q+2, q prime -> 2q,
// plus sporadic square values shipped as data.
struct D2Table {
    std::map<std::uint64_t, std::uint64_t> sporadic;  // q -> d

    static D2Table builtin();
    static D2Table load(const std::string& path);  // JSON {"9":15,...}
};

std::optional<std::uint64_t> known_d2(std::uint64_t q, const D2Table& table = D2Table::builtin());

struct BoundsReport {
    std::uint64_t n = 0, q = 0, k = 1;
    std::pair<std::uint64_t, std::uint64_t> reduced_params;  // (1, n-k+1)
    std::optional<std::uint64_t> d2_known;
    std::uint64_t bagchi_inamdar = 0;                 // lower
    std::optional<std::uint64_t> csajbok;             // lower, q odd and reduced n > 2
    std::optional<std::uint64_t> ckdr;                // exact value when q even
    std::uint64_t upper_lsv = 0;                      // upper
    std::optional<std::uint64_t> main_wt;             // q^{n'-2} * d2_known
    std::optional<std::uint64_t> p_square_lower;      // q = p^2, p >= 7
};

BoundsReport bounds(std::uint64_t n, std::uint64_t q, std::uint64_t k,
                    const D2Table& table = D2Table::builtin());

struct HaemersCheck {
    std::uint64_t lhs = 0;  // theta_{n-1}^2 * s * t
    std::uint64_t rhs = 0;  // q^{n-1} (theta_n - s)(theta_n - t)
    bool feasible = false;  // lhs <= rhs
};

// Exact integer test of the incidence-free bound for s points and t
// hyperplanes; feasible == false certifies no such pair exists.
HaemersCheck haemers_feasible(std::uint64_t s, std::uint64_t t, std::uint64_t n, std::uint64_t q);

}  // namespace pgc
