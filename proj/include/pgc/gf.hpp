#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace pgc {

// Exact arithmetic in GF(p^e). An element is its index in [0,q): the
// base-p encoding of the coefficient vector (c_0, ..., c_{e-1}), i.e.
// index = sum c_i p^i. Index 0 is the additive identity, index 1 the
// multiplicative identity, and the first p indices form the prime
// subfield.
//
// The reducing modulus is the lexicographically smallest monic
// irreducible polynomial of degree e over F_p, coefficients compared
// from the constant term upward (x itself for e = 1). Multiplication
// and inversion are table-driven for q <= 4096 and reduce polynomials
// on the fly above that.
class FieldSpec {
public:
    static std::shared_ptr<const FieldSpec> make(std::uint64_t p, std::uint64_t e);

    std::uint64_t p() const { return p_; }
    std::uint64_t e() const { return e_; }
    std::uint64_t q() const { return q_; }
    // monic, constant term first, length e+1
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t neg(std::uint64_t a) const;
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t inv(std::uint64_t a) const;  // a != 0
    std::uint64_t pow(std::uint64_t a, std::uint64_t k) const;

    bool same_as(const FieldSpec& other) const;

private:
    FieldSpec() = default;
    std::uint64_t mul_nocache(std::uint64_t a, std::uint64_t b) const;

    std::uint64_t p_ = 0, e_ = 0, q_ = 0;
    std::vector<std::uint32_t> modulus_;
    std::vector<std::uint16_t> mul_table_;  // q*q entries when q <= 4096
    std::vector<std::uint16_t> inv_table_;  // q entries when q <= 4096
};

using FieldPtr = std::shared_ptr<const FieldSpec>;

// Checked element type for the public API; the rest of the library works
// on raw indices through FieldSpec.
struct FieldElement {
    const FieldSpec* field = nullptr;
    std::uint64_t index = 0;
};

FieldElement operator+(FieldElement a, FieldElement b);
FieldElement operator-(FieldElement a, FieldElement b);
FieldElement operator*(FieldElement a, FieldElement b);
FieldElement inverse(FieldElement a);
bool operator==(FieldElement a, FieldElement b);

// true iff value is a prime (trial division; value < 2^63)
bool is_prime(std::uint64_t value);

// factor a prime power q = p^e; throws std::invalid_argument otherwise
void factor_prime_power(std::uint64_t q, std::uint64_t& p, std::uint64_t& e);

}  // namespace pgc
