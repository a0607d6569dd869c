#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

// Data-parallel inner loops used by the elimination and minimum-weight
// engines. Scalar reference implementations always exist; AVX2 (x86-64)
// and NEON (aarch64) variants are selected at runtime and must be
// bit-identical to the scalar versions (enforced by tests/test_kernels).
//
// Words are little-endian 64-bit blocks of GF(2) coordinates; byte arrays
// hold one value in [0,p) per coordinate for odd p. The byte kernels
// require p <= 127 so that sums fit a byte before reduction.

namespace pgc::kern {

struct Ops {
    // dst[i] ^= src[i] for nwords 64-bit words
    void (*xor_words)(std::uint64_t* dst, const std::uint64_t* src, std::size_t nwords);
    // total popcount of nwords words
    std::uint64_t (*popcount_words)(const std::uint64_t* a, std::size_t nwords);
    // popcount of (a[i] & b[i])
    std::uint64_t (*and_popcount)(const std::uint64_t* a, const std::uint64_t* b, std::size_t nwords);
    // dst[i] = (dst[i] + src[i]) mod p
    void (*add_bytes_mod_p)(std::uint8_t* dst, const std::uint8_t* src, std::size_t n, std::uint8_t p);
    // dst[i] = (dst[i] - src[i]) mod p
    void (*sub_bytes_mod_p)(std::uint8_t* dst, const std::uint8_t* src, std::size_t n, std::uint8_t p);
    // dst[i] = (dst[i] + c*src[i]) mod p
    void (*axpy_bytes_mod_p)(std::uint8_t* dst, std::uint8_t c, const std::uint8_t* src, std::size_t n,
                             std::uint8_t p);
    // number of nonzero bytes
    std::size_t (*count_nonzero)(const std::uint8_t* a, std::size_t n);
    const char* name;
};

// Reference implementation; always available.
const Ops& scalar_ops();

// ISA-specific tables; nullptr when not compiled in or not supported by
// the running CPU.
const Ops* avx2_ops();
const Ops* neon_ops();

// Best available implementation. Honors PGC_KERNELS=scalar|avx2|neon for
// forcing a variant (falls back to scalar if the request is unavailable).
const Ops& ops();

// Bit packing helpers (not dispatched).
std::vector<std::uint64_t> pack_bits(const std::uint8_t* vals, std::size_t n);
void unpack_bits(const std::uint64_t* words, std::size_t n, std::uint8_t* out);

inline std::size_t words_for(std::size_t nbits) { return (nbits + 63) / 64; }

}  // namespace pgc::kern
