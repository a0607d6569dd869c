#include "pgc/kernels.hpp"

#include <bit>
#include <cstdlib>
#include <cstring>
#include <string>

namespace pgc::kern {

namespace {

void xor_words_scalar(std::uint64_t* dst, const std::uint64_t* src, std::size_t nwords) {
    for (std::size_t i = 0; i < nwords; ++i) dst[i] ^= src[i];
}

std::uint64_t popcount_words_scalar(const std::uint64_t* a, std::size_t nwords) {
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < nwords; ++i) total += std::popcount(a[i]);
    return total;
}

std::uint64_t and_popcount_scalar(const std::uint64_t* a, const std::uint64_t* b, std::size_t nwords) {
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < nwords; ++i) total += std::popcount(a[i] & b[i]);
    return total;
}

void add_bytes_mod_p_scalar(std::uint8_t* dst, const std::uint8_t* src, std::size_t n, std::uint8_t p) {
    for (std::size_t i = 0; i < n; ++i) {
        unsigned s = unsigned(dst[i]) + unsigned(src[i]);
        dst[i] = std::uint8_t(s >= p ? s - p : s);
    }
}

void sub_bytes_mod_p_scalar(std::uint8_t* dst, const std::uint8_t* src, std::size_t n, std::uint8_t p) {
    for (std::size_t i = 0; i < n; ++i) {
        int s = int(dst[i]) - int(src[i]);
        dst[i] = std::uint8_t(s < 0 ? s + p : s);
    }
}

void axpy_bytes_mod_p_scalar(std::uint8_t* dst, std::uint8_t c, const std::uint8_t* src, std::size_t n,
                             std::uint8_t p) {
    for (std::size_t i = 0; i < n; ++i) {
        unsigned s = unsigned(dst[i]) + unsigned(c) * unsigned(src[i]);
        dst[i] = std::uint8_t(s % p);
    }
}

std::size_t count_nonzero_scalar(const std::uint8_t* a, std::size_t n) {
    std::size_t total = 0;
    for (std::size_t i = 0; i < n; ++i) total += (a[i] != 0);
    return total;
}

constexpr Ops kScalarOps = {
    xor_words_scalar,  popcount_words_scalar,  and_popcount_scalar,  add_bytes_mod_p_scalar,
    sub_bytes_mod_p_scalar, axpy_bytes_mod_p_scalar, count_nonzero_scalar, "scalar",
};

const Ops* pick_ops() {
    const char* force = std::getenv("PGC_KERNELS");
    if (force != nullptr) {
        std::string want(force);
        if (want == "scalar") return &kScalarOps;
        if (want == "avx2" && avx2_ops() != nullptr) return avx2_ops();
        if (want == "neon" && neon_ops() != nullptr) return neon_ops();
        return &kScalarOps;
    }
    if (avx2_ops() != nullptr) return avx2_ops();
    if (neon_ops() != nullptr) return neon_ops();
    return &kScalarOps;
}

}  // namespace

const Ops& scalar_ops() { return kScalarOps; }

#if !defined(PGC_HAVE_AVX2)
const Ops* avx2_ops() { return nullptr; }
#endif
#if !defined(PGC_HAVE_NEON)
const Ops* neon_ops() { return nullptr; }
#endif

const Ops& ops() {
    static const Ops* selected = pick_ops();
    return *selected;
}

std::vector<std::uint64_t> pack_bits(const std::uint8_t* vals, std::size_t n) {
    std::vector<std::uint64_t> words(words_for(n), 0);
    for (std::size_t i = 0; i < n; ++i)
        if (vals[i] != 0) words[i >> 6] |= std::uint64_t(1) << (i & 63);
    return words;
}

void unpack_bits(const std::uint64_t* words, std::size_t n, std::uint8_t* out) {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::uint8_t((words[i >> 6] >> (i & 63)) & 1);
}

}  // namespace pgc::kern
