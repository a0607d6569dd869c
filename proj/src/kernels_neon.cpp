// NEON variants for aarch64. Same contracts as the scalar table; the
// widening multiply path of axpy stays scalar.

#include "pgc/kernels.hpp"

#include <bit>
#include <arm_neon.h>

namespace pgc::kern {

namespace {

void xor_words_neon(std::uint64_t* dst, const std::uint64_t* src, std::size_t nwords) {
    std::size_t i = 0;
    for (; i + 2 <= nwords; i += 2) {
        uint64x2_t a = vld1q_u64(dst + i);
        uint64x2_t b = vld1q_u64(src + i);
        vst1q_u64(dst + i, veorq_u64(a, b));
    }
    for (; i < nwords; ++i) dst[i] ^= src[i];
}

std::uint64_t popcount_words_neon(const std::uint64_t* a, std::size_t nwords) {
    std::uint64_t total = 0;
    std::size_t i = 0;
    for (; i + 2 <= nwords; i += 2) {
        uint8x16_t v = vreinterpretq_u8_u64(vld1q_u64(a + i));
        total += vaddvq_u8(vcntq_u8(v));
    }
    for (; i < nwords; ++i) total += std::popcount(a[i]);
    return total;
}

std::uint64_t and_popcount_neon(const std::uint64_t* a, const std::uint64_t* b, std::size_t nwords) {
    std::uint64_t total = 0;
    std::size_t i = 0;
    for (; i + 2 <= nwords; i += 2) {
        uint64x2_t v = vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i));
        total += vaddvq_u8(vcntq_u8(vreinterpretq_u8_u64(v)));
    }
    for (; i < nwords; ++i) total += std::popcount(a[i] & b[i]);
    return total;
}

void add_bytes_mod_p_neon(std::uint8_t* dst, const std::uint8_t* src, std::size_t n, std::uint8_t p) {
    if (p > 127) {
        for (std::size_t i = 0; i < n; ++i) {
            unsigned s = unsigned(dst[i]) + unsigned(src[i]);
            dst[i] = std::uint8_t(s >= p ? s - p : s);
        }
        return;
    }
    const uint8x16_t vp = vdupq_n_u8(p);
    std::size_t i = 0;
    for (; i + 16 <= n; i += 16) {
        uint8x16_t s = vaddq_u8(vld1q_u8(dst + i), vld1q_u8(src + i));
        vst1q_u8(dst + i, vminq_u8(s, vsubq_u8(s, vp)));
    }
    for (; i < n; ++i) {
        unsigned s = unsigned(dst[i]) + unsigned(src[i]);
        dst[i] = std::uint8_t(s >= p ? s - p : s);
    }
}

void sub_bytes_mod_p_neon(std::uint8_t* dst, const std::uint8_t* src, std::size_t n, std::uint8_t p) {
    if (p > 127) {
        for (std::size_t i = 0; i < n; ++i) {
            int s = int(dst[i]) - int(src[i]);
            dst[i] = std::uint8_t(s < 0 ? s + p : s);
        }
        return;
    }
    const uint8x16_t vp = vdupq_n_u8(p);
    std::size_t i = 0;
    for (; i + 16 <= n; i += 16) {
        uint8x16_t d = vsubq_u8(vld1q_u8(dst + i), vld1q_u8(src + i));
        vst1q_u8(dst + i, vminq_u8(d, vaddq_u8(d, vp)));
    }
    for (; i < n; ++i) {
        int s = int(dst[i]) - int(src[i]);
        dst[i] = std::uint8_t(s < 0 ? s + p : s);
    }
}

void axpy_bytes_mod_p_neon(std::uint8_t* dst, std::uint8_t c, const std::uint8_t* src, std::size_t n,
                           std::uint8_t p) {
    for (std::size_t i = 0; i < n; ++i) {
        unsigned s = unsigned(dst[i]) + unsigned(c) * unsigned(src[i]);
        dst[i] = std::uint8_t(s % p);
    }
}

std::size_t count_nonzero_neon(const std::uint8_t* a, std::size_t n) {
    std::size_t total = 0;
    std::size_t i = 0;
    for (; i + 16 <= n; i += 16) {
        uint8x16_t z = vceqq_u8(vld1q_u8(a + i), vdupq_n_u8(0));
        total += 16u - vaddvq_u8(vshrq_n_u8(z, 7));
    }
    for (; i < n; ++i) total += (a[i] != 0);
    return total;
}

constexpr Ops kNeonOps = {
    xor_words_neon,  popcount_words_neon,  and_popcount_neon,  add_bytes_mod_p_neon,
    sub_bytes_mod_p_neon, axpy_bytes_mod_p_neon, count_nonzero_neon, "neon",
};

}  // namespace

const Ops* neon_ops() { return &kNeonOps; }

}  // namespace pgc::kern
