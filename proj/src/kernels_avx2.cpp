// AVX2 variants of the inner-loop kernels. Compiled with -mavx2 on x86-64
// only; selected at runtime after a cpuid check, so the rest of the build
// stays generic.

#include "pgc/kernels.hpp"

#include <bit>
#include <cstring>
#include <immintrin.h>

namespace pgc::kern {

namespace {

void xor_words_avx2(std::uint64_t* dst, const std::uint64_t* src, std::size_t nwords) {
    std::size_t i = 0;
    for (; i + 4 <= nwords; i += 4) {
        __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
        __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_xor_si256(a, b));
    }
    for (; i < nwords; ++i) dst[i] ^= src[i];
}

// Nibble-LUT popcount (Mula). Sums bytes with sad against zero.
inline __m256i popcount_epi8(__m256i v) {
    const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4, 0, 1, 1, 2, 1, 2,
                                         2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
    const __m256i low_mask = _mm256_set1_epi8(0x0f);
    __m256i lo = _mm256_and_si256(v, low_mask);
    __m256i hi = _mm256_and_si256(_mm256_srli_epi32(v, 4), low_mask);
    return _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
}

std::uint64_t popcount_words_avx2(const std::uint64_t* a, std::size_t nwords) {
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= nwords; i += 4) {
        __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        acc = _mm256_add_epi64(acc, _mm256_sad_epu8(popcount_epi8(v), _mm256_setzero_si256()));
    }
    std::uint64_t lanes[4];
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(lanes), acc);
    std::uint64_t total = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < nwords; ++i) total += std::popcount(a[i]);
    return total;
}

std::uint64_t and_popcount_avx2(const std::uint64_t* a, const std::uint64_t* b, std::size_t nwords) {
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= nwords; i += 4) {
        __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        __m256i v = _mm256_and_si256(va, vb);
        acc = _mm256_add_epi64(acc, _mm256_sad_epu8(popcount_epi8(v), _mm256_setzero_si256()));
    }
    std::uint64_t lanes[4];
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(lanes), acc);
    std::uint64_t total = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < nwords; ++i) total += std::popcount(a[i] & b[i]);
    return total;
}

// Values live in [0,p); a+b <= 2p-2 <= 254 for p <= 127, so the sum never
// wraps and min_epu8(s, s-p) reduces mod p in three ops.
void add_bytes_mod_p_avx2(std::uint8_t* dst, const std::uint8_t* src, std::size_t n, std::uint8_t p) {
    if (p > 127) {  // wrap-safety of the byte trick ends here
        for (std::size_t i = 0; i < n; ++i) {
            unsigned s = unsigned(dst[i]) + unsigned(src[i]);
            dst[i] = std::uint8_t(s >= p ? s - p : s);
        }
        return;
    }
    const __m256i vp = _mm256_set1_epi8(char(p));
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
        __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        __m256i s = _mm256_add_epi8(a, b);
        __m256i r = _mm256_min_epu8(s, _mm256_sub_epi8(s, vp));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), r);
    }
    for (; i < n; ++i) {
        unsigned s = unsigned(dst[i]) + unsigned(src[i]);
        dst[i] = std::uint8_t(s >= p ? s - p : s);
    }
}

void sub_bytes_mod_p_avx2(std::uint8_t* dst, const std::uint8_t* src, std::size_t n, std::uint8_t p) {
    if (p > 127) {
        for (std::size_t i = 0; i < n; ++i) {
            int s = int(dst[i]) - int(src[i]);
            dst[i] = std::uint8_t(s < 0 ? s + p : s);
        }
        return;
    }
    const __m256i vp = _mm256_set1_epi8(char(p));
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
        __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        __m256i d = _mm256_sub_epi8(a, b);
        __m256i r = _mm256_min_epu8(d, _mm256_add_epi8(d, vp));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), r);
    }
    for (; i < n; ++i) {
        int s = int(dst[i]) - int(src[i]);
        dst[i] = std::uint8_t(s < 0 ? s + p : s);
    }
}

// Widen to u16, multiply, Barrett-reduce with M = floor(2^16/p), one
// conditional subtract. Safe for p <= 127: d + c*s <= 126 + 126*126 < 2^16.
void axpy_bytes_mod_p_avx2(std::uint8_t* dst, std::uint8_t c, const std::uint8_t* src, std::size_t n,
                           std::uint8_t p) {
    if (p > 127) {
        for (std::size_t i = 0; i < n; ++i) {
            unsigned s = unsigned(dst[i]) + unsigned(c) * unsigned(src[i]);
            dst[i] = std::uint8_t(s % p);
        }
        return;
    }
    const __m256i zero = _mm256_setzero_si256();
    const __m256i vc = _mm256_set1_epi16(short(c));
    const __m256i vp16 = _mm256_set1_epi16(short(p));
    const __m256i vm = _mm256_set1_epi16(short(65536u / p));
    auto reduce = [&](__m256i v) {
        __m256i q = _mm256_mulhi_epu16(v, vm);
        __m256i r = _mm256_sub_epi16(v, _mm256_mullo_epi16(q, vp16));
        return _mm256_min_epu16(r, _mm256_sub_epi16(r, vp16));
    };
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
        __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        __m256i alo = _mm256_unpacklo_epi8(a, zero);
        __m256i ahi = _mm256_unpackhi_epi8(a, zero);
        __m256i blo = _mm256_unpacklo_epi8(b, zero);
        __m256i bhi = _mm256_unpackhi_epi8(b, zero);
        __m256i slo = reduce(_mm256_add_epi16(alo, _mm256_mullo_epi16(blo, vc)));
        __m256i shi = reduce(_mm256_add_epi16(ahi, _mm256_mullo_epi16(bhi, vc)));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_packus_epi16(slo, shi));
    }
    for (; i < n; ++i) {
        unsigned s = unsigned(dst[i]) + unsigned(c) * unsigned(src[i]);
        dst[i] = std::uint8_t(s % p);
    }
}

std::size_t count_nonzero_avx2(const std::uint8_t* a, std::size_t n) {
    const __m256i zero = _mm256_setzero_si256();
    std::size_t total = 0;
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        unsigned mask = unsigned(_mm256_movemask_epi8(_mm256_cmpeq_epi8(v, zero)));
        total += 32u - std::popcount(mask);
    }
    for (; i < n; ++i) total += (a[i] != 0);
    return total;
}

constexpr Ops kAvx2Ops = {
    xor_words_avx2,  popcount_words_avx2,  and_popcount_avx2,  add_bytes_mod_p_avx2,
    sub_bytes_mod_p_avx2, axpy_bytes_mod_p_avx2, count_nonzero_avx2, "avx2",
};

}  // namespace

const Ops* avx2_ops() {
    static const Ops* table = __builtin_cpu_supports("avx2") ? &kAvx2Ops : nullptr;
    return table;
}

}  // namespace pgc::kern
