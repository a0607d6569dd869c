#include <doctest.h>

#include <random>
#include <vector>

#include "pgc/kernels.hpp"

namespace kern = pgc::kern;

namespace {

struct Fixture {
    std::mt19937_64 rng{0xfeedbeef};

    std::vector<std::uint64_t> words(std::size_t n) {
        std::vector<std::uint64_t> v(n);
        for (auto& x : v) x = rng();
        return v;
    }

    std::vector<std::uint8_t> bytes(std::size_t n, std::uint8_t p) {
        std::vector<std::uint8_t> v(n);
        std::uniform_int_distribution<unsigned> d(0, p - 1u);
        for (auto& x : v) x = std::uint8_t(d(rng));
        return v;
    }
};

void check_table(const kern::Ops& ops) {
    Fixture fx;
    const auto& ref = kern::scalar_ops();
    // sizes straddle the vector width and exercise ragged tails
    for (std::size_t n : {0u, 1u, 3u, 7u, 31u, 32u, 33u, 63u, 64u, 65u, 200u, 257u}) {
        auto a = fx.words(n);
        auto b = fx.words(n);
        auto a2 = a;
        ops.xor_words(a.data(), b.data(), n);
        ref.xor_words(a2.data(), b.data(), n);
        CHECK(a == a2);
        CHECK(ops.popcount_words(a.data(), n) == ref.popcount_words(a.data(), n));
        CHECK(ops.and_popcount(a.data(), b.data(), n) == ref.and_popcount(a.data(), b.data(), n));
    }
    for (std::uint8_t p : {std::uint8_t(2), std::uint8_t(3), std::uint8_t(5), std::uint8_t(7),
                           std::uint8_t(13), std::uint8_t(127)}) {
        for (std::size_t n : {0u, 1u, 5u, 31u, 32u, 33u, 100u, 301u}) {
            auto x = fx.bytes(n, p);
            auto y = fx.bytes(n, p);
            auto x2 = x;
            ops.add_bytes_mod_p(x.data(), y.data(), n, p);
            ref.add_bytes_mod_p(x2.data(), y.data(), n, p);
            CHECK(x == x2);
            ops.sub_bytes_mod_p(x.data(), y.data(), n, p);
            ref.sub_bytes_mod_p(x2.data(), y.data(), n, p);
            CHECK(x == x2);
            for (std::uint8_t c = 1; c < p; c = std::uint8_t(c * 2 + 1)) {
                ops.axpy_bytes_mod_p(x.data(), c, y.data(), n, p);
                ref.axpy_bytes_mod_p(x2.data(), c, y.data(), n, p);
                CHECK(x == x2);
            }
            CHECK(ops.count_nonzero(x.data(), n) == ref.count_nonzero(x.data(), n));
        }
    }
}

}  // namespace

TEST_CASE("scalar kernels satisfy the arithmetic contracts") {
    Fixture fx;
    const auto& ref = kern::scalar_ops();
    for (std::uint8_t p : {std::uint8_t(3), std::uint8_t(251)}) {
        auto x = fx.bytes(97, p);
        auto y = fx.bytes(97, p);
        auto sum = x;
        ref.add_bytes_mod_p(sum.data(), y.data(), 97, p);
        for (std::size_t i = 0; i < 97; ++i) CHECK(sum[i] == (x[i] + y[i]) % p);
        auto diff = x;
        ref.sub_bytes_mod_p(diff.data(), y.data(), 97, p);
        for (std::size_t i = 0; i < 97; ++i) CHECK(diff[i] == (x[i] + p - y[i]) % p);
        auto fma = x;
        ref.axpy_bytes_mod_p(fma.data(), 2, y.data(), 97, p);
        for (std::size_t i = 0; i < 97; ++i) CHECK(fma[i] == (x[i] + 2 * y[i]) % p);
    }
}

TEST_CASE("dispatched kernels match the scalar reference") { check_table(kern::ops()); }

TEST_CASE("avx2 kernels match the scalar reference when available") {
    if (kern::avx2_ops() == nullptr) return;
    check_table(*kern::avx2_ops());
}

TEST_CASE("neon kernels match the scalar reference when available") {
    if (kern::neon_ops() == nullptr) return;
    check_table(*kern::neon_ops());
}

TEST_CASE("bit packing round-trips") {
    Fixture fx;
    for (std::size_t n : {0u, 1u, 63u, 64u, 65u, 130u}) {
        auto vals = fx.bytes(n, 2);
        auto packed = kern::pack_bits(vals.data(), n);
        std::vector<std::uint8_t> back(n, 0xff);
        kern::unpack_bits(packed.data(), n, back.data());
        CHECK(vals == back);
        CHECK(kern::scalar_ops().popcount_words(packed.data(), packed.size()) ==
              kern::scalar_ops().count_nonzero(vals.data(), n));
    }
}
