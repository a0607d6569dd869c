#include <doctest.h>

#include <stdexcept>

#include "oracles.hpp"
#include "pgc/gf.hpp"

using pgc::FieldSpec;

TEST_CASE("modulus selection picks the smallest irreducible") {
    auto f2 = FieldSpec::make(2, 1);
    CHECK(f2->modulus() == std::vector<std::uint32_t>{0, 1});  // x
    CHECK(f2->q() == 2);

    // the only irreducible quadratic over F_2
    auto f4 = FieldSpec::make(2, 2);
    CHECK(f4->modulus() == std::vector<std::uint32_t>{1, 1, 1});  // x^2+x+1

    // x^2 and x^2+x are divisible by x; x^2+1 = (x+1)^2 over F_2, so the
    // brute-force scan agrees with the library
    auto f9 = FieldSpec::make(3, 2);
    CHECK(f9->modulus() == std::vector<std::uint32_t>{1, 0, 1});  // x^2+1
}

TEST_CASE("field_create rejects bad parameters") {
    CHECK_THROWS_AS(FieldSpec::make(4, 1), std::invalid_argument);
    CHECK_THROWS_AS(FieldSpec::make(1, 1), std::invalid_argument);
    CHECK_THROWS_AS(FieldSpec::make(2, 0), std::invalid_argument);
    CHECK_THROWS_AS(FieldSpec::make(3, 64), std::invalid_argument);  // 3^64 overflows
}

TEST_CASE("addition examples") {
    auto f2 = FieldSpec::make(2, 1);
    CHECK(f2->add(1, 1) == 0);

    auto f4 = FieldSpec::make(2, 2);
    CHECK(f4->add(2, 2) == 0);  // omega + omega in characteristic 2

    auto f3 = FieldSpec::make(3, 1);
    CHECK(f3->add(2, 2) == 1);
}

TEST_CASE("multiplication examples against schoolbook polynomials") {
    auto f4 = FieldSpec::make(2, 2);
    CHECK(f4->mul(2, 2) == 3);  // omega^2 = omega + 1
    CHECK(oracles::gf_mul_index(2, 2, f4->modulus(), 2, 2) == 3);

    auto f9 = FieldSpec::make(3, 2);
    CHECK(f9->mul(3, 3) == 2);  // x*x = -1 = 2 under x^2+1
    CHECK(oracles::gf_mul_index(3, 3, f9->modulus(), 3, 2) == 2);

    for (std::uint64_t a = 0; a < 9; ++a)
        for (std::uint64_t b = 0; b < 9; ++b)
            CHECK(f9->mul(a, b) == oracles::gf_mul_index(a, b, f9->modulus(), 3, 2));

    auto f8 = FieldSpec::make(2, 3);
    for (std::uint64_t a = 0; a < 8; ++a)
        for (std::uint64_t b = 0; b < 8; ++b)
            CHECK(f8->mul(a, b) == oracles::gf_mul_index(a, b, f8->modulus(), 2, 3));
}

TEST_CASE("inverses") {
    auto f3 = FieldSpec::make(3, 1);
    CHECK(f3->inv(1) == 1);
    CHECK(f3->inv(2) == 2);

    auto f4 = FieldSpec::make(2, 2);
    CHECK(f4->inv(2) == 3);  // omega * (omega+1) = 1
    CHECK_THROWS_AS(f4->inv(0), std::domain_error);
}

TEST_CASE("field axioms hold exhaustively for small q") {
    for (auto [p, e] : {std::pair<std::uint64_t, std::uint64_t>{2, 1},
                        {3, 1},
                        {2, 2},
                        {5, 1},
                        {7, 1},
                        {2, 3},
                        {3, 2},
                        {11, 1},
                        {13, 1},
                        {2, 4}}) {
        auto f = FieldSpec::make(p, e);
        std::uint64_t q = f->q();
        for (std::uint64_t a = 0; a < q; ++a) {
            CHECK(f->add(a, 0) == a);
            CHECK(f->mul(a, 1) == a);
            CHECK(f->add(a, f->neg(a)) == 0);
            for (std::uint64_t b = 0; b < q; ++b) {
                CHECK(f->add(a, b) == f->add(b, a));
                CHECK(f->mul(a, b) == f->mul(b, a));
                for (std::uint64_t c = 0; c < q; ++c) {
                    CHECK(f->add(f->add(a, b), c) == f->add(a, f->add(b, c)));
                    CHECK(f->mul(f->mul(a, b), c) == f->mul(a, f->mul(b, c)));
                    CHECK(f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c)));
                }
            }
        }
    }
}

TEST_CASE("multiplicative order divides q-1") {
    for (auto [p, e] : {std::pair<std::uint64_t, std::uint64_t>{2, 1}, {3, 1}, {2, 2}, {5, 1},
                        {7, 1},  {2, 3},  {3, 2},  {11, 1}, {13, 1}, {2, 4},
                        {17, 1}, {19, 1}, {23, 1}, {5, 2},  {3, 3},  {2, 5},
                        {29, 1}, {31, 1}, {7, 2},  {2, 6},  {37, 1}, {41, 1},
                        {43, 1}, {47, 1}, {53, 1}, {59, 1}, {61, 1}}) {
        auto f = FieldSpec::make(p, e);
        for (std::uint64_t a = 1; a < f->q(); ++a) CHECK(f->pow(a, f->q() - 1) == 1);
    }
}

TEST_CASE("characteristic 2 means every element is self-inverse additively") {
    auto f16 = FieldSpec::make(2, 4);
    for (std::uint64_t a = 0; a < 16; ++a) CHECK(f16->add(a, a) == 0);
}

TEST_CASE("prime subfield is closed") {
    auto f = FieldSpec::make(3, 2);
    // indices 0,1,2 are the scalars 0,1,2
    for (std::uint64_t a = 0; a < 3; ++a)
        for (std::uint64_t b = 0; b < 3; ++b) {
            CHECK(f->add(a, b) < 3);
            CHECK(f->mul(a, b) < 3);
            CHECK(f->add(a, b) == (a + b) % 3);
            CHECK(f->mul(a, b) == a * b % 3);
        }
}

TEST_CASE("large fields skip the tables but stay consistent") {
    auto f = FieldSpec::make(2, 13);  // q = 8192 > 4096
    CHECK(f->mul(1, 717) == 717);
    std::uint64_t a = 0x1234 % f->q();
    CHECK(f->mul(a, f->inv(a)) == 1);
    CHECK(f->pow(3, f->q() - 1) == 1);
}

TEST_CASE("checked elements reject mixed fields") {
    auto f4 = FieldSpec::make(2, 2);
    auto f8 = FieldSpec::make(2, 3);
    pgc::FieldElement a{f4.get(), 2}, b{f8.get(), 2};
    CHECK_THROWS_AS((void)(a + b), std::invalid_argument);
    CHECK_THROWS_AS((void)(a * b), std::invalid_argument);
    pgc::FieldElement c{f4.get(), 3};
    CHECK((a * inverse(a)).index == 1);
    CHECK((a + c).index == 1);
}

TEST_CASE("prime power factoring") {
    std::uint64_t p = 0, e = 0;
    pgc::factor_prime_power(8, p, e);
    CHECK(p == 2);
    CHECK(e == 3);
    pgc::factor_prime_power(49, p, e);
    CHECK(p == 7);
    CHECK(e == 2);
    CHECK_THROWS_AS(pgc::factor_prime_power(12, p, e), std::invalid_argument);
    CHECK_THROWS_AS(pgc::factor_prime_power(1, p, e), std::invalid_argument);
}
