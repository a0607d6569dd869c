#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>

#include "oracles.hpp"
#include "pgc/constructions.hpp"
#include "pgc/minwt.hpp"

using namespace pgc;

namespace {

GeometryContext make_ctx(int n, std::uint64_t p, std::uint64_t e) {
    return GeometryContext(n, FieldSpec::make(p, e));
}

std::vector<Codeword> kernel_of(const GeometryContext& ctx, int k) {
    return rank_and_kernel(incidence_matrix(ctx, k), ctx.descriptor()).kernel_basis;
}

std::set<std::vector<std::uint8_t>> witness_set(const MinWeightResult& r) {
    std::set<std::vector<std::uint8_t>> out;
    for (const Codeword& c : r.witnesses) out.insert(c.values);
    return out;
}

}  // namespace

TEST_CASE("Fano dual: d = 4 with the 7 hyperovals as witnesses") {
    auto ctx = make_ctx(2, 2, 1);
    auto basis = kernel_of(ctx, 1);
    MinWeightResult r = exhaustive_min_weight(basis);
    CHECK(r.d == 4);
    CHECK(r.exhaustive);
    REQUIRE(r.witnesses.size() == 7);

    auto oracle = oracles::min_weight_census(basis);
    CHECK(oracle.d == 4);
    std::set<std::vector<std::uint8_t>> expect(oracle.witnesses.begin(), oracle.witnesses.end());
    CHECK(witness_set(r) == expect);

    // every witness is the complement of a line
    for (const Codeword& w : r.witnesses) {
        CHECK(weight(w) == 4);
        bool complement = false;
        for (const auto& line : ctx.subspace_point_ids(1)) {
            std::vector<std::uint8_t> v(7, 1);
            for (std::uint32_t id : line) v[id] = 0;
            if (v == w.values) complement = true;
        }
        CHECK(complement);
    }
}

TEST_CASE("PG(3,2) dual: d = 8 with 15 witnesses") {
    auto ctx = make_ctx(3, 2, 1);
    auto basis = kernel_of(ctx, 1);
    MinWeightResult r = exhaustive_min_weight(basis);
    CHECK(r.d == 8);
    CHECK(r.witnesses.size() == 15);
    auto oracle = oracles::min_weight_census(basis);
    CHECK(oracle.d == 8);
    CHECK(oracle.witnesses.size() == 15);
}

TEST_CASE("PG(2,3) dual: d = 6 and the 156 scaled line differences") {
    auto ctx = make_ctx(2, 3, 1);
    auto basis = kernel_of(ctx, 1);
    MinWeightResult r = exhaustive_min_weight(basis);
    CHECK(r.d == 6);
    REQUIRE(r.witnesses.size() == 156);

    // independent generator: alpha (chi_l1 - chi_l2) over 78 line pairs and
    // 2 nonzero scalars
    const auto& lines = ctx.subspaces(1);
    std::set<std::vector<std::uint8_t>> expect;
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j)
            for (std::uint8_t alpha : {std::uint8_t(1), std::uint8_t(2)}) {
                expect.insert(line_difference_codeword(ctx, lines[i], lines[j], alpha).values);
            }
    CHECK(expect.size() == 156);
    CHECK(witness_set(r) == expect);
}

TEST_CASE("exhaustive search agrees with the odometer oracle over F_3 and F_4 kernels") {
    auto pg23 = make_ctx(2, 3, 1);
    auto basis = kernel_of(pg23, 1);
    auto oracle = oracles::min_weight_census(basis);
    MinWeightResult r = exhaustive_min_weight(basis);
    CHECK(r.d == oracle.d);
    std::set<std::vector<std::uint8_t>> expect(oracle.witnesses.begin(), oracle.witnesses.end());
    CHECK(witness_set(r) == expect);

    auto pg24 = make_ctx(2, 2, 2);
    auto basis4 = kernel_of(pg24, 1);
    MinWeightResult r4 = exhaustive_min_weight(basis4);
    CHECK(r4.d == 6);
    auto oracle4 = oracles::min_weight_census(basis4);
    CHECK(oracle4.d == 6);
    CHECK(r4.witnesses.size() == oracle4.witnesses.size());
}

TEST_CASE("enumeration cap is enforced with guidance") {
    auto ctx = make_ctx(2, 3, 1);
    auto basis = kernel_of(ctx, 1);  // 3^6 = 729 combinations
    CHECK_THROWS_WITH_AS(exhaustive_min_weight(basis, 100), doctest::Contains("brouwer_zimmermann"),
                         std::invalid_argument);
}

TEST_CASE("parallel enumeration census is schedule independent") {
    auto ctx = make_ctx(2, 3, 1);
    auto basis = kernel_of(ctx, 1);
    MinWeightResult serial = exhaustive_min_weight(basis, kDefaultEnumCap, 1);
    MinWeightResult parallel = exhaustive_min_weight(basis, kDefaultEnumCap, 3);
    CHECK(serial.d == parallel.d);
    REQUIRE(serial.witnesses.size() == parallel.witnesses.size());
    for (std::size_t i = 0; i < serial.witnesses.size(); ++i)
        CHECK(serial.witnesses[i] == parallel.witnesses[i]);
}

TEST_CASE("Brouwer-Zimmermann equals enumeration on every desk instance") {
    for (auto [n, p, e] : {std::tuple<int, std::uint64_t, std::uint64_t>{2, 2, 1}, {2, 3, 1}, {2, 2, 2}, {3, 2, 1}}) {
        GeometryContext ctx(n, FieldSpec::make(p, e));
        auto basis = kernel_of(ctx, 1);
        MinWeightResult enumd = exhaustive_min_weight(basis);
        MinWeightResult bz = brouwer_zimmermann(basis);
        CHECK(enumd.d == bz.d);
        CHECK_FALSE(bz.exhaustive);
        REQUIRE(bz.witnesses.size() == 1);
        CHECK(weight(bz.witnesses[0]) == bz.d);
        CHECK(is_dual_codeword(ctx, bz.witnesses[0], 1));
    }
}

TEST_CASE("Brouwer-Zimmermann certifies PG(2,5): d = 2q beyond enumeration reach") {
    auto ctx = make_ctx(2, 5, 1);
    auto basis = kernel_of(ctx, 1);
    CHECK(basis.size() == 15);  // 5^15 vectors rules out enumeration
    MinWeightResult r = brouwer_zimmermann(basis);
    CHECK(r.d == 10);
    CHECK(weight(r.witnesses[0]) == 10);
}

TEST_CASE("seeding bounds the result and validates membership") {
    auto ctx = make_ctx(2, 3, 1);
    auto basis = kernel_of(ctx, 1);
    const auto& lines = ctx.subspaces(1);
    Codeword seed = line_difference_codeword(ctx, lines[0], lines[1], 1);
    MinWeightResult r = brouwer_zimmermann(basis, seed);
    CHECK(r.d == 6);
    CHECK(r.d <= weight(seed));

    Codeword junk{ctx.descriptor(), std::vector<std::uint8_t>(13, 0)};
    junk.values[0] = 1;  // a single point is never a dual codeword
    CHECK_THROWS_AS(brouwer_zimmermann(basis, junk), std::invalid_argument);
}

TEST_CASE("parallel BZ is deterministic") {
    auto ctx = make_ctx(2, 2, 2);
    auto basis = kernel_of(ctx, 1);
    MinWeightResult a = brouwer_zimmermann(basis, std::nullopt, 1);
    MinWeightResult b = brouwer_zimmermann(basis, std::nullopt, 3);
    CHECK(a.d == b.d);
    CHECK(a.witnesses[0] == b.witnesses[0]);
}

TEST_CASE("bounds reports pin the known values") {
    BoundsReport r = bounds(2, 9, 1);
    CHECK(r.bagchi_inamdar == 14);
    CHECK(r.upper_lsv == 15);
    REQUIRE(r.d2_known.has_value());
    CHECK(*r.d2_known == 15);
    CHECK(r.reduced_params == std::pair<std::uint64_t, std::uint64_t>{1, 2});

    BoundsReport r2 = bounds(3, 2, 1);
    REQUIRE(r2.ckdr.has_value());
    CHECK(*r2.ckdr == 8);
    REQUIRE(r2.main_wt.has_value());
    CHECK(*r2.main_wt == 8);
    CHECK(r2.upper_lsv == 8);

    BoundsReport r3 = bounds(4, 3, 2);
    CHECK(r3.reduced_params == std::pair<std::uint64_t, std::uint64_t>{1, 3});
    REQUIRE(r3.main_wt.has_value());
    CHECK(*r3.main_wt == 18);  // q^{n'-2} * 2q = 2 q^{n'-1}

    BoundsReport r25 = bounds(2, 25, 1);
    CHECK(r25.upper_lsv == 45);
    REQUIRE(r25.d2_known.has_value());
    CHECK(*r25.d2_known == 45);

    // square characteristic lower bound appears for p >= 7
    BoundsReport r49 = bounds(2, 49, 1);
    REQUIRE(r49.p_square_lower.has_value());
    CHECK(*r49.p_square_lower == 2 * 49 - 2 * 7 + 5);
    CHECK_FALSE(r49.d2_known.has_value());
}

TEST_CASE("bounds stay ordered on a grid") {
    for (std::uint64_t q : {2ull, 3ull, 4ull, 5ull, 7ull, 8ull, 9ull, 16ull, 25ull, 27ull, 49ull}) {
        for (std::uint64_t n = 2; n <= 5; ++n) {
            for (std::uint64_t k = 1; k <= n - 1; ++k) {
                BoundsReport r = bounds(n, q, k);
                CHECK(r.bagchi_inamdar <= r.upper_lsv);
                if (r.csajbok.has_value()) CHECK(*r.csajbok <= r.upper_lsv);
                if (r.p_square_lower.has_value()) CHECK(*r.p_square_lower <= r.upper_lsv);
                if (r.main_wt.has_value()) {
                    CHECK(r.bagchi_inamdar <= *r.main_wt);
                    CHECK(*r.main_wt <= r.upper_lsv);
                    if (r.ckdr.has_value()) CHECK(*r.ckdr == *r.main_wt);
                }
            }
        }
    }
    CHECK_THROWS_AS(bounds(1, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(bounds(3, 2, 3), std::invalid_argument);
    CHECK_THROWS_AS(bounds(3, 6, 1), std::invalid_argument);
}

TEST_CASE("computed minimum distances land inside their bound reports") {
    struct Case {
        std::uint64_t n, q, k;
        std::uint64_t p, e;
        bool enumerable;
    };
    for (const Case& c : {Case{2, 2, 1, 2, 1, true}, Case{2, 3, 1, 3, 1, true}, Case{2, 4, 1, 2, 2, true},
                          Case{3, 2, 1, 2, 1, true}, Case{3, 2, 2, 2, 1, true}, Case{2, 5, 1, 5, 1, false},
                          Case{3, 3, 1, 3, 1, false}, Case{3, 4, 1, 2, 2, true}}) {
        GeometryContext ctx(int(c.n), FieldSpec::make(c.p, c.e));
        auto basis = kernel_of(ctx, int(c.k));
        MinWeightResult r =
            c.enumerable ? exhaustive_min_weight(basis, kDefaultEnumCap, 2) : brouwer_zimmermann(basis);
        BoundsReport b = bounds(c.n, c.q, c.k);
        CHECK(b.bagchi_inamdar <= r.d);
        CHECK(r.d <= b.upper_lsv);
        if (b.main_wt.has_value()) CHECK(r.d == *b.main_wt);   // q^{n'-2} d2
        if (b.ckdr.has_value()) CHECK(r.d == *b.ckdr);         // q even exact value
        if (c.e == 1) {
            std::uint64_t prime_value = 2;  // 2 q^{n'-1}
            for (std::uint64_t i = 1; i < c.n - c.k + 1; ++i) prime_value *= c.q;
            CHECK(r.d == prime_value);
        }
    }
}

TEST_CASE("engines reject degenerate bases") {
    GeometryContext ctx(2, FieldSpec::make(2, 1));
    Codeword zero{ctx.descriptor(), std::vector<std::uint8_t>(7, 0)};
    CHECK_THROWS_AS(exhaustive_min_weight({zero}), std::invalid_argument);
    CHECK_THROWS_AS(brouwer_zimmermann({zero}), std::invalid_argument);
    CHECK_THROWS_AS(exhaustive_min_weight({}), std::invalid_argument);
}

TEST_CASE("known d2 table") {
    CHECK(known_d2(2) == 4);
    CHECK(known_d2(4) == 6);
    CHECK(known_d2(8) == 10);
    CHECK(known_d2(3) == 6);
    CHECK(known_d2(5) == 10);
    CHECK(known_d2(9) == 15);
    CHECK(known_d2(25) == 45);
    CHECK_FALSE(known_d2(49).has_value());
    CHECK_FALSE(known_d2(27).has_value());
}

TEST_CASE("d2 table files extend the built-in values") {
    std::string path = "d2_extra_test.json";
    {
        std::ofstream out(path);
        out << "{\"49\": 99}\n";
    }
    D2Table t = D2Table::load(path);
    CHECK(known_d2(49, t) == 99);
    CHECK(known_d2(9, t) == 15);  // builtin entries survive
    std::remove(path.c_str());
    CHECK_THROWS_AS(D2Table::load("no_such_file.json"), std::invalid_argument);
}

TEST_CASE("Haemers feasibility") {
    HaemersCheck eq = haemers_feasible(8, 1, 3, 2);
    CHECK(eq.lhs == 392);
    CHECK(eq.rhs == 392);
    CHECK(eq.feasible);

    HaemersCheck bad = haemers_feasible(8, 8, 3, 2);
    CHECK(bad.lhs == 3136);
    CHECK(bad.rhs == 196);
    CHECK_FALSE(bad.feasible);

    CHECK(haemers_feasible(0, 5, 3, 2).feasible);
    CHECK(haemers_feasible(5, 0, 3, 2).feasible);
    CHECK(haemers_feasible(0, 5, 3, 2).lhs == 0);

    // monotone: shrinking either set never flips feasible to false
    for (std::uint64_t s = 0; s <= 15; ++s)
        for (std::uint64_t t = 0; t <= 15; ++t) {
            if (!haemers_feasible(s, t, 3, 2).feasible) continue;
            if (s > 0) CHECK(haemers_feasible(s - 1, t, 3, 2).feasible);
            if (t > 0) CHECK(haemers_feasible(s, t - 1, 3, 2).feasible);
        }

    CHECK_THROWS_AS(haemers_feasible(16, 0, 3, 2), std::invalid_argument);
}
