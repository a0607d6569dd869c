#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "pgc/projgeom.hpp"

using namespace pgc;

namespace {

GeometryContext make_ctx(int n, std::uint64_t p, std::uint64_t e) {
    return GeometryContext(n, FieldSpec::make(p, e));
}

Subspace random_subspace(std::mt19937_64& rng, const GeometryContext& ctx, int max_points) {
    std::uniform_int_distribution<std::uint64_t> pick(0, ctx.num_points() - 1);
    std::uniform_int_distribution<int> count(1, max_points);
    std::vector<std::uint64_t> ids;
    int c = count(rng);
    for (int i = 0; i < c; ++i) ids.push_back(pick(rng));
    return span_points(ctx, ids);
}

}  // namespace

TEST_CASE("theta point counts") {
    CHECK(theta(2, 2) == 7);
    CHECK(theta(3, 2) == 15);
    CHECK(theta(2, 9) == 91);
    CHECK(theta(0, 5) == 1);
    CHECK(theta(-1, 5) == 0);
}

TEST_CASE("point enumeration of PG(2,2)") {
    auto ctx = make_ctx(2, 2, 1);
    REQUIRE(ctx.num_points() == 7);
    CHECK(ctx.point(0).coords == std::vector<std::uint64_t>{1, 0, 0});
    CHECK(ctx.point(6).coords == std::vector<std::uint64_t>{0, 0, 1});
    // ids round-trip through the arithmetic rank
    for (const Point& pt : ctx.points()) CHECK(ctx.point_id(pt.coords) == pt.id);
    // ids are stable under scaling: trivial at q=2, checked at q=4 below
}

TEST_CASE("point counts across geometries") {
    CHECK(make_ctx(3, 2, 1).num_points() == 15);
    CHECK(make_ctx(2, 2, 2).num_points() == 21);
    auto ctx = make_ctx(2, 2, 2);
    for (const Point& pt : ctx.points()) CHECK(ctx.point_id(pt.coords) == pt.id);
    // scaled representatives resolve to the same id
    const FieldSpec& f = ctx.field();
    std::vector<std::uint64_t> v{2, 1, 3};
    auto canon = canonical_coords(f, v);
    CHECK(canon[0] == 1);
    CHECK(ctx.point_id(v) == ctx.point_id(canon));
}

TEST_CASE("subspace enumeration matches the span-dedupe oracle") {
    struct Case {
        int n, k;
        std::uint64_t p, e, expect;
    };
    for (const Case& c : {Case{2, 1, 2, 1, 7}, Case{3, 1, 2, 1, 35}, Case{3, 2, 2, 1, 15},
                          Case{2, 1, 3, 1, 13}, Case{2, 1, 2, 2, 21}, Case{3, 1, 2, 2, 357}}) {
        auto ctx = make_ctx(c.n, c.p, c.e);
        const auto& table = ctx.subspaces(c.k);
        CHECK(table.size() == c.expect);
        CHECK(subspace_count(c.n, c.k, ctx.q()) == c.expect);
        auto oracle = oracles::subspaces_by_span(ctx, c.k);
        REQUIRE(oracle.size() == table.size());
        for (const Subspace& s : table) CHECK(oracle.count(s.rows) == 1);
        // table is sorted and ids match positions
        for (std::size_t i = 0; i + 1 < table.size(); ++i) CHECK(table[i].rows < table[i + 1].rows);
        for (std::size_t i = 0; i < table.size(); ++i) {
            CHECK(table[i].id == i);
            CHECK(ctx.subspace_id(table[i]) == i);
        }
    }
}

TEST_CASE("hyperplane count equals point count") {
    for (auto [n, p, e] : {std::tuple<int, std::uint64_t, std::uint64_t>{2, 3, 1}, {3, 2, 1}, {3, 2, 2}, {4, 2, 1}}) {
        auto ctx = make_ctx(n, p, e);
        CHECK(ctx.subspaces(n - 1).size() == ctx.num_points());
    }
}

TEST_CASE("incidence basics") {
    auto ctx = make_ctx(2, 2, 1);
    const auto& lines = ctx.subspaces(1);
    // the full plane as a subspace contains everything
    Subspace full = span_points(ctx, {0, 4, 6});
    REQUIRE(full.dim == 2);
    for (const Point& pt : ctx.points()) CHECK(incident(ctx, pt, full));

    // unit-vector line misses (1,0,0)
    Subspace yz = span_points(ctx, {ctx.point_id({0, 1, 0}), ctx.point_id({0, 0, 1})});
    CHECK_FALSE(incident(ctx, ctx.point_id({1, 0, 0}), yz));

    // every line of the Fano plane has exactly 3 points
    for (const Subspace& l : lines) {
        std::uint64_t count = 0;
        for (const Point& pt : ctx.points()) count += incident(ctx, pt, l);
        CHECK(count == 3);
        CHECK(points_in(ctx, l).size() == 3);
    }
}

TEST_CASE("span basics") {
    auto ctx = make_ctx(3, 2, 1);
    Subspace p0 = point_subspace(ctx, 3);
    CHECK(span_pair(ctx, p0, p0).dim == 0);
    CHECK(span_pair(ctx, p0, p0).rows == p0.rows);
    Subspace line = span_points(ctx, {3, 9});
    CHECK(line.dim == 1);
    CHECK(span_of(ctx, {}).dim == -1);

    // plane plus an off-plane point spans everything
    Subspace plane = ctx.subspaces(2)[0];
    for (const Point& pt : ctx.points()) {
        if (incident(ctx, pt, plane)) continue;
        CHECK(span_pair(ctx, plane, point_subspace(ctx, pt.id)).dim == 3);
        break;
    }
}

TEST_CASE("meet basics") {
    auto ctx = make_ctx(3, 2, 1);
    const auto& lines = ctx.subspaces(1);
    CHECK(meet(ctx, lines[0], lines[0]).rows == lines[0].rows);

    // two distinct lines in a common plane meet in a point
    auto ctx2 = make_ctx(2, 3, 1);
    const auto& plines = ctx2.subspaces(1);
    Subspace pt = meet(ctx2, plines[0], plines[1]);
    CHECK(pt.dim == 0);

    // disjoint lines exist in PG(3,q) and satisfy Grassmann with dim -1
    bool found_disjoint = false;
    for (const Subspace& l2 : lines) {
        Subspace inter = meet(ctx, lines[0], l2);
        if (inter.dim == -1) {
            CHECK(span_pair(ctx, lines[0], l2).dim == 3);
            found_disjoint = true;
            break;
        }
    }
    CHECK(found_disjoint);
}

TEST_CASE("Grassmann identity on random pairs") {
    std::mt19937_64 rng(0x5eed);
    for (auto [n, p, e] : {std::tuple<int, std::uint64_t, std::uint64_t>{3, 2, 1}, {3, 2, 2}, {4, 2, 1}, {2, 5, 1}}) {
        auto ctx = make_ctx(n, p, e);
        for (int trial = 0; trial < 10000; ++trial) {
            Subspace a = random_subspace(rng, ctx, n + 1);
            Subspace b = random_subspace(rng, ctx, n + 1);
            Subspace s = span_pair(ctx, a, b);
            Subspace m = meet(ctx, a, b);
            CHECK(a.dim + b.dim == s.dim + m.dim);
        }
    }
}

TEST_CASE("every point lies on theta_{n-1} lines") {
    auto ctx = make_ctx(3, 2, 1);
    const auto& lines = ctx.subspaces(1);
    std::uint64_t expected = theta(2, 2);
    for (const Point& pt : ctx.points()) {
        std::uint64_t count = 0;
        for (const Subspace& l : lines) count += incident(ctx, pt, l);
        CHECK(count == expected);
    }
}

TEST_CASE("points_in sizes and charts") {
    auto ctx = make_ctx(3, 2, 2);
    const auto& lines = ctx.subspaces(1);
    CHECK(points_in(ctx, lines[17]).size() == 5);  // theta_1(4)

    auto ctx32 = make_ctx(3, 2, 1);
    const Subspace& plane = ctx32.subspaces(2)[4];
    auto ids = points_in(ctx32, plane);
    CHECK(ids.size() == 7);  // theta_2(2)
    auto chart = subspace_chart(ctx32, plane);
    CHECK(chart.size() == 7);
    // chart is a bijection onto the subspace points
    std::set<std::uint64_t> seen(chart.begin(), chart.end());
    CHECK(seen.size() == 7);
    for (std::uint64_t id : chart) CHECK(incident(ctx32, id, plane));

    Subspace pt = point_subspace(ctx32, 11);
    auto own = points_in(ctx32, pt);
    REQUIRE(own.size() == 1);
    CHECK(own[0] == 11);
}

TEST_CASE("subspace table access is guarded") {
    auto ctx = make_ctx(2, 2, 1);
    CHECK_THROWS_AS(ctx.subspaces(3), std::invalid_argument);
    CHECK_THROWS_AS(ctx.subspaces(-1), std::invalid_argument);
}
