#include <doctest.h>

#include <cmath>
#include <set>

#include "nlpl/domain.hpp"

using namespace nlpl;

TEST_CASE("shrink box arithmetic") {
    const Domain omega = Domain::interval(0.0, 1.0);
    const Domain s = shrink(omega, 0.1);
    CHECK(s.lower(0) == doctest::Approx(0.1));
    CHECK(s.upper(0) == doctest::Approx(0.9));

    const Domain id = shrink(omega, 0.0);
    CHECK(id.lower(0) == 0.0);
    CHECK(id.upper(0) == 1.0);

    const Domain sq = shrink(Domain::box2(0.0, 1.0, 0.0, 1.0), 0.25);
    for (int d = 0; d < 2; ++d) {
        CHECK(sq.lower(d) == doctest::Approx(0.25));
        CHECK(sq.upper(d) == doctest::Approx(0.75));
    }

    CHECK_THROWS(shrink(omega, 0.5));
    CHECK_THROWS(shrink(omega, -0.1));
}

TEST_CASE("build_grid adjusts n and classifies the collar") {
    const Domain omega = Domain::interval(0.0, 1.0);
    const Grid g = build_grid(omega, {11}, 0.2);

    // delta is an exact multiple of the spacing, so the boundary nodes land
    // exactly on 0 and 1.
    CHECK(g.collar_steps(0) * g.spacing(0) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(g.coord(0, g.collar_steps(0)) == 0.0);
    CHECK(g.coord(0, 0) == doctest::Approx(-0.2));
    CHECK(g.coord(0, g.n(0) - 1) == doctest::Approx(1.2));

    long interior = 0;
    for (long i = 0; i < g.node_count(); ++i) {
        const double x = g.point(i)[0];
        // Every node carries exactly one class.
        CHECK(g.is_interior(i) == (g.node_class(i) == NodeClass::interior));
        if (g.is_interior(i)) {
            ++interior;
            CHECK(x > 0.0);
            CHECK(x < 1.0);
        } else {
            CHECK(g.node_class(i) == NodeClass::collar);
            CHECK((x <= 0.0 || x >= 1.0));
        }
    }
    CHECK(interior == g.interior_steps(0) - 1);
    CHECK(static_cast<long>(g.free_nodes().size()) == interior);

    CHECK_THROWS(build_grid(omega, {5}, 0.0));    // delta must be positive
    CHECK_THROWS(build_grid(omega, {2}, 0.1));    // too few nodes
    CHECK_THROWS(build_grid(omega, {7}, 1.0));    // fewer than 2 interior nodes
}

TEST_CASE("build_grid 2D node count by enumeration") {
    const Grid g = build_grid(Domain::box2(0.0, 1.0, 0.0, 1.0), {21, 21}, 0.1);
    CHECK(g.node_count() >= 441);
    CHECK(g.node_count() == static_cast<long>(g.n(0)) * g.n(1));

    // Collar nodes form a frame of width 0.1 around the unit square.
    for (long i = 0; i < g.node_count(); ++i) {
        const Point x = g.point(i);
        const bool inside = x[0] > 0.0 && x[0] < 1.0 && x[1] > 0.0 && x[1] < 1.0;
        CHECK(g.is_interior(i) == inside);
        if (!g.is_interior(i)) {
            CHECK(x[0] >= -0.1 - 1e-12);
            CHECK(x[0] <= 1.1 + 1e-12);
        }
    }
}

TEST_CASE("neighbor pairs follow the horizon strictly") {
    // Spacing 0.1 around Omega = (0,1) with collar 0.3.
    const Grid g = build_grid(Domain::interval(0.0, 1.0), {17}, 0.3);
    REQUIRE(g.spacing(0) == doctest::Approx(0.1));

    SUBCASE("offsets below delta qualify") {
        const auto pairs = neighbor_pairs(g, 0.25);
        std::set<std::pair<long, long>> set(pairs.begin(), pairs.end());
        const long mid = g.node_count() / 2;
        CHECK(set.count({mid, mid + 1}) == 1);
        CHECK(set.count({mid, mid + 2}) == 1);
        CHECK(set.count({mid - 1, mid}) == 1);
        CHECK(set.count({mid - 2, mid}) == 1);
        CHECK(set.count({mid, mid + 3}) == 0);
        for (const auto& [i, j] : pairs) {
            CHECK(i < j);
            CHECK(distance(g.point(i), g.point(j)) < 0.25);
        }
        // Band count: offsets 1..2 give n - k pairs each.
        const long n = g.node_count();
        CHECK(static_cast<long>(pairs.size()) == (n - 1) + (n - 2));
    }

    SUBCASE("delta below the spacing gives no pairs") {
        CHECK(neighbor_pairs(g, 0.05).empty());
    }

    SUBCASE("delta exactly on a shell excludes it") {
        const auto pairs = neighbor_pairs(g, 0.2);
        for (const auto& [i, j] : pairs) CHECK(j - i == 1);
    }

    SUBCASE("horizon above the collar is rejected") {
        CHECK_THROWS(neighbor_pairs(g, 0.31));
    }
}

TEST_CASE("2D stencil offsets at delta = 0.15") {
    const Grid g = build_grid(Domain::box2(0.0, 1.0, 0.0, 1.0), {13, 13}, 0.2);
    REQUIRE(g.spacing(0) == doctest::Approx(0.1));
    const auto shells = pair_stencil(g, 0.15);
    // Lexicographically positive representatives of (+-1,0),(0,+-1),(+-1,+-1).
    CHECK(shells.size() == 4);
    std::multiset<double> dist;
    for (const auto& s : shells) dist.insert(s.r);
    CHECK(dist.count(0.1) >= 1);
    CHECK(std::abs(*dist.rbegin() - 0.1 * std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("pair relation is symmetric and self-free") {
    const Grid g = build_grid(Domain::box2(0.0, 1.0, 0.0, 1.0), {9, 9}, 0.25);
    const auto pairs = neighbor_pairs(g, 0.25);
    std::set<std::pair<long, long>> seen;
    for (const auto& [i, j] : pairs) {
        CHECK(i != j);
        CHECK(seen.insert({i, j}).second);  // no duplicates in either orientation
        CHECK(seen.count({j, i}) == 0);
    }
}
