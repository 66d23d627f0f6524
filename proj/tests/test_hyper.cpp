/*
  Copyright 2026 The certoset Authors

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this file except in compliance with the License.
  You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

  Unless required by applicable law or agreed to in writing, software
  distributed under the License is distributed on an "AS IS" BASIS,
  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
  See the License for the specific language governing permissions and
  limitations under the License.
*/

#include "doctest.h"

#include <random>
#include <set>

#include "certoset/fractal.hpp"
#include "certoset/hyper.hpp"

using namespace certoset;

namespace {

Dyadic d(long m, std::int64_t e) { return Dyadic(mpz_class(m), e); }
Point pt(Dyadic x, Dyadic y) { return make_point({x, y}); }

bool eventually(const Sierpinski& s, Effort budget = 4096) { return first_true_effort(s.kleenean(), budget).has_value(); }

Dyadic dist_exact(const std::vector<Dyadic>& a, const std::vector<Dyadic>& b) {
    Dyadic m;
    for (std::size_t i = 0; i < a.size(); ++i) m = max(m, (a[i] - b[i]).abs());
    return m;
}

OpenSet balls(std::vector<Ball> b) { return OpenSet::from_list(std::move(b)); }

}  // namespace

TEST_CASE("open membership") {
    OpenSet unit = balls({{pt(0, 0), 0}});
    CHECK(eventually(open_member(unit, pt(0, 0))));
    CHECK_FALSE(eventually(open_member(unit, pt(2, 0))));
    // boundary point of an open ball
    CHECK_FALSE(eventually(open_member(unit, pt(1, 0))));
    OpenSet two = balls({{pt(1, 0), 1}, {pt(0, 1), 1}});
    CHECK(eventually(open_member(two, pt(0, d(7, -3)))));
    CHECK_FALSE(eventually(open_member(OpenSet::empty(), pt(0, 0))));

    // soundness and completeness on samples, exact geometry
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<long> m(-64, 64);
    std::vector<Ball> list{{pt(d(1, -1), 0), 1}, {pt(-1, -1), 2}, {pt(d(-3, -2), d(5, -3)), 3}};
    OpenSet u = balls(list);
    for (int t = 0; t < 300; ++t) {
        std::vector<Dyadic> x{d(m(rng), -5), d(m(rng), -5)};
        bool inside = false;
        for (const auto& b : list) inside = inside || dist_exact(x, *exact_coords(b.center)) < Dyadic::pow2(-b.level);
        CHECK(eventually(open_member(u, make_point(x)), 256) == inside);
    }
}

TEST_CASE("countable unions and intersections of opens") {
    auto none = open_union_countable([](std::size_t) { return OpenSet::empty(); });
    CHECK_FALSE(eventually(open_member(none, pt(0, 0)), 256));

    OpenSet u0 = balls({{pt(0, 0), 1}});
    auto first = open_union_countable([u0](std::size_t i) { return i == 0 ? u0 : OpenSet::empty(); });
    for (long a = -4; a <= 4; ++a) {
        Point x = pt(d(a, -3), d(-a, -4));
        CHECK(eventually(open_member(first, x), 512) == eventually(open_member(u0, x), 512));
    }

    // B(k, 0) around the integers on the x axis
    auto line = open_union_countable([](std::size_t k) { return balls({{pt(static_cast<long>(k), 0), 0}}); });
    CHECK(eventually(open_member(line, pt(d(1, -1), 0))));
    CHECK(eventually(open_member(line, pt(d(13, -1), d(1, -2)))));
    CHECK_FALSE(eventually(open_member(line, pt(3, 1)), 512));

    OpenSet a = balls({{pt(0, 0), 0}}), b = balls({{pt(1, 0), 0}});
    CHECK(eventually(open_intersect(a, b)(pt(d(1, -1), 0))));
    CHECK_FALSE(eventually(open_intersect(a, b)(pt(5, 5)), 512));
    CHECK_FALSE(eventually(open_intersect(a, b)(pt(d(-1, -1), 0)), 512));
}

TEST_CASE("choice from open sets") {
    auto sp = euclidean(2);
    auto check = [&](const OpenSet& u, const Point& c, std::int64_t level) {
        auto i = open_choice(u, sp);
        auto p = *exact_coords(sp.dense(i));
        CHECK(dist_exact(p, *exact_coords(c)) < Dyadic::pow2(-level));
    };
    check(balls({{pt(0, 0), 0}}), pt(0, 0), 0);
    check(balls({{pt(1, 1), 2}}), pt(1, 1), 2);
    check(balls({{pt(d(-5, -3), d(9, -4)), 6}}), pt(d(-5, -3), d(9, -4)), 6);

    // the whole plane as unit balls around integer points
    OpenSet plane([](std::size_t i) {
        auto [a, b] = cantor_unpair(i);
        auto z = [](std::uint64_t v) { return static_cast<long>(v % 2 ? -(static_cast<long>(v / 2)) - 1 : v / 2); };
        return std::optional<Ball>(Ball{pt(z(a), z(b)), 0});
    });
    auto i = open_choice(plane, sp);
    CHECK(eventually(open_member(plane, sp.dense(i))));

    // a later slot of an enumeration with empty slots
    OpenSet sparse([](std::size_t i) {
        return i == 7 ? std::optional<Ball>(Ball{pt(3, -2), 1}) : std::nullopt;
    });
    check(sparse, pt(3, -2), 1);
    ScopedEffortCeiling ceiling(200);
    CHECK_THROWS_AS(open_choice(OpenSet::empty(), sp), EffortCeilingExceeded);
}

TEST_CASE("closed sets") {
    ClosedSet left = closed_half_space(0, CReal(0), true);   // x <= 0
    ClosedSet below = closed_half_space(1, CReal(0), true);  // y <= 0
    ClosedSet both = closed_union(left, below);
    CHECK(eventually(both.complement_member(pt(1, 1))));
    CHECK_FALSE(eventually(both.complement_member(pt(-1, 5)), 512));
    CHECK_FALSE(eventually(both.complement_member(pt(0, 0)), 512));
    CHECK(eventually(closed_half_space(0, CReal(0), false).complement_member(pt(-1, 0))));

    ClosedSet nested = closed_countable_intersection([](std::size_t n) {
        return closed_ball(pt(0, 0), static_cast<std::int64_t>(n));
    });
    CHECK(eventually(nested.complement_member(pt(2, 0))));
    CHECK(eventually(nested.complement_member(pt(d(1, -10), 0))));
    CHECK_FALSE(eventually(nested.complement_member(pt(0, 0)), 512));

    ClosedSet disc = closed_ball(pt(0, 0), 0);
    CHECK_FALSE(eventually(disc.complement_member(pt(1, 0)), 512));
    CHECK(eventually(disc.complement_member(pt(Dyadic(1) + d(1, -8), 0))));
}

TEST_CASE("compactness tester") {
    const TBSet& tri = triangle_tb();
    CHECK(eventually(compact_subset_semidec(tri, balls({{pt(0, 0), -2}}))));
    CHECK_FALSE(eventually(compact_subset_semidec(tri, balls({{pt(10, 10), 0}})), 1 << 12));
    CHECK(eventually(compact_subset_semidec(singleton_tb(pt(0, 0)), balls({{pt(0, 0), 3}}))));
    CHECK(eventually(compact_subset_semidec(empty_tb(2), OpenSet::empty())));
    CHECK_FALSE(eventually(compact_subset_semidec(singleton_tb(pt(0, 0)), OpenSet::empty())));

    // radius-1 max-norm ball at the origin misses the vertex (1, 0)
    Sierpinski miss = compact_subset_semidec(tri, balls({{pt(0, 0), 0}}));
    CHECK(miss.query(1 << 16) == Truth::Unknown);

    // many small balls: radius 1/16 around the level-4 centers, margin 1/32
    std::vector<Ball> small;
    for (const auto& c : *tri.covering(4)) small.push_back({c, 4});
    CHECK(eventually(compact_subset_semidec(tri, balls(small)), 1 << 14));
    // the last ball is the only one containing the vertex (1, 0)
    REQUIRE(*exact_coords(small.back().center) == std::vector<Dyadic>{d(31, -5), d(1, -5)});
    small.pop_back();
    CHECK(compact_subset_semidec(tri, balls(small)).query(1 << 14) == Truth::Unknown);
}

TEST_CASE("overtness tester") {
    const TBSet& tri = triangle_tb();
    CHECK(eventually(overt_intersects_semidec(tri, balls({{pt(d(1, -2), d(1, -2)), 1}}))));
    CHECK_FALSE(eventually(overt_intersects_semidec(tri, balls({{pt(5, 5), 2}})), 1 << 12));
    CHECK(eventually(overt_intersects_semidec(singleton_tb(pt(0, 0)), balls({{pt(d(1, -3), 0), 2}}))));
    CHECK_FALSE(eventually(overt_intersects_semidec(empty_tb(2), balls({{pt(0, 0), 0}}))));
    // touching from outside: d((2, 0), triangle) = 1 is not < 1
    CHECK(overt_intersects_semidec(tri, balls({{pt(2, 0), 0}})).query(1 << 16) == Truth::Unknown);
    CHECK(eventually(overt_intersects_semidec(tri, balls({{pt(2, 0), -1}}))));
}

TEST_CASE("modulus of continuity") {
    std::mt19937_64 rng(33);
    auto sound = [&](const PointPredicate& f, const Point& x) {
        std::int64_t m = modulus_of_continuity(f, x);
        auto cx = *exact_coords(x);
        std::uniform_int_distribution<long> off(-(1L << 20) + 1, (1L << 20) - 1);
        for (int t = 0; t < 100; ++t) {
            std::vector<Dyadic> y;
            for (const auto& c : cx) y.push_back(c + d(off(rng), -(m + 20)));
            REQUIRE(dist_exact(y, cx) < Dyadic::pow2(-m));
            CHECK(eventually(f(make_point(y))));
        }
        return m;
    };
    sound([](const Point& y) { return lt_semidec(y[0], CReal(1)); }, pt(0, 0));
    // exact argument, threshold far below the first read precision
    std::int64_t m = sound([](const Point& y) { return lt_semidec(y[0], CReal::pow2(-10)); }, pt(0, 0));
    CHECK(m >= 11);

    OpenSet ball = balls({{pt(d(1, -1), d(1, -1)), 1}});
    Point x = pt(d(5, -3), d(1, -1));
    m = sound([ball](const Point& y) { return open_member(ball, y); }, x);
    // B(x, 2^-m) inside the ball
    CHECK(Dyadic::pow2(-m) + d(1, -3) <= d(1, -1));

    CHECK(modulus_of_continuity([](const Point&) { return Sierpinski::top(); }, pt(3, 3)) == 1);

    // irrational base point
    Point r = {sqrt3() - CReal(1), CReal(0)};
    PointPredicate f = [](const Point& y) { return lt_semidec(y[0], CReal(1)); };
    m = modulus_of_continuity(f, r);
    CHECK(m >= 1);
    Dyadic c = approx_dyadic(r[0], m + 8);
    CHECK(eventually(f(pt(c + Dyadic::pow2(-(m + 1)), 0))));

    ScopedEffortCeiling ceiling(64);
    CHECK_THROWS_AS(modulus_of_continuity([](const Point&) { return Sierpinski::bottom(); }, pt(0, 0)),
                    EffortCeilingExceeded);
}

TEST_CASE("spying does not change results") {
    PointPredicate f = [](const Point& y) { return lt_semidec(y[0] * y[1], CReal(d(1, -2))); };
    for (long a = -3; a <= 3; ++a) {
        Point x = {CReal(d(a, -2)), sqrt3() - CReal(1)};
        SpyPoint spy(x);
        CHECK(eventually(f(spy.point()), 512) == eventually(f(x), 512));
        CHECK(spy.high_water() > 0);
    }
}

TEST_CASE("modulus corpus") {
    const auto& corpus = modulus_corpus();
    REQUIRE(corpus.size() == 5);
    for (const auto& ex : corpus) {
        INFO(ex.name);
        CHECK(ex.base_points.size() == 20);
        std::set<std::vector<Dyadic>> distinct;
        for (const auto& x : ex.base_points) {
            distinct.insert(*exact_coords(x));
            CHECK(eventually(ex.f(x)));
        }
        CHECK(distinct.size() == 20);
    }
}
