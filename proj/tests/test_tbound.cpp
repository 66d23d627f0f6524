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

#include <chrono>
#include <random>

#include "certoset/fractal.hpp"
#include "certoset/tbound.hpp"

using namespace certoset;

namespace {

Dyadic d(long m, std::int64_t e) { return Dyadic(mpz_class(m), e); }
Point pt(Dyadic x, Dyadic y) { return make_point({x, y}); }

bool near(const CReal& x, const Dyadic& v, std::int64_t p) {
    Interval iv = x.approx(static_cast<Effort>(p + 1));
    Dyadic r = Dyadic::pow2(-p);
    return v - r <= iv.lo && iv.hi <= v + r;
}

std::vector<Dyadic> exact(const Point& p) {
    auto c = exact_coords(p);
    REQUIRE(c.has_value());
    return *c;
}

std::vector<std::vector<Dyadic>> centers_of(const TBSet& s, std::int64_t n) {
    std::vector<std::vector<Dyadic>> out;
    for (const auto& c : *s.covering(n)) out.push_back(exact(c));
    return out;
}

Dyadic dist_exact(const std::vector<Dyadic>& a, const std::vector<Dyadic>& b) {
    Dyadic m;
    for (std::size_t i = 0; i < a.size(); ++i) m = max(m, (a[i] - b[i]).abs());
    return m;
}

// all-pairs max-min
Dyadic hausdorff_brute(const std::vector<std::vector<Dyadic>>& s, const std::vector<std::vector<Dyadic>>& t) {
    auto directed = [](const auto& a, const auto& b) {
        Dyadic worst;
        for (const auto& x : a) {
            Dyadic best = dist_exact(x, b[0]);
            for (const auto& y : b) best = min(best, dist_exact(x, y));
            worst = max(worst, best);
        }
        return worst;
    };
    return max(directed(s, t), directed(t, s));
}

// Max-norm distance to the triangle: least r with the square of radius r
// around (x, y) meeting x, y >= 0, x + y <= 1.
Dyadic triangle_dist(const Dyadic& x, const Dyadic& y) {
    Dyadic r = max(Dyadic(), max(-x, -y));
    if (x + y > 1) {
        Dyadic diag = (x + y - 1).shifted(-1);
        r = max(r, diag <= min(x, y) ? diag : max(x, y) - 1);
    }
    return r;
}

bool in_triangle(const Dyadic& x, const Dyadic& y) { return x.sign() >= 0 && y.sign() >= 0 && x + y <= 1; }

TBSet finite_tb(const std::vector<std::vector<Dyadic>>& pts) {
    TBSet s = singleton_tb(make_point(pts[0]));
    for (std::size_t i = 1; i < pts.size(); ++i) s = tb_union(s, singleton_tb(make_point(pts[i])));
    return s;
}

// sampled covering property: every member in some closed level-n ball
template <class Member>
void check_covering(const TBSet& s, std::int64_t n, std::int64_t grid, Dyadic lo, Dyadic hi, Member member) {
    auto cov = s.covering(n);
    std::vector<std::vector<Dyadic>> centers;
    for (const auto& c : *cov) centers.push_back(exact(c));
    Dyadic step = Dyadic::pow2(-grid), r = Dyadic::pow2(-n);
    for (Dyadic x = lo; x <= hi; x += step)
        for (Dyadic y = lo; y <= hi; y += step) {
            if (!member(x, y)) continue;
            bool hit = false;
            for (const auto& c : centers) hit = hit || dist_exact({x, y}, c) <= r;
            CHECK_MESSAGE(hit, "uncovered (" << x.to_decimal() << ", " << y.to_decimal() << ") at level " << n);
        }
}

}  // namespace

TEST_CASE("emptiness") {
    CHECK(tb_is_empty(empty_tb(2)));
    CHECK_FALSE(tb_is_empty(triangle_tb()));
    CHECK_FALSE(tb_is_empty(singleton_tb(pt(0, 0))));
    for (std::int64_t n = 0; n < 6; ++n) CHECK(empty_tb(2).covering(n)->empty());
    CHECK_THROWS_AS(tb_dist(empty_tb(2), pt(0, 0)), std::domain_error);
    CHECK_THROWS_AS(tb_choice(empty_tb(2)), std::domain_error);
    CHECK_THROWS(tb_centered(empty_tb(2), 1));
    CHECK(tb_is_empty(tb_union(empty_tb(2), empty_tb(2))));
}

TEST_CASE("singleton coverings") {
    for (std::int64_t n = 0; n < 20; ++n) {
        auto cov = singleton_tb(pt(0, 0)).covering(n);
        REQUIRE(cov->size() == 1);
        CHECK(dist_exact(exact((*cov)[0]), {0, 0}) <= Dyadic::pow2(-n));
    }
    // centers of an irrational point form a fast Cauchy sequence
    Point x = {sqrt3() - CReal(1), CReal(0)};
    TBSet s = singleton_tb(x);
    std::vector<std::vector<Dyadic>> c;
    for (std::int64_t n = 0; n < 30; ++n) c.push_back(exact((*s.covering(n))[0]));
    for (std::size_t n = 0; n < c.size(); ++n)
        for (std::size_t m = n; m < c.size(); ++m)
            CHECK(dist_exact(c[n], c[m]) <= Dyadic::pow2(-static_cast<long>(n)) + Dyadic::pow2(-static_cast<long>(m)));
    CHECK(tb_dist(s, x).approx(13).hi <= Dyadic::pow2(-12));
}

TEST_CASE("located distance examples") {
    CHECK(near(tb_dist(triangle_tb(), pt(2, 0)), 1, 16));
    CHECK(near(tb_dist(triangle_tb(), pt(d(1, -2), d(1, -2))), 0, 16));
    CHECK(near(tb_dist(singleton_tb(pt(0, 0)), pt(3, 4)), 4, 16));
    // exterior point (1, 1): nearest (1/2, 1/2) at max-norm distance 1/2
    CHECK(near(tb_dist(triangle_tb(), pt(1, 1)), d(1, -1), 16));
    CHECK(near(tb_dist(triangle_tb(), pt(-1, d(1, -1))), 1, 16));
}

TEST_CASE("located distance against the closed form") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long> m(-300, 300);
    for (int t = 0; t < 100; ++t) {
        Dyadic x = d(m(rng), -7), y = d(m(rng), -7);
        CHECK_MESSAGE(near(tb_dist(triangle_tb(), pt(x, y)), triangle_dist(x, y), 16),
                      "(" << x.to_decimal() << ", " << y.to_decimal() << ")");
    }
    // sierpinski: vertices are members, points far below are 1 + t away
    CHECK(near(tb_dist(sierpinski_tb(), pt(-1, -1)), 0, 12));
    CHECK(near(tb_dist(sierpinski_tb(), pt(1, -1)), 0, 12));
    CHECK(near(tb_dist(sierpinski_tb(), pt(0, -3)), 2, 12));
    // the centroid hole: inner triangle removed at the first level
    CHECK(tb_dist(sierpinski_tb(), pt(0, d(-1, -1))).approx(14).lo > Dyadic(0));
}

TEST_CASE("centered coverings") {
    for (std::int64_t n = 0; n < 5; ++n) {
        auto c = tb_centered(triangle_tb(), n);
        CHECK(c.size() <= triangle_tb().covering(n + 2)->size());
        for (const auto& p : c) {
            auto e = exact(p);
            CHECK(in_triangle(e[0], e[1]));
        }
    }
    Point x = {sqrt3(), CReal(d(1, -3))};
    for (std::int64_t n = 0; n < 8; ++n)
        for (const auto& p : tb_centered(singleton_tb(x), n))
            CHECK(max_norm_dist(p, x).approx(n + 6).hi <= Dyadic::pow2(-(n + 2)));

    // a set with neither centered coverings nor a hierarchy
    TBSet img = tb_image([](const Point& p) { return p; }, [](std::int64_t n) { return n; },
                         finite_tb({{0, 0}, {1, 1}}), 2);
    for (std::int64_t n = 0; n < 4; ++n) {
        auto c = tb_centered(img, n);
        CHECK_FALSE(c.empty());
        for (const auto& p : c) {
            Interval a = max_norm_dist(p, pt(0, 0)).approx(20), b = max_norm_dist(p, pt(1, 1)).approx(20);
            CHECK(min(a.lo, b.lo) <= Dyadic::pow2(-18));
        }
    }
}

TEST_CASE("located choice") {
    Point x = pt(d(3, -3), -2);
    Point c = tb_choice(singleton_tb(x));
    CHECK(max_norm_dist(c, x).approx(21).hi <= Dyadic::pow2(-20));

    Point t = tb_choice(triangle_tb());
    Dyadic eps = Dyadic::pow2(-20);
    Interval tx = t[0].approx(21), ty = t[1].approx(21);
    CHECK(tx.hi >= -eps);
    CHECK(ty.hi >= -eps);
    CHECK(tx.lo + ty.lo <= Dyadic(1) + eps);
    CHECK(near(tb_dist(triangle_tb(), t), 0, 12));

    Point two = tb_choice(finite_tb({{0, 0}, {1, 1}}));
    Interval a = max_norm_dist(two, pt(0, 0)).approx(21), b = max_norm_dist(two, pt(1, 1)).approx(21);
    CHECK(min(a.hi, b.hi) <= eps);

    Point img = tb_choice(tb_image([](const Point& p) { return p; }, [](std::int64_t n) { return n; },
                                   finite_tb({{0, 0}, {1, 1}}), 2));
    a = max_norm_dist(img, pt(0, 0)).approx(21), b = max_norm_dist(img, pt(1, 1)).approx(21);
    CHECK(min(a.hi, b.hi) <= eps);
}

TEST_CASE("finite Hausdorff distance") {
    FinitePointSet s{pt(0, 0), pt(1, 0)};
    CHECK(near(hausdorff_finite(s, s), 0, 20));
    CHECK(near(hausdorff_finite({pt(0, 0)}, {pt(3, 4)}), 4, 20));
    CHECK(near(hausdorff_finite(s, {pt(0, 0)}), 1, 20));
    CHECK_THROWS(hausdorff_finite({}, s));

    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> m(-100, 100);
    std::uniform_int_distribution<int> e(-6, 2), size(1, 8), dim(1, 3);
    for (int t = 0; t < 200; ++t) {
        int dm = dim(rng);
        auto gen = [&] {
            std::vector<std::vector<Dyadic>> pts(static_cast<std::size_t>(size(rng)));
            for (auto& p : pts)
                for (int i = 0; i < dm; ++i) p.push_back(d(m(rng), e(rng)));
            return pts;
        };
        auto a = gen(), b = gen();
        Dyadic oracle = hausdorff_brute(a, b);
        CHECK(hausdorff_exact(a, b) == oracle);
        FinitePointSet fa, fb;
        for (const auto& p : a) fa.push_back(make_point(p));
        for (const auto& p : b) fb.push_back(make_point(p));
        CHECK(hausdorff_finite(fa, fb).approx(0) == Interval(oracle));
    }
    // non-exact points
    FinitePointSet r{Point{sqrt3(), CReal(0)}};
    CHECK(hausdorff_finite(r, {pt(0, 0)}).approx(30).intersects(sqrt3().approx(30)));
}

TEST_CASE("Hausdorff distance of totally bounded sets") {
    for (std::int64_t p = 0; p <= 12; p += 3) CHECK(near(hausdorff_tb(triangle_tb(), triangle_tb()), 0, p));
    CHECK(near(hausdorff_tb(singleton_tb(pt(0, 0)), singleton_tb(pt(1, 0))), 1, 12));
    TBSet shifted = tb_affine(1, pt(1, 0), triangle_tb());
    CHECK(near(hausdorff_tb(triangle_tb(), shifted), 1, 5));
    CHECK(near(hausdorff_tb(shifted, triangle_tb()), 1, 5));
    CHECK_THROWS(hausdorff_tb(empty_tb(2), triangle_tb()));
    // irrational centers; every point moves by exactly 1 and the left vertex
    // has no partner closer than 1
    CHECK(near(hausdorff_tb(sierpinski_tb(), tb_affine(1, pt(1, 0), sierpinski_tb())), 1, 5));
    CHECK(near(hausdorff_tb(triangle_tb(), tb_affine(1, pt(1, 0), triangle_tb())), 1, 7));

    // metric laws on random finite sets
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<long> m(-16, 16);
    std::uniform_int_distribution<int> size(1, 4);
    auto gen = [&] {
        std::vector<std::vector<Dyadic>> pts(static_cast<std::size_t>(size(rng)));
        for (auto& p : pts) p = {d(m(rng), -3), d(m(rng), -3)};
        return pts;
    };
    const std::int64_t p = 10;
    const auto eff = static_cast<Effort>(p + 1);
    for (int t = 0; t < 10; ++t) {
        auto a = gen(), b = gen(), c = gen();
        TBSet ta = finite_tb(a), tb = finite_tb(b), tc = finite_tb(c);
        CHECK(near(hausdorff_tb(ta, finite_tb(a)), 0, p));
        Interval ab = hausdorff_tb(ta, tb).approx(eff), ba = hausdorff_tb(tb, ta).approx(eff);
        CHECK((ab.lo - ba.hi).abs() <= Dyadic::pow2(-p) + Dyadic::pow2(-p));
        Interval ac = hausdorff_tb(ta, tc).approx(eff), bc = hausdorff_tb(tb, tc).approx(eff);
        CHECK(ac.lo <= ab.hi + bc.hi + Dyadic(3) * Dyadic::pow2(-p));
        CHECK(near(hausdorff_tb(ta, tb), hausdorff_exact(a, b), p));
    }
}

TEST_CASE("set limits") {
    TBSet lim = tb_limit([](std::size_t) { return triangle_tb(); });
    CHECK(near(hausdorff_tb(lim, triangle_tb()), 0, 5));

    TBSet pl = tb_limit([](std::size_t n) { return singleton_tb(pt(Dyadic(1) - Dyadic::pow2(-static_cast<long>(n)), 0)); });
    CHECK(near(hausdorff_tb(pl, singleton_tb(pt(1, 0))), 0, 10));
    CHECK(near(tb_dist(pl, pt(1, 0)), 0, 12));
    // contract d_H(K_n, lim) <= 2^-n
    for (std::size_t n = 0; n < 5; ++n) {
        TBSet kn = singleton_tb(pt(Dyadic(1) - Dyadic::pow2(-static_cast<long>(n)), 0));
        CHECK(hausdorff_tb(kn, pl).approx(14).lo <= Dyadic::pow2(-static_cast<long>(n)) + Dyadic::pow2(-12));
    }
    auto audit = tb_limit_audit([](std::size_t n) { return singleton_tb(pt(Dyadic::pow2(-static_cast<long>(n)), 0)); }, 4, 12);
    REQUIRE(audit.size() == 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK((audit[i][j] - (Dyadic::pow2(-static_cast<long>(i)) - Dyadic::pow2(-static_cast<long>(j))).abs()).abs() <=
                  Dyadic::pow2(-10));
}

TEST_CASE("union") {
    TBSet s = singleton_tb(pt(d(3, -2), 0));
    for (std::int64_t n = 0; n < 6; ++n) CHECK(centers_of(tb_union(s, empty_tb(2)), n) == centers_of(s, n));
    TBSet two = tb_union(singleton_tb(pt(0, 0)), singleton_tb(pt(1, 1)));
    for (std::int64_t n = 0; n < 6; ++n) CHECK(two.covering(n)->size() == 2);
    // exact duplicates are pruned
    CHECK(tb_union(triangle_tb(), triangle_tb()).covering(3)->size() == triangle_tb().covering(3)->size());

    TBSet both = tb_union(triangle_tb(), tb_affine(1, pt(1, 0), triangle_tb()));
    for (std::int64_t n = 0; n < 4; ++n)
        check_covering(both, n, 3, -1, 2, [](const Dyadic& x, const Dyadic& y) {
            return in_triangle(x, y) || in_triangle(x - 1, y);
        });
}

TEST_CASE("affine images") {
    for (std::int64_t n = 0; n < 5; ++n)
        CHECK(centers_of(tb_affine(1, pt(0, 0), triangle_tb()), n) == centers_of(triangle_tb(), n));
    TBSet moved = tb_affine(d(1, -1), pt(1, 0), singleton_tb(pt(0, 0)));
    CHECK(near(hausdorff_tb(moved, singleton_tb(pt(1, 0))), 0, 12));
    TBSet big = tb_affine(2, pt(0, 0), triangle_tb());
    CHECK(near(tb_dist(big, pt(4, 0)), 2, 16));
    CHECK_THROWS_AS(tb_affine(0, pt(0, 0), triangle_tb()), std::invalid_argument);
    CHECK_THROWS_AS(tb_affine(-1, pt(0, 0), triangle_tb()), std::invalid_argument);
    for (std::int64_t n = 0; n < 4; ++n)
        check_covering(big, n, 2, 0, 2, [](const Dyadic& x, const Dyadic& y) {
            return x.sign() >= 0 && y.sign() >= 0 && x + y <= 2;
        });
    TBSet small = tb_affine(d(3, -2), pt(d(-1, -1), 0), triangle_tb());
    for (std::int64_t n = 0; n < 5; ++n)
        check_covering(small, n, 4, -1, 1, [](const Dyadic& x, const Dyadic& y) {
            Dyadic u = x + d(1, -1);
            return u.sign() >= 0 && y.sign() >= 0 && u + y <= d(3, -2);
        });
}

TEST_CASE("continuous images") {
    TBSet id = tb_image([](const Point& p) { return p; }, [](std::int64_t n) { return n; }, triangle_tb(), 2);
    CHECK(near(hausdorff_tb(id, triangle_tb()), 0, 5));

    TBSet shear = tb_image([](const Point& p) { return Point{p[0] + p[1], p[1]}; },
                           [](std::int64_t n) { return n + 1; }, triangle_tb(), 2);
    for (std::int64_t n = 0; n < 4; ++n)
        check_covering(shear, n, 3, 0, 1, [](const Dyadic& u, const Dyadic& v) {
            // (u, v) = (x + y, y) with (x, y) in the triangle
            return v.sign() >= 0 && u >= v && u <= 1;
        });

    TBSet constant = tb_image([](const Point&) { return pt(2, 3); }, [](std::int64_t) { return 0; }, triangle_tb(), 2);
    CHECK(near(hausdorff_tb(constant, singleton_tb(pt(2, 3))), 0, 10));
}

TEST_CASE("triangle distance timing") {
    auto start = std::chrono::steady_clock::now();
    CHECK(near(tb_dist(triangle_tb(), pt(d(3, -2), d(3, -2))), d(1, -2), 16));
    CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(2));
}
