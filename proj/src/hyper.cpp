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

#include "certoset/hyper.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

#include "certoset/detail/geometry.hpp"

namespace certoset {

namespace {

// floor(log2(e + 1))
std::int64_t log2_floor(Effort e) {
    std::int64_t l = 0;
    for (Effort v = e + 1; v > 1; v >>= 1) ++l;
    return l;
}

// Precision used by the set testers at effort e: unbounded but slow, so that
// high efforts stay affordable.
Effort tester_precision(Effort e) { return static_cast<Effort>(2 * log2_floor(e) + 4); }

Sierpinski in_ball(const Ball& b, const Point& x) {
    return lt_semidec(max_norm_dist(x, b.center), CReal::pow2(-b.level));
}

class SpyNode final : public CReal::Node {
public:
    SpyNode(CReal x, std::shared_ptr<std::atomic<Effort>> hw) : x_(std::move(x)), hw_(std::move(hw)) {}
    Interval raw(Effort j) const override {
        Effort seen = hw_->load();
        while (seen < j && !hw_->compare_exchange_weak(seen, j)) {
        }
        Dyadic mid = x_.approx(j + 1).midpoint();
        Dyadic r = Dyadic::pow2(-static_cast<std::int64_t>(j));
        return {mid - r, mid + r};
    }

private:
    CReal x_;
    std::shared_ptr<std::atomic<Effort>> hw_;
};

}  // namespace

OpenSet OpenSet::empty() {
    OpenSet u(Enumeration([](std::size_t) { return std::optional<Ball>(); }));
    u.size_ = 0;
    return u;
}

OpenSet OpenSet::from_list(std::vector<Ball> balls) {
    auto list = std::make_shared<const std::vector<Ball>>(std::move(balls));
    OpenSet u(Enumeration([list](std::size_t i) { return i < list->size() ? std::optional<Ball>((*list)[i]) : std::nullopt; }));
    u.size_ = list->size();
    return u;
}

Sierpinski open_member(const OpenSet& u, const Point& x) {
    if (u.size_hint() == std::size_t{0}) return Sierpinski::bottom();
    return s_countable_or([u, x](std::size_t i) {
        auto b = u.ball(i);
        return b ? in_ball(*b, x) : Sierpinski::bottom();
    });
}

OpenSet open_union_countable(std::function<OpenSet(std::size_t)> us) {
    struct Parts {
        std::function<OpenSet(std::size_t)> us;
        std::mutex mu;
        std::map<std::size_t, OpenSet> cache;
        OpenSet at(std::size_t a) {
            std::lock_guard lock(mu);
            auto it = cache.find(a);
            if (it == cache.end()) it = cache.emplace(a, us(a)).first;
            return it->second;
        }
    };
    auto parts = std::make_shared<Parts>();
    parts->us = std::move(us);
    return OpenSet([parts](std::size_t i) {
        auto [a, b] = cantor_unpair(i);
        return parts->at(a).ball(b);
    });
}

PointPredicate open_intersect(const OpenSet& u1, const OpenSet& u2) {
    return [u1, u2](const Point& x) { return open_member(u1, x) && open_member(u2, x); };
}

std::uint64_t open_choice(const OpenSet& u, const MetricSpace& space) {
    // candidates for ball b: the dense points nearest its center at
    // precision p = 0, 1, ..., each tested with the strict half-radius margin
    auto pick = [&](std::size_t k) -> std::optional<std::uint64_t> {
        auto [b, p] = cantor_unpair(k);
        auto ball = u.ball(b);
        if (!ball || p > 62) return std::nullopt;
        try {
            return dense_index_near(ball->center, static_cast<std::int64_t>(p));
        } catch (const std::overflow_error&) {
            return std::nullopt;
        }
    };
    auto k = countable_select([&](std::size_t k) {
        auto i = pick(k);
        if (!i) return Kleenean::bottom();
        auto ball = u.ball(cantor_unpair(k).first);
        return lt_semidec(space.distance(space.dense(*i), ball->center), CReal::pow2(-ball->level - 1)).kleenean();
    });
    return *pick(k);
}

ClosedSet closed_union(const ClosedSet& a, const ClosedSet& b) {
    return {[a, b](const Point& x) { return a.complement_member(x) && b.complement_member(x); }};
}

ClosedSet closed_countable_intersection(std::function<ClosedSet(std::size_t)> cs) {
    return {[cs = std::move(cs)](const Point& x) {
        return s_countable_or([cs, x](std::size_t i) { return cs(i).complement_member(x); });
    }};
}

ClosedSet closed_ball(const Point& center, std::int64_t level) {
    return {[center, level](const Point& x) { return lt_semidec(CReal::pow2(-level), max_norm_dist(x, center)); }};
}

ClosedSet closed_half_space(std::size_t axis, const CReal& bound, bool below) {
    return {[axis, bound, below](const Point& x) {
        return below ? lt_semidec(bound, x.at(axis)) : lt_semidec(x.at(axis), bound);
    }};
}

Sierpinski compact_subset_semidec(const TBSet& k, const OpenSet& u, std::int64_t level_cap) {
    if (tb_is_empty(k)) return Sierpinski::top();
    if (u.size_hint() == std::size_t{0}) return Sierpinski::bottom();
    struct State {
        State(TBSet s, OpenSet o, std::int64_t c) : set(std::move(s)), open(std::move(o)), cap(c) {}
        TBSet set;
        OpenSet open;
        std::int64_t cap;
        std::mutex mu;
        std::map<std::int64_t, std::shared_ptr<const std::vector<Point>>> centered;
        std::vector<Ball> balls;
        bool balls_done = false;

        std::shared_ptr<const std::vector<Point>> centers(std::int64_t level) {
            std::lock_guard lock(mu);
            auto it = centered.find(level);
            if (it == centered.end())
                it = centered.emplace(level, std::make_shared<const std::vector<Point>>(tb_centered(set, level))).first;
            return it->second;
        }

        std::vector<Ball> prefix(std::size_t count) {
            std::lock_guard lock(mu);
            if (auto hint = open.size_hint()) count = std::min(count, *hint);
            // enumerate slots 0..count-1, skipping empty ones
            while (!balls_done && next_slot < count) {
                if (auto b = open.ball(next_slot)) balls.push_back(*b), slot_of.push_back(next_slot);
                ++next_slot;
            }
            std::vector<Ball> out;
            for (std::size_t i = 0; i < balls.size() && slot_of[i] < count; ++i) out.push_back(balls[i]);
            return out;
        }
        std::size_t next_slot = 0;
        std::vector<std::size_t> slot_of;
    };
    auto st = std::make_shared<State>(k, u, level_cap);
    return Sierpinski::trusted(Kleenean::from_monotone([st](Effort e) {
        std::int64_t kmax = std::min(log2_floor(e) / 2, st->cap);
        Effort q = tester_precision(e);
        std::vector<Ball> balls = st->prefix(static_cast<std::size_t>(std::min<Effort>(e, 1u << 20) + 1));
        if (balls.empty()) return Truth::Unknown;
        for (std::int64_t level = 0; level <= kmax; ++level) {
            Dyadic margin = Dyadic::pow2(-level);
            // x << B(c_i, n_i): d(x, c_i) < 2^-n_i - 2^-level
            std::vector<Dyadic> room;
            for (const auto& b : balls) room.push_back(Dyadic::pow2(-b.level) - margin);
            auto centers = st->centers(level);
            bool all = true;
            for (const auto& x : *centers) {
                bool inside = false;
                for (std::size_t i = 0; i < balls.size() && !inside; ++i)
                    inside = room[i].sign() > 0 && detail::dist_interval(x, balls[i].center, q).hi < room[i];
                if (!inside) {
                    all = false;
                    break;
                }
            }
            if (all) return Truth::True;
        }
        return Truth::Unknown;
    }));
}

Sierpinski overt_intersects_semidec(const TBSet& v, const OpenSet& u) {
    if (tb_is_empty(v)) return Sierpinski::bottom();
    Sierpinski inner = s_countable_or([v, u](std::size_t i) {
        auto b = u.ball(i);
        if (!b) return Sierpinski::bottom();
        return lt_semidec(tb_dist(v, b->center), CReal::pow2(-b->level));
    });
    return Sierpinski::trusted(
        Kleenean::from_monotone([inner](Effort e) { return inner.query(tester_precision(e)); }));
}

SpyPoint::SpyPoint(const Point& x) : high_water_(std::make_shared<std::atomic<Effort>>(0)) {
    for (const auto& c : x) spied_.emplace_back(std::make_shared<SpyNode>(c, high_water_));
}

Effort SpyPoint::high_water() const { return high_water_->load(); }

std::int64_t modulus_of_continuity(const PointPredicate& f, const Point& x) {
    SpyPoint spy(x);
    Sierpinski s = f(spy.point());
    for (Effort e = 0;; ++e) {
        if (e > effort_ceiling()) throw EffortCeilingExceeded("modulus_of_continuity", effort_ceiling());
        if (s.query(e) == Truth::True) return static_cast<std::int64_t>(spy.high_water()) + 1;
    }
}

const std::vector<ModulusExample>& modulus_corpus() {
    static const std::vector<ModulusExample> corpus = [] {
        using Exact = std::function<bool(const Dyadic&, const Dyadic&)>;
        auto inside = [](const Dyadic& x, const Dyadic& y, const Dyadic& cx, const Dyadic& cy, std::int64_t level) {
            return max((x - cx).abs(), (y - cy).abs()) < Dyadic::pow2(-level);
        };
        auto pt = [](const Dyadic& x, const Dyadic& y) { return make_point({x, y}); };
        const Dyadic half = Dyadic::pow2(-1);

        std::vector<std::pair<ModulusExample, Exact>> maps;
        maps.push_back({{"half_plane", [](const Point& y) { return lt_semidec(y[0], CReal(1)); }, {}},
                        [](const Dyadic& x, const Dyadic&) { return x < 1; }});
        maps.push_back({{"product", [](const Point& y) { return lt_semidec(y[0] * y[1], CReal(Dyadic::pow2(-2))); }, {}},
                        [](const Dyadic& x, const Dyadic& y) { return x * y < Dyadic::pow2(-2); }});
        // 27/16 < sqrt3
        maps.push_back({{"disc_sqrt3", [](const Point& y) { return lt_semidec(y[0] * y[0] + y[1] * y[1], sqrt3()); }, {}},
                        [](const Dyadic& x, const Dyadic& y) { return x * x + y * y < Dyadic(mpz_class(27), -4); }});
        OpenSet three = OpenSet::from_list({{pt(0, 0), 1}, {pt(half, half), 2}, {pt(-1, half), 1}});
        maps.push_back({{"ball_union", [three](const Point& y) { return open_member(three, y); }, {}},
                        [=](const Dyadic& x, const Dyadic& y) {
                            return inside(x, y, 0, 0, 1) || inside(x, y, half, half, 2) || inside(x, y, -1, half, 1);
                        }});
        maps.push_back({{"lens", open_intersect(OpenSet::from_list({{pt(0, 0), 0}}), OpenSet::from_list({{pt(half, 0), 0}})), {}},
                        [=](const Dyadic& x, const Dyadic& y) { return inside(x, y, 0, 0, 0) && inside(x, y, half, 0, 0); }});

        // grid (a/8, b/8), a, b in [-12, 12], visited in a fixed scrambled order
        std::vector<ModulusExample> out;
        for (auto& [ex, exact] : maps) {
            for (long t = 0; t < 625 && ex.base_points.size() < 20; ++t) {
                long k = (t * 263) % 625;
                Dyadic x(mpz_class(k / 25 - 12), -3), y(mpz_class(k % 25 - 12), -3);
                if (exact(x, y)) ex.base_points.push_back(pt(x, y));
            }
            out.push_back(std::move(ex));
        }
        return out;
    }();
    return corpus;
}

}  // namespace certoset
