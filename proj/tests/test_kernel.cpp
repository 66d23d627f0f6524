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

#include "certoset/kernel.hpp"

using namespace certoset;
using C = Kleenean::Const;

TEST_CASE("constants") {
    CHECK(Kleenean::constant(C::True).query(0) == Truth::True);
    CHECK(Kleenean::constant(C::Bottom).query(1000000) == Truth::Unknown);
    CHECK(Kleenean::constant(C::False).query(3) == Truth::False);
    CHECK(Kleenean().query(5) == Truth::Unknown);
}

TEST_CASE("kleene logic tables") {
    auto t = Kleenean::constant(C::True), f = Kleenean::constant(C::False), b = Kleenean::bottom();
    CHECK(k_logic(LogicOp::Or, b, t).query(0) == Truth::True);
    CHECK(k_logic(LogicOp::And, t, t).query(0) == Truth::True);
    CHECK(k_logic(LogicOp::Neg, b).query(9) == Truth::Unknown);
    CHECK((f && b).query(4) == Truth::False);
    CHECK((t || b).query(4) == Truth::True);
    CHECK((t && b).query(4) == Truth::Unknown);
    CHECK((f || b).query(4) == Truth::Unknown);
    auto late = Kleenean::committed_at(6, true);
    CHECK((late || b).query(5) == Truth::Unknown);
    CHECK((late || b).query(6) == Truth::True);
    CHECK((!late).query(6) == Truth::False);
    CHECK((!late).query(2) == Truth::Unknown);
}

TEST_CASE("countable or") {
    auto all_bottom = k_countable_or([](std::size_t) { return Kleenean::bottom(); });
    for (Effort e : {0, 1, 10, 200}) CHECK(all_bottom.query(e) == Truth::Unknown);

    auto at5 = k_countable_or([](std::size_t i) { return i == 5 ? Kleenean::committed_at(9, true) : Kleenean::bottom(); });
    CHECK(at5.query(8) == Truth::Unknown);
    CHECK(at5.query(9) == Truth::True);

    auto idx5 = k_countable_or([](std::size_t i) { return i == 5 ? Kleenean::from_bool(true) : Kleenean::bottom(); });
    CHECK(idx5.query(4) == Truth::Unknown);
    CHECK(idx5.query(5) == Truth::True);

    auto mixed = k_countable_or([](std::size_t i) { return Kleenean::from_bool(i == 1); });
    CHECK(mixed.query(0) == Truth::Unknown);
    CHECK(mixed.query(1) == Truth::True);
}

TEST_CASE("sierpinski never answers false") {
    Sierpinski s(Kleenean::constant(C::False));
    CHECK(s.query(10) == Truth::Unknown);
    Sierpinski late(Kleenean::committed_at(3, false));
    CHECK(late.query(7) == Truth::Unknown);
    CHECK(Sierpinski::top().is_true_at(0));
    CHECK((Sierpinski::top() && Sierpinski::bottom()).query(3) == Truth::Unknown);
    CHECK((Sierpinski::top() || Sierpinski::bottom()).query(3) == Truth::True);
}

TEST_CASE("select binary") {
    CHECK(select_binary(Kleenean::from_bool(true), Kleenean::bottom()) == Side::Left);
    CHECK(select_binary(Kleenean::bottom(), Kleenean::committed_at(7, true)) == Side::Right);
    // both valid; the alternating schedule fixes Right here
    Side s = select_binary(Kleenean::committed_at(3, true), Kleenean::committed_at(2, true));
    CHECK(s == Side::Right);
    ScopedEffortCeiling guard(50);
    CHECK_THROWS_AS(select_binary(Kleenean::bottom(), Kleenean::from_bool(false)), EffortCeilingExceeded);
}

TEST_CASE("countable select schedule") {
    CHECK(countable_select([](std::size_t i) { return Kleenean::from_bool(i == 0); }) == 0);
    CHECK(countable_select([](std::size_t i) { return Kleenean::from_bool(i == 42); }) == 42);
    auto seq = [](std::size_t i) {
        if (i == 2) return Kleenean::committed_at(1, true);
        if (i == 0) return Kleenean::committed_at(100, true);
        return Kleenean::bottom();
    };
    CHECK(countable_select(seq) == 2);
    CHECK(countable_select(seq) == 2);
    ScopedEffortCeiling guard(30);
    CHECK_THROWS_AS(countable_select([](std::size_t) { return Kleenean::bottom(); }), EffortCeilingExceeded);
}

TEST_CASE("effort ceiling guard restores") {
    Effort before = effort_ceiling();
    {
        ScopedEffortCeiling g(7);
        CHECK(effort_ceiling() == 7);
    }
    CHECK(effort_ceiling() == before);
    CHECK(before == (Effort{1} << 24));
}

TEST_CASE("nat sequence") {
    auto f = k_to_nat_seq(Kleenean::from_bool(true));
    CHECK(f(0) == 1);
    auto g = k_to_nat_seq(Kleenean::bottom());
    for (Effort n = 0; n < 50; ++n) CHECK(g(n) == 0);
    auto h = k_to_nat_seq(Kleenean::committed_at(5, true));
    CHECK(h(4) == 0);
    CHECK(h(5) == 1);
}

TEST_CASE("first true effort") {
    CHECK(first_true_effort(Kleenean::committed_at(37, true), 1000) == Effort{37});
    CHECK(first_true_effort(Kleenean::from_bool(true), 10) == Effort{0});
    CHECK_FALSE(first_true_effort(Kleenean::committed_at(37, true), 36).has_value());
    CHECK(first_true_effort(Kleenean::committed_at(36, true), 36) == Effort{36});
    CHECK_FALSE(first_true_effort(Kleenean::bottom(), 1 << 20).has_value());
}

TEST_CASE("committed answers never change, any query order") {
    std::mt19937_64 rng(7);
    std::vector<Kleenean> pool;
    for (int i = 0; i < 20; ++i) {
        Effort e = rng() % 30;
        bool v = rng() % 2;
        pool.push_back(Kleenean::committed_at(e, v));
    }
    for (int i = 0; i < 20; ++i) {
        const auto& a = pool[rng() % pool.size()];
        const auto& b = pool[rng() % pool.size()];
        pool.push_back(rng() % 2 ? (a && b) : (a || !b));
    }
    int violations = 0;
    for (int t = 0; t < 2000; ++t) {
        const auto& k = pool[rng() % pool.size()];
        Effort n = rng() % 60, m = n + rng() % 60;
        Truth later = k.query(m), earlier = k.query(n);
        if (earlier != Truth::Unknown && earlier != later) ++violations;
    }
    CHECK(violations == 0);
}
