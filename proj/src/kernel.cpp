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

#include "certoset/kernel.hpp"

#include <atomic>
#include <mutex>
#include <vector>

namespace certoset {

std::string to_string(Truth t) {
    switch (t) {
        case Truth::True: return "True";
        case Truth::False: return "False";
        case Truth::Unknown: return "Unknown";
    }
    return "?";
}

struct Kleenean::Impl {
    std::optional<Const> constant;
    std::function<Truth(Effort)> fn;

    // Cache of the monotone query: every effort >= commit_effort answers
    // commit_value, every effort <= unknown_upto answers Unknown.
    mutable std::mutex mu;
    mutable bool committed = false;
    mutable Effort commit_effort = 0;
    mutable bool commit_value = false;
    mutable bool seen_unknown = false;
    mutable Effort unknown_upto = 0;

    Truth query(Effort n) const {
        if (constant) {
            switch (*constant) {
                case Const::True: return Truth::True;
                case Const::False: return Truth::False;
                case Const::Bottom: return Truth::Unknown;
            }
        }
        {
            std::lock_guard lock(mu);
            if (committed && n >= commit_effort) return commit_value ? Truth::True : Truth::False;
            if (seen_unknown && n <= unknown_upto) return Truth::Unknown;
        }
        // evaluated outside the lock: fn may query other Kleeneans
        Truth t = fn(n);
        std::lock_guard lock(mu);
        if (t == Truth::Unknown) {
            if (!seen_unknown || n > unknown_upto) unknown_upto = n;
            seen_unknown = true;
        } else if (!committed || n < commit_effort) {
            committed = true;
            commit_effort = n;
            commit_value = t == Truth::True;
        }
        return t;
    }
};

Kleenean::Kleenean() : Kleenean(bottom()) {}

Kleenean Kleenean::constant(Const v) {
    static const auto t = [] {
        auto p = std::make_shared<Impl>();
        p->constant = Const::True;
        return p;
    }();
    static const auto f = [] {
        auto p = std::make_shared<Impl>();
        p->constant = Const::False;
        return p;
    }();
    static const auto b = [] {
        auto p = std::make_shared<Impl>();
        p->constant = Const::Bottom;
        return p;
    }();
    switch (v) {
        case Const::True: return Kleenean(t);
        case Const::False: return Kleenean(f);
        case Const::Bottom: break;
    }
    return Kleenean(b);
}

Kleenean Kleenean::committed_at(Effort effort, bool value) {
    if (effort == 0) return from_bool(value);
    return from_monotone([effort, value](Effort n) {
        if (n < effort) return Truth::Unknown;
        return value ? Truth::True : Truth::False;
    });
}

Kleenean Kleenean::from_monotone(std::function<Truth(Effort)> query) {
    auto p = std::make_shared<Impl>();
    p->fn = std::move(query);
    return Kleenean(std::move(p));
}

Truth Kleenean::query(Effort n) const { return impl_->query(n); }

const Kleenean::Const* Kleenean::constant_value() const { return impl_->constant ? &*impl_->constant : nullptr; }

namespace {

Truth and3(Truth a, Truth b) {
    if (a == Truth::False || b == Truth::False) return Truth::False;
    if (a == Truth::True && b == Truth::True) return Truth::True;
    return Truth::Unknown;
}

Truth or3(Truth a, Truth b) {
    if (a == Truth::True || b == Truth::True) return Truth::True;
    if (a == Truth::False && b == Truth::False) return Truth::False;
    return Truth::Unknown;
}

Truth neg3(Truth a) {
    if (a == Truth::True) return Truth::False;
    if (a == Truth::False) return Truth::True;
    return Truth::Unknown;
}

Kleenean from_truth(Truth t) {
    switch (t) {
        case Truth::True: return Kleenean::constant(Kleenean::Const::True);
        case Truth::False: return Kleenean::constant(Kleenean::Const::False);
        case Truth::Unknown: break;
    }
    return Kleenean::bottom();
}

Truth const_truth(Kleenean::Const c) {
    switch (c) {
        case Kleenean::Const::True: return Truth::True;
        case Kleenean::Const::False: return Truth::False;
        case Kleenean::Const::Bottom: break;
    }
    return Truth::Unknown;
}

std::atomic<Effort> g_effort_ceiling{Effort{1} << 24};

void check_ceiling(Effort e, const char* what) {
    Effort c = effort_ceiling();
    if (e > c) throw EffortCeilingExceeded(what, c);
}

// Lazily built prefix of a Kleenean sequence.  Constant elements are
// resolved once: only the first constant True and the non-constant ("live")
// elements are ever queried again.
class SeqCache {
public:
    explicit SeqCache(KleeneanSeq seq) : seq_(std::move(seq)) {}

    struct View {
        std::optional<std::size_t> first_true;
        std::vector<std::pair<std::size_t, Kleenean>> live;  // ascending index
    };

    // State of elements 0..m.
    View upto(std::size_t m) {
        std::lock_guard lock(mu_);
        while (size_ <= m) {
            Kleenean k = seq_(size_);
            if (const auto* c = k.constant_value()) {
                if (*c == Kleenean::Const::True && !first_true_) first_true_ = size_;
            } else {
                live_.emplace_back(size_, std::move(k));
            }
            ++size_;
        }
        View v;
        if (first_true_ && *first_true_ <= m) v.first_true = first_true_;
        for (const auto& e : live_) {
            if (e.first > m) break;
            v.live.push_back(e);
        }
        return v;
    }

private:
    KleeneanSeq seq_;
    std::mutex mu_;
    std::size_t size_ = 0;
    std::optional<std::size_t> first_true_;
    std::vector<std::pair<std::size_t, Kleenean>> live_;
};

// Smallest index <= m whose element is True at effort m.
std::optional<std::size_t> first_true_at(SeqCache& cache, Effort m) {
    auto view = cache.upto(static_cast<std::size_t>(m));
    for (const auto& [i, k] : view.live) {
        if (view.first_true && i > *view.first_true) break;
        if (k.query(m) == Truth::True) return i;
    }
    return view.first_true;
}

}  // namespace

Kleenean k_logic(LogicOp op, const Kleenean& a, const Kleenean& b) {
    const auto* ca = a.constant_value();
    const auto* cb = b.constant_value();
    switch (op) {
        case LogicOp::Neg:
            if (ca) return from_truth(neg3(const_truth(*ca)));
            return Kleenean::from_monotone([a](Effort n) { return neg3(a.query(n)); });
        case LogicOp::And:
            if (ca && cb) return from_truth(and3(const_truth(*ca), const_truth(*cb)));
            if ((ca && *ca == Kleenean::Const::False) || (cb && *cb == Kleenean::Const::False))
                return Kleenean::from_bool(false);
            return Kleenean::from_monotone([a, b](Effort n) { return and3(a.query(n), b.query(n)); });
        case LogicOp::Or:
            if (ca && cb) return from_truth(or3(const_truth(*ca), const_truth(*cb)));
            if ((ca && *ca == Kleenean::Const::True) || (cb && *cb == Kleenean::Const::True))
                return Kleenean::from_bool(true);
            return Kleenean::from_monotone([a, b](Effort n) { return or3(a.query(n), b.query(n)); });
    }
    return Kleenean::bottom();
}

Kleenean operator&&(const Kleenean& a, const Kleenean& b) { return k_logic(LogicOp::And, a, b); }
Kleenean operator||(const Kleenean& a, const Kleenean& b) { return k_logic(LogicOp::Or, a, b); }
Kleenean operator!(const Kleenean& a) { return k_logic(LogicOp::Neg, a); }

Kleenean k_countable_or(KleeneanSeq seq) {
    auto cache = std::make_shared<SeqCache>(std::move(seq));
    return Kleenean::from_monotone(
        [cache](Effort m) { return first_true_at(*cache, m) ? Truth::True : Truth::Unknown; });
}

Sierpinski::Sierpinski(Kleenean k) {
    if (const auto* c = k.constant_value()) {
        inner_ = *c == Kleenean::Const::True ? k : Kleenean::bottom();
        return;
    }
    inner_ = Kleenean::from_monotone([k](Effort n) {
        Truth t = k.query(n);
        return t == Truth::False ? Truth::Unknown : t;
    });
}

Sierpinski Sierpinski::trusted(Kleenean k) {
    Sierpinski s;
    s.inner_ = std::move(k);
    return s;
}

Sierpinski operator&&(const Sierpinski& a, const Sierpinski& b) { return Sierpinski::trusted(a.inner_ && b.inner_); }
Sierpinski operator||(const Sierpinski& a, const Sierpinski& b) { return Sierpinski::trusted(a.inner_ || b.inner_); }

Sierpinski s_countable_or(SierpinskiSeq seq) {
    return Sierpinski::trusted(k_countable_or([seq = std::move(seq)](std::size_t i) { return seq(i).kleenean(); }));
}

Effort effort_ceiling() { return g_effort_ceiling.load(); }
void set_effort_ceiling(Effort e) { g_effort_ceiling.store(e); }

Side select_binary(const Kleenean& a, const Kleenean& b) {
    for (Effort e = 0;; ++e) {
        check_ceiling(e, "select_binary");
        if (a.query(e) == Truth::True) return Side::Left;
        if (b.query(e) == Truth::True) return Side::Right;
    }
}

std::size_t countable_select(KleeneanSeq seq) {
    SeqCache cache(std::move(seq));
    for (Effort m = 0;; ++m) {
        check_ceiling(m, "countable_select");
        if (auto i = first_true_at(cache, m)) return *i;
    }
}

std::function<unsigned(Effort)> k_to_nat_seq(Kleenean k) {
    return [k = std::move(k)](Effort n) { return k.query(n) == Truth::True ? 1u : 0u; };
}

std::optional<Effort> first_true_effort(const Kleenean& k, Effort limit) {
    // galloping then bisection; valid because answers are committed
    if (k.query(0) == Truth::True) return Effort{0};
    Effort lo = 0, hi = 1;
    for (;;) {
        if (hi >= limit) {
            hi = limit;
            if (k.query(hi) != Truth::True) return std::nullopt;
            break;
        }
        if (k.query(hi) == Truth::True) break;
        lo = hi;
        hi *= 2;
    }
    while (hi - lo > 1) {
        Effort mid = lo + (hi - lo) / 2;
        if (k.query(mid) == Truth::True)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

}  // namespace certoset
