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

#include "certoset/real.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace certoset {

namespace {

class ConstNode final : public CReal::Node {
public:
    explicit ConstNode(Dyadic d) : d_(std::move(d)) {}
    Interval raw(Effort) const override { return Interval(d_); }
    const Dyadic* exact() const override { return &d_; }

private:
    Dyadic d_;
};

class FnNode final : public CReal::Node {
public:
    FnNode(std::function<Interval(Effort)> fn, bool isotone) : fn_(std::move(fn)), isotone_(isotone) {}
    Interval raw(Effort n) const override { return fn_(n); }
    bool isotone() const override { return isotone_; }

private:
    std::function<Interval(Effort)> fn_;
    bool isotone_;
};

class RationalNode final : public CReal::Node {
public:
    RationalNode(mpz_class p, mpz_class q) : p_(std::move(p)), q_(std::move(q)) {}
    Interval raw(Effort n) const override {
        mpz_class num, lo, hi;
        mpz_mul_2exp(num.get_mpz_t(), p_.get_mpz_t(), n);
        mpz_fdiv_q(lo.get_mpz_t(), num.get_mpz_t(), q_.get_mpz_t());
        mpz_cdiv_q(hi.get_mpz_t(), num.get_mpz_t(), q_.get_mpz_t());
        auto e = -static_cast<std::int64_t>(n);
        return {Dyadic(lo, e), Dyadic(hi, e)};
    }

private:
    mpz_class p_, q_;
};

// operands at n+1: two widths of 2^-n
class AddNode final : public CReal::Node {
public:
    AddNode(CReal x, CReal y, bool sub) : x_(std::move(x)), y_(std::move(y)), sub_(sub) {}
    bool isotone() const override { return true; }
    Interval raw(Effort n) const override {
        Interval a = x_.approx(n + 1), b = y_.approx(n + 1);
        return sub_ ? a - b : a + b;
    }

private:
    CReal x_, y_;
    bool sub_;
};

// width-preserving unary and lattice ops: operands at n
class PointwiseNode final : public CReal::Node {
public:
    PointwiseNode(ArithOp op, CReal x, CReal y) : op_(op), x_(std::move(x)), y_(std::move(y)) {}
    bool isotone() const override { return true; }
    Interval raw(Effort n) const override {
        switch (op_) {
            case ArithOp::Neg: return -x_.approx(n);
            case ArithOp::Abs: return abs(x_.approx(n));
            case ArithOp::Max: return max(x_.approx(n), y_.approx(n));
            case ArithOp::Min: return min(x_.approx(n), y_.approx(n));
            default: break;
        }
        throw std::logic_error("PointwiseNode: unsupported op");
    }

private:
    ArithOp op_;
    CReal x_, y_;
};

// With |x|, |y| <= M_x, M_y and M_x + M_y + 1 <= 2^b, operands at n+b+3
// give a product of width <= 2^-(n+2); outward rounding to 2^-(n+2) adds at
// most 2^-(n+1).  Total < 2^(1-n).
class MulNode final : public CReal::Node {
public:
    MulNode(CReal x, CReal y) : x_(std::move(x)), y_(std::move(y)) {}
    bool isotone() const override { return true; }
    Interval raw(Effort n) const override {
        std::call_once(once_, [this] {
            Dyadic bound = x_.approx(0).magnitude() + y_.approx(0).magnitude() + Dyadic(1);
            Effort b = 0;
            while (Dyadic::pow2(static_cast<std::int64_t>(b)) < bound) ++b;
            boost_ = b + 3;
        });
        Effort p = n + boost_;
        return round_out(x_.approx(p) * y_.approx(p), static_cast<std::int64_t>(n) + 2);
    }

private:
    CReal x_, y_;
    mutable std::once_flag once_;
    mutable Effort boost_ = 0;
};

// approx(n) of x 2^k from x at n+k; below effort 0 the width 2^(1+k) is
// still <= 2^(1-n)
class ShiftNode final : public CReal::Node {
public:
    ShiftNode(CReal x, std::int64_t k) : x_(std::move(x)), k_(k) {}
    bool isotone() const override { return true; }
    Interval raw(Effort n) const override {
        std::int64_t p = static_cast<std::int64_t>(n) + k_;
        Interval iv = x_.approx(p < 0 ? 0 : static_cast<Effort>(p));
        return {iv.lo.shifted(k_), iv.hi.shifted(k_)};
    }

private:
    CReal x_;
    std::int64_t k_;
};

class LimitNode final : public CReal::Node {
public:
    explicit LimitNode(FastCauchy f) : f_(std::move(f)) {}
    Interval raw(Effort n) const override {
        CReal term = at(n + 1);
        return widen(term.approx(n + 1), Dyadic::pow2(-static_cast<std::int64_t>(n) - 1));
    }

private:
    CReal at(std::size_t k) const {
        {
            std::lock_guard lock(mu_);
            if (auto it = terms_.find(k); it != terms_.end()) return it->second;
        }
        CReal t = f_(k);
        std::lock_guard lock(mu_);
        return terms_.emplace(k, std::move(t)).first->second;
    }

    FastCauchy f_;
    mutable std::mutex mu_;
    mutable std::map<std::size_t, CReal> terms_;
};

}  // namespace

CReal::CReal() : CReal(Dyadic()) {}

CReal::CReal(Dyadic d) : node_(std::make_shared<ConstNode>(std::move(d))) {}

CReal CReal::from_intervals(std::function<Interval(Effort)> fn) {
    return CReal(std::make_shared<FnNode>(std::move(fn), false));
}

CReal CReal::from_isotone_intervals(std::function<Interval(Effort)> fn) {
    return CReal(std::make_shared<FnNode>(std::move(fn), true));
}

CReal CReal::from_rational(const mpz_class& p, const mpz_class& q) {
    if (q == 0) throw std::domain_error("from_rational: zero denominator");
    mpq_class r(p, q);
    r.canonicalize();
    Rational rr{r.get_num(), r.get_den()};
    if (rational_is_dyadic(rr)) return CReal(rational_to_dyadic(rr));
    return CReal(std::make_shared<RationalNode>(rr.num, rr.den));
}

Interval CReal::approx(Effort n) const {
    if (const Dyadic* e = node_->exact()) return Interval(*e);
    const Node& nd = *node_;
    std::call_once(nd.once_, [&nd] { nd.memo_ = std::make_unique<Node::Memo>(); });
    Node::Memo& memo = *nd.memo_;
    if (nd.isotone()) {
        {
            std::lock_guard lock(memo.mu);
            if (auto it = memo.isotone.find(n); it != memo.isotone.end()) return it->second;
        }
        Interval r = nd.raw(n);
        std::lock_guard lock(memo.mu);
        return memo.isotone.emplace(n, std::move(r)).first->second;
    }
    std::optional<Interval> prev;
    Effort k = 0;
    {
        std::lock_guard lock(memo.mu);
        if (n < memo.chain.size()) return memo.chain[n];
        k = memo.chain.size();
        if (k > 0) prev = memo.chain.back();
    }
    // approx(k) is raw(0) through raw(k) intersected, filled in order so the
    // result does not depend on which efforts were asked before; raw runs
    // outside the lock and a racing thread computes the same intervals
    for (;; ++k) {
        Interval r = nd.raw(k);
        if (prev) {
            if (!r.intersects(*prev))
                throw std::logic_error("inconsistent real: " + r.to_string() + " misses " + prev->to_string());
            r = intersect(r, *prev);
        }
        std::lock_guard lock(memo.mu);
        if (memo.chain.size() == k) memo.chain.push_back(r);
        prev = memo.chain[k];
        if (k == n) return *prev;
    }
}

CReal operator+(const CReal& x, const CReal& y) {
    if (x.exact() && y.exact()) return CReal(*x.exact() + *y.exact());
    return CReal(std::make_shared<AddNode>(x, y, false));
}

CReal operator-(const CReal& x, const CReal& y) {
    if (x.exact() && y.exact()) return CReal(*x.exact() - *y.exact());
    return CReal(std::make_shared<AddNode>(x, y, true));
}

CReal operator*(const CReal& x, const CReal& y) {
    if (x.exact() && y.exact()) return CReal(*x.exact() * *y.exact());
    return CReal(std::make_shared<MulNode>(x, y));
}

CReal operator-(const CReal& x) {
    if (x.exact()) return CReal(-*x.exact());
    return CReal(std::make_shared<PointwiseNode>(ArithOp::Neg, x, CReal()));
}

CReal abs(const CReal& x) {
    if (x.exact()) return CReal(x.exact()->abs());
    return CReal(std::make_shared<PointwiseNode>(ArithOp::Abs, x, CReal()));
}

CReal max(const CReal& x, const CReal& y) {
    if (x.exact() && y.exact()) return CReal(max(*x.exact(), *y.exact()));
    return CReal(std::make_shared<PointwiseNode>(ArithOp::Max, x, y));
}

CReal min(const CReal& x, const CReal& y) {
    if (x.exact() && y.exact()) return CReal(min(*x.exact(), *y.exact()));
    return CReal(std::make_shared<PointwiseNode>(ArithOp::Min, x, y));
}

CReal scale2(const CReal& x, std::int64_t k) {
    if (x.exact()) return CReal(x.exact()->shifted(k));
    if (k == 0) return x;
    return CReal(std::make_shared<ShiftNode>(x, k));
}

CReal arith(ArithOp op, const CReal& x, const CReal& y) {
    switch (op) {
        case ArithOp::Add: return x + y;
        case ArithOp::Sub: return x - y;
        case ArithOp::Mul: return x * y;
        case ArithOp::Neg: return -x;
        case ArithOp::Abs: return abs(x);
        case ArithOp::Max: return max(x, y);
        case ArithOp::Min: return min(x, y);
    }
    throw std::logic_error("arith: bad op");
}

Sierpinski lt_semidec(const CReal& x, const CReal& y) {
    if (x.exact() && y.exact()) return *x.exact() < *y.exact() ? Sierpinski::top() : Sierpinski::bottom();
    if (x.same(y)) return Sierpinski::bottom();
    return Sierpinski::trusted(Kleenean::from_monotone([x, y](Effort n) {
        return x.approx(n).hi < y.approx(n).lo ? Truth::True : Truth::Unknown;
    }));
}

bool soft_compare(const CReal& x, const CReal& y, std::int64_t n) {
    CReal eps = CReal::pow2(-n);
    return select_binary(lt_semidec(x, y + eps).kleenean(), lt_semidec(y, x + eps).kleenean()) == Side::Left;
}

Dyadic approx_dyadic(const CReal& x, std::int64_t p) {
    if (p < 0) throw std::invalid_argument("approx_dyadic: negative precision");
    return x.approx(static_cast<Effort>(p) + 1).midpoint().round_to(p + 1);
}

CReal limit(FastCauchy f) { return CReal(std::make_shared<LimitNode>(std::move(f))); }

CReal extended_limit(std::function<CReal(std::size_t)> f) {
    struct Walk {
        std::function<CReal(std::size_t)> f;
        std::mutex mu;
        std::vector<CReal> g;
        bool frozen = false;

        CReal at(std::size_t k) {
            std::lock_guard lock(mu);
            if (g.empty()) g.push_back(f(3));
            while (g.size() <= k) {
                std::size_t j = g.size() - 1;
                if (frozen) {
                    g.push_back(g.back());
                    continue;
                }
                CReal next = f(j + 4);
                CReal d = abs(g.back() - next);
                auto j64 = static_cast<std::int64_t>(j);
                Side s = select_binary(lt_semidec(d, CReal::pow2(-(j64 + 1))).kleenean(),
                                       lt_semidec(CReal::pow2(-(j64 + 2)), d).kleenean());
                if (s == Side::Left) {
                    g.push_back(std::move(next));
                } else {
                    frozen = true;
                    g.push_back(g.back());
                }
            }
            return g[k];
        }
    };
    auto walk = std::make_shared<Walk>();
    walk->f = std::move(f);
    return limit([walk](std::size_t k) { return walk->at(k); });
}

mpz_class isqrt(const mpz_class& v) {
    if (v < 0) throw std::domain_error("isqrt of negative value");
    if (v == 0) return 0;
    std::size_t bits = mpz_sizeinbase(v.get_mpz_t(), 2);
    mpz_class x;
    mpz_setbit(x.get_mpz_t(), (bits + 1) / 2);  // x >= sqrt(v)
    for (;;) {
        mpz_class y = (x + v / x) / 2;
        if (y >= x) return x;
        x = std::move(y);
    }
}

CReal sqrt_dyadic(const Dyadic& d) {
    if (d.sign() < 0) throw std::domain_error("sqrt of negative value " + d.to_string());
    if (d.is_zero()) return CReal();
    // isqrt(floor(d 4^k)) 2^-k lies in (sqrt(d) - 2^-k, sqrt(d)]
    return limit([d](std::size_t k) {
        auto k64 = static_cast<std::int64_t>(k);
        mpz_class scaled = d.shifted(2 * k64).floor_to(0).scaled_integer(0);
        return CReal(Dyadic(isqrt(scaled), -k64));
    });
}

const CReal& sqrt3() {
    static const CReal s = sqrt_dyadic(Dyadic(3));
    return s;
}

}  // namespace certoset
