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

// Exact reals as effort-indexed interval sequences.
//
// x.approx(n) is an interval of width <= 2^(1-n) containing x.  Each CReal
// memoizes approx(n) as the intersection of the node's raw intervals at
// efforts 0..n (or raw(n) alone for isotone nodes), so approx(m) is contained
// in approx(n) whenever m >= n and no answer depends on the order in which
// efforts were requested.  This
// nesting is what makes every comparison built on top of it committed.

#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "certoset/interval.hpp"
#include "certoset/kernel.hpp"

namespace certoset {

class CReal {
public:
    /// Node of the expression graph.  raw(n) must contain the value and have
    /// width <= 2^(1-n); the CReal handle takes care of nesting.
    class Node {
    public:
        virtual ~Node() = default;
        virtual Interval raw(Effort n) const = 0;
        /// Exact value, if the node is a known dyadic.
        virtual const Dyadic* exact() const { return nullptr; }
        /// raw(m) is inside raw(n) for m >= n whenever the operands are
        /// nested, e.g. isotone interval ops on operands at efforts that grow
        /// with n.  Such nodes skip the intersection chain.
        virtual bool isotone() const { return false; }

    private:
        friend class CReal;
        struct Memo {
            std::mutex mu;
            std::vector<Interval> chain;         // approx(0), approx(1), ...
            std::map<Effort, Interval> isotone;  // raw(n), for isotone nodes
        };
        // allocated on first use, so exact constants stay small
        mutable std::once_flag once_;
        mutable std::unique_ptr<Memo> memo_;
    };

    /// Zero.
    CReal();
    CReal(Dyadic d);  // NOLINT(google-explicit-constructor)
    CReal(long v) : CReal(Dyadic(v)) {}  // NOLINT(google-explicit-constructor)
    explicit CReal(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    /// 2^e
    static CReal pow2(std::int64_t e) { return CReal(Dyadic::pow2(e)); }

    /// Sequence given directly by an interval function meeting the width
    /// and containment contract.
    static CReal from_intervals(std::function<Interval(Effort)> fn);
    /// Same, for a deterministic fn with fn(m) inside fn(n) for m >= n.
    static CReal from_isotone_intervals(std::function<Interval(Effort)> fn);

    /// p/q by exact integer division; exact when q is a power of two.
    static CReal from_rational(const mpz_class& p, const mpz_class& q);

    Interval approx(Effort n) const;
    const Dyadic* exact() const { return node_->exact(); }

    /// Same handle: the two reals are the same object.
    bool same(const CReal& o) const { return node_ == o.node_; }
    /// Handle identity, usable as a hash key.
    const void* id() const { return node_.get(); }

private:
    std::shared_ptr<const Node> node_;
};

CReal operator+(const CReal& x, const CReal& y);
CReal operator-(const CReal& x, const CReal& y);
CReal operator*(const CReal& x, const CReal& y);
CReal operator-(const CReal& x);
CReal abs(const CReal& x);
CReal max(const CReal& x, const CReal& y);
CReal min(const CReal& x, const CReal& y);

/// x * 2^k, exact scaling.
CReal scale2(const CReal& x, std::int64_t k);

enum class ArithOp { Add, Sub, Mul, Neg, Abs, Max, Min };
/// Dispatch form; `y` is ignored for the unary ops.
CReal arith(ArithOp op, const CReal& x, const CReal& y = CReal());

/// Eventually True iff x < y.
Sierpinski lt_semidec(const CReal& x, const CReal& y);

/// True if x <= y - 2^-n, False if y <= x - 2^-n, either inside the band.
bool soft_compare(const CReal& x, const CReal& y, std::int64_t n);

/// Dyadic d with |d - x| <= 2^-p: midpoint of approx(p+1) rounded to the
/// grid 2^-(p+1).
Dyadic approx_dyadic(const CReal& x, std::int64_t p);

/// Fast Cauchy sequence: |f(n) - f(m)| <= 2^-n + 2^-m.
using FastCauchy = std::function<CReal(std::size_t)>;

/// Limit of a fast Cauchy sequence; |limit - f(n)| <= 2^-n.
CReal limit(FastCauchy f);

/// Total extension of limit: equals limit(f) on fast Cauchy input and is
/// some real otherwise.  The walk freezes at the first step found too long.
CReal extended_limit(std::function<CReal(std::size_t)> f);

/// floor(sqrt(v)) for v >= 0, by integer Newton iteration.
mpz_class isqrt(const mpz_class& v);

/// sqrt(d) for a dyadic d >= 0, as the limit of truncated square roots.
CReal sqrt_dyadic(const Dyadic& d);

/// sqrt(3), shared instance.
const CReal& sqrt3();

}  // namespace certoset
