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

// Totally bounded sets as per-level ball coverings.
//
// covering(n) lists centers c such that every point of the set lies within
// 2^-n of some c (closed balls, see README) and every ball meets the set.
// Coverings are memoized per level.
//
// Some constructions also expose a hierarchy of cells.  A cell owns a
// nonempty part of the set lying within `spread` of its center; children
// split the parent's part, have at most half its spread and keep their
// centers (and all descendants' centers) within the parent's spread.  The
// hierarchy lets distance and choice descend only where needed instead of
// materializing exponentially large coverings.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "certoset/space.hpp"

namespace certoset {

class TBSet {
public:
    struct Cell {
        Point center;
        Dyadic spread;
        std::vector<std::int64_t> key;
        /// Cell of the underlying set, for constructions that map cells.
        std::shared_ptr<const Cell> inner;
    };

    class Impl {
    public:
        virtual ~Impl() = default;
        virtual std::size_t dimension() const = 0;
        virtual std::vector<Point> compute_covering(std::int64_t n) const = 0;
        /// Covering centers are points of the set.
        virtual bool centered() const { return false; }
        virtual bool has_hierarchy() const { return false; }
        virtual std::vector<Cell> roots() const { return {}; }
        virtual std::vector<Cell> children(const Cell&) const { return {}; }

    private:
        friend class TBSet;
        mutable std::mutex mu_;
        mutable std::map<std::int64_t, std::shared_ptr<const std::vector<Point>>> cache_;
    };

    explicit TBSet(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

    /// Level-n centers; n >= 0.
    std::shared_ptr<const std::vector<Point>> covering(std::int64_t n) const;
    std::size_t dimension() const { return impl_->dimension(); }
    bool centered() const { return impl_->centered(); }
    bool has_hierarchy() const { return impl_->has_hierarchy(); }
    std::vector<Cell> roots() const { return impl_->roots(); }
    std::vector<Cell> children(const Cell& c) const { return impl_->children(c); }
    bool same(const TBSet& o) const { return impl_ == o.impl_; }

private:
    std::shared_ptr<const Impl> impl_;
};

using FinitePointSet = std::vector<Point>;
/// Uniform continuity modulus: d(x,y) < 2^-omega(n) implies d(fx,fy) < 2^-n.
using ModulusFn = std::function<std::int64_t(std::int64_t)>;
using PointMap = std::function<Point(const Point&)>;

TBSet empty_tb(std::size_t dimension);
TBSet singleton_tb(Point x);

/// covering(0) is empty.
bool tb_is_empty(const TBSet& a);

/// Level-n covering whose centers are points of the set; throws on empty.
std::vector<Point> tb_centered(const TBSet& a, std::int64_t n);

/// d(x, A); throws std::domain_error on empty A.
CReal tb_dist(const TBSet& a, const Point& x);

/// A point of A; throws std::domain_error on empty A.
Point tb_choice(const TBSet& a);

/// Cells with spread <= 2^-n, obtained by descending from the roots.
std::vector<TBSet::Cell> tb_frontier(const TBSet& a, std::int64_t n);

/// Hausdorff distance of two nonempty finite point sets.
CReal hausdorff_finite(const FinitePointSet& s, const FinitePointSet& t);
/// Hausdorff distance of two nonempty totally bounded sets.
CReal hausdorff_tb(const TBSet& a, const TBSet& b);

/// Exact Hausdorff distance of finite dyadic point sets.
Dyadic hausdorff_exact(const std::vector<std::vector<Dyadic>>& s, const std::vector<std::vector<Dyadic>>& t);

/// Limit of a sequence with d_H(K_n, K_m) <= 2^-n + 2^-m (not checked).
TBSet tb_limit(std::function<TBSet(std::size_t)> ks);
/// Pairwise 2^-level estimates of d_H(K_i, K_j), i, j < count, from level
/// coverings; an audit for the unchecked precondition of tb_limit.
std::vector<std::vector<Dyadic>> tb_limit_audit(const std::function<TBSet(std::size_t)>& ks, std::size_t count,
                                                std::int64_t level);

TBSet tb_union(const TBSet& a, const TBSet& b);
/// c A + t for c > 0; throws std::invalid_argument otherwise.
TBSet tb_affine(const Dyadic& c, const Point& t, const TBSet& a);
/// f(A) for f with modulus omega on a neighbourhood of A.
TBSet tb_image(PointMap f, ModulusFn omega, const TBSet& a, std::size_t out_dimension);

}  // namespace certoset
