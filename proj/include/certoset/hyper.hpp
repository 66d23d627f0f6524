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

// Open and closed subsets, compactness and overtness testers, choice from
// open sets, and the modulus of continuity of a semi-decision.

#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "certoset/tbound.hpp"

namespace certoset {

/// B(center, level) = { x : d(x, center) < 2^-level }.  A negative level
/// gives a radius above 1.
struct Ball {
    Point center;
    std::int64_t level = 0;
};

/// Open set as the union of an enumeration of balls; an enumeration slot may
/// be empty.
class OpenSet {
public:
    using Enumeration = std::function<std::optional<Ball>(std::size_t)>;

    OpenSet() : OpenSet(empty()) {}
    explicit OpenSet(Enumeration balls) : balls_(std::move(balls)) {}
    static OpenSet empty();
    static OpenSet from_list(std::vector<Ball> balls);

    std::optional<Ball> ball(std::size_t i) const { return balls_(i); }
    /// Balls known not to exist from index size_hint() on, if finite.
    std::optional<std::size_t> size_hint() const { return size_; }

private:
    Enumeration balls_;
    std::optional<std::size_t> size_;
};

/// Closed set given by semi-deciding membership of its complement.
struct ClosedSet {
    std::function<Sierpinski(const Point&)> complement_member;
};

using PointPredicate = std::function<Sierpinski(const Point&)>;

Sierpinski open_member(const OpenSet& u, const Point& x);
/// Diagonal interleaving of the constituent enumerations.
OpenSet open_union_countable(std::function<OpenSet(std::size_t)> us);
PointPredicate open_intersect(const OpenSet& u1, const OpenSet& u2);
/// Index i with space.dense(i) in U; U must be nonempty.  Candidates are
/// the dense points nearest each ball center at growing precision, searched
/// by countable selection with a strict half-radius margin.  The space's
/// dense enumeration must be the dyadic one.
std::uint64_t open_choice(const OpenSet& u, const MetricSpace& space);

ClosedSet closed_union(const ClosedSet& a, const ClosedSet& b);
ClosedSet closed_countable_intersection(std::function<ClosedSet(std::size_t)> cs);
/// { x : d(x, center) <= 2^-level }
ClosedSet closed_ball(const Point& center, std::int64_t level);
/// { x : x_axis <= bound } or { x : x_axis >= bound }
ClosedSet closed_half_space(std::size_t axis, const CReal& bound, bool below);

/// Level cap for the compactness tester's centered coverings.
inline constexpr std::int64_t kCompactLevelCap = 10;

/// Eventually True iff K is a subset of U.  At effort e the centered level-k
/// coverings for k <= min(floor(log2(e+1) / 2), cap) are tested against the
/// first e+1 balls with margin 2^-k, distances at precision
/// 2 floor(log2(e+1)) + 4.
Sierpinski compact_subset_semidec(const TBSet& k, const OpenSet& u, std::int64_t level_cap = kCompactLevelCap);

/// Eventually True iff V meets U; V nonempty.
Sierpinski overt_intersects_semidec(const TBSet& v, const OpenSet& u);

/// m such that f is True on B(x, 2^-m), found by recording the highest
/// effort at which f reads its argument; f(x) must be eventually True.
std::int64_t modulus_of_continuity(const PointPredicate& f, const Point& x);

/// A Sierpinski map on the plane with dyadic points at which it holds.
struct ModulusExample {
    std::string name;
    PointPredicate f;
    std::vector<Point> base_points;
};

/// Five maps with 20 base points each, for checking modulus_of_continuity.
const std::vector<ModulusExample>& modulus_corpus();

/// Wraps x so that every interval read is recorded.  The wrapped point
/// presents the realizer [m_j - 2^-j, m_j + 2^-j] with m_j the midpoint of
/// x.approx(j + 1), which every point within 2^-(j+1) of x also admits.
class SpyPoint {
public:
    explicit SpyPoint(const Point& x);
    const Point& point() const { return spied_; }
    /// Highest effort read so far, 0 if none.
    Effort high_water() const;

private:
    std::shared_ptr<std::atomic<Effort>> high_water_;
    Point spied_;
};

}  // namespace certoset
