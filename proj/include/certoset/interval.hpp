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

#pragma once

#include <string>

#include "certoset/dyadic.hpp"

namespace certoset {

/// Closed interval [lo, hi] with exact dyadic endpoints, lo <= hi.
///
/// All operations are exact except round_out, so no directed rounding mode
/// is ever needed.
struct Interval {
    Dyadic lo;
    Dyadic hi;

    Interval() = default;
    explicit Interval(Dyadic point) : lo(point), hi(lo) {}
    Interval(Dyadic l, Dyadic h);

    Dyadic width() const { return hi - lo; }
    Dyadic midpoint() const { return (lo + hi).shifted(-1); }
    bool is_point() const { return lo == hi; }
    bool contains(const Dyadic& v) const { return lo <= v && v <= hi; }
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool intersects(const Interval& o) const { return !(hi < o.lo || o.hi < lo); }
    /// Largest absolute value over the interval.
    Dyadic magnitude() const { return max(lo.abs(), hi.abs()); }

    friend bool operator==(const Interval&, const Interval&) = default;

    std::string to_string() const { return "[" + lo.to_string() + ", " + hi.to_string() + "]"; }
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);
Interval operator*(const Interval& a, const Interval& b);
Interval abs(const Interval& a);
Interval max(const Interval& a, const Interval& b);
Interval min(const Interval& a, const Interval& b);

/// Intersection; the caller guarantees the two intervals overlap.
Interval intersect(const Interval& a, const Interval& b);
/// [lo - r, hi + r]
Interval widen(const Interval& a, const Dyadic& r);
/// Smallest interval on the grid 2^-p containing a.
Interval round_out(const Interval& a, std::int64_t p);

}  // namespace certoset
