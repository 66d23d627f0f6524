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

#include "certoset/interval.hpp"

#include <stdexcept>

namespace certoset {

Interval::Interval(Dyadic l, Dyadic h) : lo(std::move(l)), hi(std::move(h)) {
    if (hi < lo) throw std::invalid_argument("interval with lo > hi: " + lo.to_string() + " > " + hi.to_string());
}

Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }
Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }

Interval operator*(const Interval& a, const Interval& b) {
    if (a.is_point() && b.is_point()) return Interval(a.lo * b.lo);
    Dyadic p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return {min(min(p1, p2), min(p3, p4)), max(max(p1, p2), max(p3, p4))};
}

Interval abs(const Interval& a) {
    if (a.lo.sign() >= 0) return a;
    if (a.hi.sign() <= 0) return -a;
    return {Dyadic(), max(-a.lo, a.hi)};
}

Interval max(const Interval& a, const Interval& b) { return {max(a.lo, b.lo), max(a.hi, b.hi)}; }
Interval min(const Interval& a, const Interval& b) { return {min(a.lo, b.lo), min(a.hi, b.hi)}; }

Interval intersect(const Interval& a, const Interval& b) {
    Dyadic lo = max(a.lo, b.lo), hi = min(a.hi, b.hi);
    if (hi < lo) throw std::logic_error("disjoint intervals " + a.to_string() + " and " + b.to_string());
    return {std::move(lo), std::move(hi)};
}

Interval widen(const Interval& a, const Dyadic& r) { return {a.lo - r, a.hi + r}; }

Interval round_out(const Interval& a, std::int64_t p) { return {a.lo.floor_to(p), a.hi.ceil_to(p)}; }

}  // namespace certoset
