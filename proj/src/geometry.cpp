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

#include "certoset/detail/geometry.hpp"

#include <stdexcept>

namespace certoset::detail {

Interval dist_interval(const Point& x, const Point& c, Effort e) {
    if (x.size() != c.size()) throw std::invalid_argument("distance: dimension mismatch");
    Interval d(Dyadic{});
    for (std::size_t i = 0; i < x.size(); ++i) d = max(d, abs(x[i].approx(e + 1) - c[i].approx(e + 1)));
    return d;
}

Point affine_point(const Dyadic& c, const Point& p, const Point& t) {
    bool pow2 = c.mantissa() == 1;
    Point out;
    out.reserve(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        CReal scaled = pow2 ? scale2(p[i], c.exponent()) : CReal(c) * p[i];
        out.push_back(scaled + t[i]);
    }
    return out;
}

}  // namespace certoset::detail
