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

#include "certoset/space.hpp"

namespace certoset::detail {

/// Interval of width <= 2^(1-e) containing the max-norm distance of x and c.
Interval dist_interval(const Point& x, const Point& c, Effort e);

/// c p + t coordinatewise; powers of two scale exactly.
Point affine_point(const Dyadic& c, const Point& p, const Point& t);

}  // namespace certoset::detail
