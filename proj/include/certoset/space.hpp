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

// Points of R^m with the maximum norm, and the metric-space record used by
// the set operations.

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "certoset/real.hpp"

namespace certoset {

using Point = std::vector<CReal>;

Point make_point(const std::vector<Dyadic>& coords);
/// Exact coordinates if every coordinate is exact.
std::optional<std::vector<Dyadic>> exact_coords(const Point& p);
std::string to_string(const Point& p, std::int64_t prec = 20);

/// max_i |x_i - y_i|; throws std::invalid_argument on dimension mismatch.
CReal max_norm_dist(const Point& x, const Point& y);

struct MetricSpace {
    std::function<CReal(const Point&, const Point&)> distance;
    std::function<Point(std::uint64_t)> dense;
    std::size_t dimension = 0;
};

/// R^m with the max norm and the dyadic points as dense subset.
MetricSpace euclidean(std::size_t m);

/// Cantor pairing on N; throws std::overflow_error past 64 bits.
std::uint64_t cantor_pair(std::uint64_t a, std::uint64_t b);
std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t i);

/// Dyadic grid enumeration of D^m: i + 1 = 2^k (2r + 1) splits i into an
/// exponent k and a code r whose bits are dealt round-robin to m naturals,
/// mapped to integers z_1..z_m by zigzag (0, -1, 1, -2, ...).  The point is
/// (z_1 2^-k, ..., z_m 2^-k).  Every dyadic point occurs; index size grows
/// linearly in the bit length of the grid integers.
std::vector<Dyadic> dyadic_dense_coords(std::uint64_t i, std::size_t m);
Point dyadic_dense(std::uint64_t i, std::size_t m);
/// Index of the given dyadic point with the smallest usable exponent.
std::uint64_t dyadic_dense_index(const std::vector<Dyadic>& coords);
/// Index of a dense point within 2^-p of x, found by rounding, not search.
std::uint64_t dense_index_near(const Point& x, std::int64_t p);

using PointSeq = std::function<Point(std::size_t)>;

/// Coordinatewise limit of a fast Cauchy sequence of points.
Point point_limit(PointSeq f);

}  // namespace certoset
