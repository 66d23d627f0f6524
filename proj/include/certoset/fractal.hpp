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

// Concrete totally bounded sets: the triangle x, y >= 0, x + y <= 1, the
// cube [-1, 1]^m, and attractors of midpoint iterated function systems.

#pragma once

#include <vector>

#include "certoset/tbound.hpp"

namespace certoset {

/// Midpoint IFS: maps x -> (x + d) / 2 for each anchor d in [-1, 1]^m.
struct IFS {
    std::size_t dimension = 0;
    std::vector<Point> anchors;
};

/// Checks dimensions and that every anchor lies in the cube (intervals at
/// effort 10); throws std::invalid_argument.
IFS make_ifs(std::size_t dimension, std::vector<Point> anchors);

/// Shared instance; covering(n) has the centers ((2i+1), (2j+1)) 2^-(n+1)
/// for i + j < 2^n.
const TBSet& triangle_tb();

/// [-1, 1]^m; covering(n) is the grid of 2^n centers per axis.
TBSet cube_tb(std::size_t m);

/// Direct covering: covering(0) = {0}, covering(n+1) = {(c + d) / 2} with
/// the anchor loop outermost.
TBSet ifs_tb(const IFS& f);

/// The same attractor as tb_limit of T_0 = cube, T_(i+1) = union over d
/// of T_i / 2 + d / 2.
TBSet ifs_limit_tb(const IFS& f);

/// Anchors (-1, -1), (1, -1), (0, sqrt(3) - 1).
const IFS& sierpinski_ifs();
/// Shared instance of ifs_tb(sierpinski_ifs()).
const TBSet& sierpinski_tb();

}  // namespace certoset
