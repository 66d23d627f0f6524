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

// Command-line front end: set and real expression languages, covering
// export (JSON, CSV, SVG) and the `certoset` commands.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "certoset/fractal.hpp"

namespace certoset::cli {

/// Bad user input: malformed expressions, files or options.  Exit code 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RealOptions {
    /// Accept literals that are not dyadic, such as "0.1", as exact rationals.
    bool allow_rational = false;
};

/// Real expression: + - * unary minus, parentheses, abs(e), max(e, e),
/// min(e, e), literals ("3", "-0.375", "3/8", "3*2^-4"), sqrt3, sqrt(literal)
/// and the sequence limit "limit geom" (limit of 1 - 2^-n).
CReal parse_real(std::string_view text, const RealOptions& opts = {});

struct ParsedSet {
    TBSet set;
    /// Normalized expression with referenced file contents folded in; equal
    /// keys denote the same set.
    std::string key;
};

/// Set expression: triangle, sierpinski, empty, empty(m), cube(m),
/// singleton(x, ...), ifs(path), union(A, B), A | B, translate(t1, ..., tm, A),
/// A + (t1, ..., tm), scale(c, A).  Numbers are real-expression literals.
ParsedSet parse_set(std::string_view text);

/// IFS config: {"dimension": m, "anchors": [[string, ...], ...],
/// "allow_rational": bool}; anchor coordinates are real expressions.
IFS parse_ifs_json(std::string_view text);

/// Level-n covering with centers rounded to the grid 2^-precision.  Exact
/// centers already on the grid are kept; others move by less than
/// 2^-precision.
struct Covering {
    std::int64_t level = 0;
    std::size_t dimension = 0;
    std::vector<std::vector<Dyadic>> centers;
};

Covering export_covering(const TBSet& set, std::int64_t level, std::int64_t precision);

std::string to_json(const Covering& c);
Covering covering_from_json(std::string_view text);
std::string to_csv(const Covering& c);
/// Rows "level,radius_exponent,c1,...,cm" after a header line.
Covering covering_from_csv(std::string_view text);

/// World rectangle shown by the SVG canvas.
struct Viewport {
    Dyadic x0, y0, x1, y1;
};
Viewport parse_viewport(std::string_view text);
/// Square bounding box of the balls with a margin of one radius; [-1, 1]^2
/// when there are none.
Viewport default_viewport(const Covering& c);
/// 1024 x 1024 canvas, viewBox in world coordinates with y flipped, one
/// square of side 2^(1-level) per center.  Dimension 2 only.
std::string to_svg(const Covering& c, const Viewport& view);

/// Stable 64-bit hash of `s` in hex; names cache files.
std::string fingerprint(std::string_view s);

/// Runs the command line `args` (without the program name).  Returns the exit
/// code: 0 success, 1 I/O failure, 2 invalid input, 3 effort ceiling reached.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace certoset::cli
