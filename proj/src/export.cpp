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

#include <sstream>

#include "certoset/cli.hpp"
#include "json.hpp"

namespace certoset::cli {

namespace {

Dyadic round_coord(const CReal& c, std::int64_t p) {
    if (const Dyadic* e = c.exact(); e && (e->is_zero() || e->exponent() >= -p)) return *e;
    // error <= 2^-(p+2) + 2^-(p+1)
    return c.approx(static_cast<Effort>(p + 2)).midpoint().round_to(p);
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        std::size_t at = s.find(sep, start);
        out.emplace_back(s.substr(start, at == std::string_view::npos ? std::string_view::npos : at - start));
        if (at == std::string_view::npos) return out;
        start = at + 1;
    }
}

Dyadic parse_dyadic(const std::string& s) {
    try {
        return Dyadic::parse(s);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

std::int64_t parse_int(const std::string& s) {
    try {
        std::size_t used = 0;
        long long v = std::stoll(s, &used);
        if (used == s.size()) return v;
    } catch (const std::logic_error&) {
    }
    throw InputError("expected an integer, got \"" + s + "\"");
}

}  // namespace

Covering export_covering(const TBSet& set, std::int64_t level, std::int64_t precision) {
    Covering out;
    out.level = level;
    out.dimension = set.dimension();
    auto cov = set.covering(level);
    out.centers.reserve(cov->size());
    for (const auto& c : *cov) {
        std::vector<Dyadic> r;
        r.reserve(c.size());
        for (const auto& x : c) r.push_back(round_coord(x, precision));
        out.centers.push_back(std::move(r));
    }
    return out;
}

std::string to_json(const Covering& c) {
    nlohmann::ordered_json j;
    j["level"] = c.level;
    j["radius_exponent"] = -c.level;
    auto centers = nlohmann::ordered_json::array();
    for (const auto& p : c.centers) {
        auto row = nlohmann::ordered_json::array();
        for (const auto& x : p) row.push_back(x.to_string());
        centers.push_back(std::move(row));
    }
    j["centers"] = std::move(centers);
    j["dimension"] = c.dimension;
    return j.dump() + "\n";
}

Covering covering_from_json(std::string_view text) {
    using nlohmann::json;
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("invalid JSON: ") + e.what());
    }
    for (const char* key : {"level", "radius_exponent", "centers", "dimension"})
        if (!j.contains(key)) throw InputError(std::string("covering JSON lacks \"") + key + "\"");
    if (!j["level"].is_number_integer() || !j["radius_exponent"].is_number_integer() ||
        !j["dimension"].is_number_unsigned() || !j["centers"].is_array())
        throw InputError("covering JSON has fields of the wrong type");
    Covering c;
    c.level = j["level"].get<std::int64_t>();
    c.dimension = j["dimension"].get<std::size_t>();
    if (j["radius_exponent"].get<std::int64_t>() != -c.level) throw InputError("radius_exponent must be -level");
    for (const auto& row : j["centers"]) {
        if (!row.is_array() || row.size() != c.dimension) throw InputError("center of the wrong dimension");
        std::vector<Dyadic> p;
        for (const auto& x : row) {
            if (!x.is_string()) throw InputError("center coordinates must be strings");
            p.push_back(parse_dyadic(x.get<std::string>()));
        }
        c.centers.push_back(std::move(p));
    }
    return c;
}

std::string to_csv(const Covering& c) {
    std::string s = "level,radius_exponent";
    for (std::size_t i = 1; i <= c.dimension; ++i) s += ",c" + std::to_string(i);
    s += "\n";
    const std::string prefix = std::to_string(c.level) + "," + std::to_string(-c.level);
    for (const auto& p : c.centers) {
        s += prefix;
        for (const auto& x : p) s += "," + x.to_string();
        s += "\n";
    }
    return s;
}

Covering covering_from_csv(std::string_view text) {
    auto lines = split(text, '\n');
    if (!lines.empty() && lines.back().empty()) lines.pop_back();
    if (lines.empty()) throw InputError("empty CSV");
    auto header = split(lines[0], ',');
    if (header.size() < 3 || header[0] != "level" || header[1] != "radius_exponent")
        throw InputError("CSV header must be level,radius_exponent,c1,...");
    Covering c;
    c.dimension = header.size() - 2;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto f = split(lines[i], ',');
        if (f.size() != header.size()) throw InputError("CSV row " + std::to_string(i) + " has the wrong width");
        std::int64_t level = parse_int(f[0]);
        if (parse_int(f[1]) != -level) throw InputError("radius_exponent must be -level");
        if (i > 1 && level != c.level) throw InputError("CSV rows of different levels");
        c.level = level;
        std::vector<Dyadic> p;
        for (std::size_t k = 2; k < f.size(); ++k) p.push_back(parse_dyadic(f[k]));
        c.centers.push_back(std::move(p));
    }
    return c;
}

Viewport parse_viewport(std::string_view text) {
    auto f = split(text, ',');
    if (f.size() != 4) throw InputError("viewport must be x0,y0,x1,y1");
    Viewport v{parse_dyadic(f[0]), parse_dyadic(f[1]), parse_dyadic(f[2]), parse_dyadic(f[3])};
    if (!(v.x0 < v.x1 && v.y0 < v.y1)) throw InputError("viewport needs x0 < x1 and y0 < y1");
    return v;
}

Viewport default_viewport(const Covering& c) {
    if (c.centers.empty()) return {-1, -1, 1, 1};
    if (c.dimension != 2) throw InputError("SVG output needs a set of dimension 2");
    Dyadic x0 = c.centers[0][0], x1 = x0, y0 = c.centers[0][1], y1 = y0;
    for (const auto& p : c.centers) {
        x0 = min(x0, p[0]), x1 = max(x1, p[0]);
        y0 = min(y0, p[1]), y1 = max(y1, p[1]);
    }
    // ball radius plus an equal margin
    Dyadic pad = Dyadic::pow2(1 - c.level);
    x0 -= pad, y0 -= pad, x1 += pad, y1 += pad;
    Dyadic half = max(x1 - x0, y1 - y0).shifted(-1);
    Dyadic cx = (x0 + x1).shifted(-1), cy = (y0 + y1).shifted(-1);
    return {cx - half, cy - half, cx + half, cy + half};
}

std::string to_svg(const Covering& c, const Viewport& view) {
    if (c.dimension != 2) throw InputError("SVG output needs a set of dimension 2");
    const Dyadic r = Dyadic::pow2(-c.level), side = r.shifted(1);
    std::ostringstream s;
    s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1024\" height=\"1024\" viewBox=\""
      << view.x0.to_decimal() << " " << (-view.y1).to_decimal() << " " << (view.x1 - view.x0).to_decimal() << " "
      << (view.y1 - view.y0).to_decimal() << "\" preserveAspectRatio=\"none\">\n"
      << "<!-- level " << c.level << ", " << c.centers.size() << " balls of radius 2^" << -c.level
      << "; world y axis points up -->\n"
      << "<g fill=\"#3465a4\" fill-opacity=\"0.35\" stroke=\"#204a87\" stroke-width=\""
      << r.shifted(-3).to_decimal() << "\">\n";
    for (const auto& p : c.centers)
        s << "<rect x=\"" << (p[0] - r).to_decimal() << "\" y=\"" << (-(p[1] + r)).to_decimal() << "\" width=\""
          << side.to_decimal() << "\" height=\"" << side.to_decimal() << "\"/>\n";
    s << "</g>\n</svg>\n";
    return s.str();
}

}  // namespace certoset::cli
