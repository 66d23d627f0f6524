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

#include "certoset/space.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace certoset {

namespace {

std::uint64_t zig(std::int64_t z) {
    return z >= 0 ? 2 * static_cast<std::uint64_t>(z) : 2 * static_cast<std::uint64_t>(-(z + 1)) + 1;
}

std::int64_t zag(std::uint64_t n) {
    return n % 2 == 0 ? static_cast<std::int64_t>(n / 2) : -static_cast<std::int64_t>(n / 2) - 1;
}

}  // namespace

Point make_point(const std::vector<Dyadic>& coords) { return Point(coords.begin(), coords.end()); }

std::optional<std::vector<Dyadic>> exact_coords(const Point& p) {
    std::vector<Dyadic> out;
    out.reserve(p.size());
    for (const auto& c : p) {
        if (!c.exact()) return std::nullopt;
        out.push_back(*c.exact());
    }
    return out;
}

std::string to_string(const Point& p, std::int64_t prec) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) s += ", ";
        s += p[i].exact() ? p[i].exact()->to_decimal() : "~" + approx_dyadic(p[i], prec).to_decimal();
    }
    return s + ")";
}

CReal max_norm_dist(const Point& x, const Point& y) {
    if (x.size() != y.size() || x.empty())
        throw std::invalid_argument("max_norm_dist: dimensions " + std::to_string(x.size()) + " and " +
                                    std::to_string(y.size()));
    CReal d = abs(x[0] - y[0]);
    for (std::size_t i = 1; i < x.size(); ++i) d = max(d, abs(x[i] - y[i]));
    return d;
}

MetricSpace euclidean(std::size_t m) {
    if (m == 0) throw std::invalid_argument("euclidean: dimension 0");
    return {max_norm_dist, [m](std::uint64_t i) { return dyadic_dense(i, m); }, m};
}

std::uint64_t cantor_pair(std::uint64_t a, std::uint64_t b) {
    unsigned __int128 s = static_cast<unsigned __int128>(a) + b;
    unsigned __int128 v = s * (s + 1) / 2 + b;
    if (v > UINT64_MAX) throw std::overflow_error("cantor_pair: index exceeds 64 bits");
    return static_cast<std::uint64_t>(v);
}

std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t i) {
    // largest w with w(w+1)/2 <= i
    mpz_class disc = mpz_class(8) * mpz_class(static_cast<unsigned long>(i)) + 1;
    mpz_class r = isqrt(disc);
    auto w = static_cast<std::uint64_t>(mpz_class((r - 1) / 2).get_ui());
    unsigned __int128 t = static_cast<unsigned __int128>(w) * (w + 1) / 2;
    auto b = static_cast<std::uint64_t>(i - t);
    return {w - b, b};
}

std::vector<Dyadic> dyadic_dense_coords(std::uint64_t i, std::size_t m) {
    if (m == 0) throw std::invalid_argument("dyadic_dense: dimension 0");
    // i + 1 = 2^k (2 r + 1)
    unsigned __int128 v = static_cast<unsigned __int128>(i) + 1;
    std::int64_t k = 0;
    while ((v & 1) == 0) v >>= 1, ++k;
    auto r = static_cast<std::uint64_t>(v >> 1);
    std::vector<std::uint64_t> nats(m, 0);
    for (unsigned b = 0; b < 64; ++b)
        if ((r >> b) & 1) nats[b % m] |= std::uint64_t{1} << (b / m);
    std::vector<Dyadic> out;
    out.reserve(m);
    for (auto z : nats) out.emplace_back(mpz_class(static_cast<long>(zag(z))), -k);
    return out;
}

Point dyadic_dense(std::uint64_t i, std::size_t m) { return make_point(dyadic_dense_coords(i, m)); }

std::uint64_t dyadic_dense_index(const std::vector<Dyadic>& coords) {
    if (coords.empty()) throw std::invalid_argument("dyadic_dense_index: dimension 0");
    std::int64_t k = 0;
    for (const auto& c : coords)
        if (!c.is_zero()) k = std::max(k, -c.exponent());
    std::vector<std::uint64_t> nats;
    for (const auto& c : coords) {
        mpz_class z = c.scaled_integer(k);
        if (!z.fits_slong_p()) throw std::overflow_error("dyadic_dense_index: coordinate too large");
        nats.push_back(zig(z.get_si()));
    }
    const std::size_t m = nats.size();
    std::uint64_t r = 0;
    for (std::size_t c = 0; c < m; ++c)
        for (unsigned b = 0; b < 64; ++b) {
            if (((nats[c] >> b) & 1) == 0) continue;
            std::size_t pos = b * m + c;
            if (pos >= 63) throw std::overflow_error("dyadic_dense_index: index exceeds 64 bits");
            r |= std::uint64_t{1} << pos;
        }
    if (k >= 64) throw std::overflow_error("dyadic_dense_index: index exceeds 64 bits");
    unsigned __int128 v = (static_cast<unsigned __int128>(2 * r + 1) << k);
    if (v > static_cast<unsigned __int128>(UINT64_MAX)) throw std::overflow_error("dyadic_dense_index: index exceeds 64 bits");
    return static_cast<std::uint64_t>(v - 1);
}

std::uint64_t dense_index_near(const Point& x, std::int64_t p) {
    std::vector<Dyadic> coords;
    for (const auto& c : x) coords.push_back(approx_dyadic(c, p));
    return dyadic_dense_index(coords);
}

Point point_limit(PointSeq f) {
    struct Terms {
        PointSeq f;
        std::mutex mu;
        std::map<std::size_t, Point> cache;
        Point at(std::size_t n) {
            std::lock_guard lock(mu);
            auto it = cache.find(n);
            if (it == cache.end()) it = cache.emplace(n, f(n)).first;
            return it->second;
        }
    };
    auto terms = std::make_shared<Terms>();
    terms->f = std::move(f);
    std::size_t m = terms->at(0).size();
    Point out;
    out.reserve(m);
    for (std::size_t i = 0; i < m; ++i)
        out.push_back(limit([terms, i](std::size_t n) { return terms->at(n).at(i); }));
    return out;
}

}  // namespace certoset
