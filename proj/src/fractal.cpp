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

#include "certoset/fractal.hpp"

#include <mutex>
#include <stdexcept>

namespace certoset {

namespace {

constexpr std::int64_t kMaxGridLevel = 30;

void check_level(std::int64_t n, const char* what) {
    if (n > kMaxGridLevel) throw std::invalid_argument(std::string(what) + ": level " + std::to_string(n) + " too large");
}

Dyadic odd_center(std::int64_t k, std::int64_t n) { return Dyadic(mpz_class(static_cast<long>(2 * k + 1)), -(n + 1)); }

class TriangleImpl final : public TBSet::Impl {
public:
    std::size_t dimension() const override { return 2; }
    std::vector<Point> compute_covering(std::int64_t n) const override {
        check_level(n, "triangle");
        std::int64_t side = std::int64_t{1} << n;
        std::vector<Point> out;
        out.reserve(static_cast<std::size_t>(side * (side + 1) / 2));
        for (std::int64_t i = 0; i < side; ++i)
            for (std::int64_t j = 0; i + j < side; ++j) out.push_back({CReal(odd_center(i, n)), CReal(odd_center(j, n))});
        return out;
    }
    bool centered() const override { return true; }
    bool has_hierarchy() const override { return true; }
    std::vector<TBSet::Cell> roots() const override { return {cell(0, 0, 0)}; }
    // the square [i, i+1] x [j, j+1] 2^-n, kept while it meets the triangle
    std::vector<TBSet::Cell> children(const TBSet::Cell& c) const override {
        std::int64_t i = c.key.at(0), j = c.key.at(1), n = c.key.at(2);
        std::int64_t side = std::int64_t{1} << (n + 1);
        std::vector<TBSet::Cell> out;
        for (std::int64_t a = 0; a < 2; ++a)
            for (std::int64_t b = 0; b < 2; ++b)
                if (2 * i + a + 2 * j + b < side) out.push_back(cell(2 * i + a, 2 * j + b, n + 1));
        return out;
    }

private:
    static TBSet::Cell cell(std::int64_t i, std::int64_t j, std::int64_t n) {
        return {{CReal(odd_center(i, n)), CReal(odd_center(j, n))}, Dyadic::pow2(-(n + 1)), {i, j, n}, nullptr};
    }
};

class CubeImpl final : public TBSet::Impl {
public:
    explicit CubeImpl(std::size_t m) : m_(m) {}
    std::size_t dimension() const override { return m_; }
    std::vector<Point> compute_covering(std::int64_t n) const override {
        check_level(n, "cube");
        std::int64_t side = std::int64_t{1} << n;
        std::vector<std::int64_t> k(m_, 0);
        std::vector<Point> out;
        for (;;) {
            out.push_back(center(k, n));
            std::size_t axis = m_;
            while (axis > 0 && ++k[axis - 1] == side) k[--axis] = 0;
            if (axis == 0) break;
        }
        return out;
    }
    bool centered() const override { return true; }
    bool has_hierarchy() const override { return true; }
    std::vector<TBSet::Cell> roots() const override { return {cell(std::vector<std::int64_t>(m_, 0), 0)}; }
    std::vector<TBSet::Cell> children(const TBSet::Cell& c) const override {
        std::int64_t n = c.key.back();
        std::vector<TBSet::Cell> out;
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m_); ++bits) {
            std::vector<std::int64_t> k(m_);
            for (std::size_t a = 0; a < m_; ++a) k[a] = 2 * c.key[a] + static_cast<std::int64_t>((bits >> (m_ - 1 - a)) & 1);
            out.push_back(cell(k, n + 1));
        }
        return out;
    }

private:
    // -1 + (2k+1) 2^-n
    static Point center(const std::vector<std::int64_t>& k, std::int64_t n) {
        Point p;
        for (auto v : k) p.emplace_back(Dyadic(mpz_class(static_cast<long>(2 * v + 1)), -n) - Dyadic(1));
        return p;
    }
    TBSet::Cell cell(std::vector<std::int64_t> k, std::int64_t n) const {
        Point c = center(k, n);
        k.push_back(n);
        return {std::move(c), Dyadic::pow2(-n), std::move(k), nullptr};
    }

    std::size_t m_;
};

Point midpoint_map(const Point& c, const Point& d) {
    Point out;
    out.reserve(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) out.push_back(scale2(c[i] + d[i], -1));
    return out;
}

class IfsImpl final : public TBSet::Impl {
public:
    explicit IfsImpl(IFS f) : f_(std::move(f)) {}
    std::size_t dimension() const override { return f_.dimension; }
    std::vector<Point> compute_covering(std::int64_t n) const override {
        std::lock_guard lock(mu_);
        if (levels_.empty()) levels_.push_back({Point(f_.dimension, CReal())});
        while (static_cast<std::int64_t>(levels_.size()) <= n) {
            const auto& prev = levels_.back();
            std::vector<Point> next;
            next.reserve(prev.size() * f_.anchors.size());
            for (const auto& d : f_.anchors)
                for (const auto& c : prev) next.push_back(midpoint_map(c, d));
            levels_.push_back(std::move(next));
        }
        return levels_[static_cast<std::size_t>(n)];
    }
    bool has_hierarchy() const override { return true; }
    std::vector<TBSet::Cell> roots() const override { return {{Point(f_.dimension, CReal()), Dyadic(1), {}, nullptr}}; }
    // word w d: center c_w + 2^-(|w|+1) d, the attractor part S_w(A) stays
    // within 2^-|w| of c_w
    std::vector<TBSet::Cell> children(const TBSet::Cell& c) const override {
        auto level = static_cast<std::int64_t>(c.key.size());
        std::vector<TBSet::Cell> out;
        for (std::size_t k = 0; k < f_.anchors.size(); ++k) {
            Point center;
            for (std::size_t i = 0; i < f_.dimension; ++i) center.push_back(c.center[i] + scale2(f_.anchors[k][i], -(level + 1)));
            auto key = c.key;
            key.push_back(static_cast<std::int64_t>(k));
            out.push_back({std::move(center), Dyadic::pow2(-(level + 1)), std::move(key), nullptr});
        }
        return out;
    }

private:
    IFS f_;
    mutable std::mutex mu_;
    mutable std::vector<std::vector<Point>> levels_;
};

}  // namespace

IFS make_ifs(std::size_t dimension, std::vector<Point> anchors) {
    if (dimension == 0) throw std::invalid_argument("ifs: dimension 0");
    if (anchors.empty()) throw std::invalid_argument("ifs: no anchors");
    Interval cube(Dyadic(-1), Dyadic(1));
    for (std::size_t k = 0; k < anchors.size(); ++k) {
        if (anchors[k].size() != dimension)
            throw std::invalid_argument("ifs: anchor " + std::to_string(k) + " has dimension " +
                                        std::to_string(anchors[k].size()));
        for (const auto& c : anchors[k])
            if (!cube.contains(c.approx(10)))
                throw std::invalid_argument("ifs: anchor " + std::to_string(k) + " " + to_string(anchors[k]) +
                                            " is not inside [-1, 1]^" + std::to_string(dimension));
    }
    return {dimension, std::move(anchors)};
}

const TBSet& triangle_tb() {
    static const TBSet t(std::make_shared<TriangleImpl>());
    return t;
}

TBSet cube_tb(std::size_t m) {
    if (m == 0) throw std::invalid_argument("cube: dimension 0");
    return TBSet(std::make_shared<CubeImpl>(m));
}

TBSet ifs_tb(const IFS& f) { return TBSet(std::make_shared<IfsImpl>(make_ifs(f.dimension, f.anchors))); }

TBSet ifs_limit_tb(const IFS& f) {
    struct Iterates {
        explicit Iterates(IFS g) : f(std::move(g)) {}
        IFS f;
        std::mutex mu;
        std::vector<TBSet> ts;
        TBSet at(std::size_t i) {
            std::lock_guard lock(mu);
            if (ts.empty()) ts.push_back(cube_tb(f.dimension));
            while (ts.size() <= i) {
                const TBSet prev = ts.back();
                std::optional<TBSet> acc;
                for (const auto& d : f.anchors) {
                    Point half;
                    for (const auto& c : d) half.push_back(scale2(c, -1));
                    TBSet piece = tb_affine(Dyadic::pow2(-1), half, prev);
                    acc = acc ? tb_union(*acc, piece) : piece;
                }
                ts.push_back(*acc);
            }
            return ts[i];
        }
    };
    auto it = std::make_shared<Iterates>(make_ifs(f.dimension, f.anchors));
    return tb_limit([it](std::size_t i) { return it->at(i); });
}

const IFS& sierpinski_ifs() {
    static const IFS f = make_ifs(2, {make_point({Dyadic(-1), Dyadic(-1)}), make_point({Dyadic(1), Dyadic(-1)}),
                                      Point{CReal(), sqrt3() - CReal(1)}});
    return f;
}

const TBSet& sierpinski_tb() {
    static const TBSet s = ifs_tb(sierpinski_ifs());
    return s;
}

}  // namespace certoset
