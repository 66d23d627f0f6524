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

#include "certoset/tbound.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <unordered_set>

#include "certoset/detail/geometry.hpp"

namespace certoset {

std::shared_ptr<const std::vector<Point>> TBSet::covering(std::int64_t n) const {
    if (n < 0) throw std::invalid_argument("covering: negative level " + std::to_string(n));
    {
        std::lock_guard lock(impl_->mu_);
        if (auto it = impl_->cache_.find(n); it != impl_->cache_.end()) return it->second;
    }
    auto cov = std::make_shared<const std::vector<Point>>(impl_->compute_covering(n));
    std::lock_guard lock(impl_->mu_);
    return impl_->cache_.emplace(n, std::move(cov)).first->second;
}

namespace {

void require_nonempty(const TBSet& a, const char* op) {
    if (tb_is_empty(a)) throw std::domain_error(std::string(op) + ": empty set");
}

class EmptyImpl final : public TBSet::Impl {
public:
    explicit EmptyImpl(std::size_t m) : m_(m) {}
    std::size_t dimension() const override { return m_; }
    std::vector<Point> compute_covering(std::int64_t) const override { return {}; }
    bool centered() const override { return true; }
    bool has_hierarchy() const override { return true; }

private:
    std::size_t m_;
};

class SingletonImpl final : public TBSet::Impl {
public:
    explicit SingletonImpl(Point x) : x_(std::move(x)) {}
    std::size_t dimension() const override { return x_.size(); }
    std::vector<Point> compute_covering(std::int64_t n) const override { return {center(n)}; }
    bool has_hierarchy() const override { return true; }
    std::vector<TBSet::Cell> roots() const override { return {cell(0)}; }
    std::vector<TBSet::Cell> children(const TBSet::Cell& c) const override { return {cell(c.key.at(0) + 1)}; }

private:
    // within 2^-(n+1) of x
    Point center(std::int64_t n) const {
        Point c;
        for (const auto& v : x_) c.emplace_back(approx_dyadic(v, n + 1));
        return c;
    }
    TBSet::Cell cell(std::int64_t level) const { return {center(level), Dyadic::pow2(-level), {level}, nullptr}; }

    Point x_;
};

std::string point_key(const Point& p) {
    std::string k;
    for (const auto& c : p) {
        if (c.exact()) {
            k += c.exact()->to_string();
        } else {
            k += '@';
            k += std::to_string(reinterpret_cast<std::uintptr_t>(c.id()));
        }
        k += ';';
    }
    return k;
}

class UnionImpl final : public TBSet::Impl {
public:
    UnionImpl(TBSet a, TBSet b) : a_(std::move(a)), b_(std::move(b)) {}
    std::size_t dimension() const override { return a_.dimension(); }
    std::vector<Point> compute_covering(std::int64_t n) const override {
        std::vector<Point> out;
        std::unordered_set<std::string> seen;
        for (const auto* part : {a_.covering(n).get(), b_.covering(n).get()})
            for (const auto& p : *part)
                if (seen.insert(point_key(p)).second) out.push_back(p);
        return out;
    }
    bool centered() const override { return a_.centered() && b_.centered(); }
    bool has_hierarchy() const override { return a_.has_hierarchy() && b_.has_hierarchy(); }
    std::vector<TBSet::Cell> roots() const override {
        std::vector<TBSet::Cell> out;
        tag(a_.roots(), 0, out);
        tag(b_.roots(), 1, out);
        return out;
    }
    std::vector<TBSet::Cell> children(const TBSet::Cell& c) const override {
        TBSet::Cell inner{c.center, c.spread, {c.key.begin() + 1, c.key.end()}, c.inner};
        std::vector<TBSet::Cell> out;
        tag((c.key.at(0) == 0 ? a_ : b_).children(inner), c.key[0], out);
        return out;
    }

private:
    static void tag(std::vector<TBSet::Cell> cells, std::int64_t side, std::vector<TBSet::Cell>& out) {
        for (auto& c : cells) {
            c.key.insert(c.key.begin(), side);
            out.push_back(std::move(c));
        }
    }

    TBSet a_, b_;
};

class AffineImpl final : public TBSet::Impl {
public:
    AffineImpl(Dyadic c, Point t, TBSet a) : c_(std::move(c)), t_(std::move(t)), a_(std::move(a)) {}
    std::size_t dimension() const override { return a_.dimension(); }
    std::vector<Point> compute_covering(std::int64_t n) const override {
        // least m >= 0 with c 2^-m <= 2^-n
        std::int64_t m = 0;
        while (c_.shifted(-m) > Dyadic::pow2(-n)) ++m;
        std::vector<Point> out;
        for (const auto& p : *a_.covering(m)) out.push_back(map(p));
        return out;
    }
    bool centered() const override { return a_.centered(); }
    bool has_hierarchy() const override { return a_.has_hierarchy(); }
    std::vector<TBSet::Cell> roots() const override { return map_cells(a_.roots()); }
    std::vector<TBSet::Cell> children(const TBSet::Cell& c) const override {
        return map_cells(a_.children(*c.inner));
    }

private:
    Point map(const Point& p) const { return detail::affine_point(c_, p, t_); }
    std::vector<TBSet::Cell> map_cells(std::vector<TBSet::Cell> cells) const {
        std::vector<TBSet::Cell> out;
        for (auto& cell : cells) {
            auto inner = std::make_shared<const TBSet::Cell>(std::move(cell));
            out.push_back({map(inner->center), c_ * inner->spread, inner->key, inner});
        }
        return out;
    }

    Dyadic c_;
    Point t_;
    TBSet a_;
};

class ImageImpl final : public TBSet::Impl {
public:
    ImageImpl(PointMap f, ModulusFn omega, TBSet a, std::size_t m)
        : f_(std::move(f)), omega_(std::move(omega)), a_(std::move(a)), m_(m) {}
    std::size_t dimension() const override { return m_; }
    std::vector<Point> compute_covering(std::int64_t n) const override {
        std::int64_t level = std::max<std::int64_t>(0, omega_(n + 1));
        std::vector<Point> out;
        for (const auto& p : *a_.covering(level)) out.push_back(f_(p));
        return out;
    }
    bool centered() const override { return a_.centered(); }

private:
    PointMap f_;
    ModulusFn omega_;
    TBSet a_;
    std::size_t m_;
};

class LimitImpl final : public TBSet::Impl {
public:
    explicit LimitImpl(std::function<TBSet(std::size_t)> ks) : ks_(std::move(ks)) {}
    std::size_t dimension() const override { return at(0).dimension(); }
    std::vector<Point> compute_covering(std::int64_t n) const override {
        auto k = static_cast<std::size_t>(n + 1);
        return *at(k).covering(n + 1);
    }

private:
    TBSet at(std::size_t k) const {
        std::lock_guard lock(mu_);
        auto it = terms_.find(k);
        if (it == terms_.end()) it = terms_.emplace(k, ks_(k)).first;
        return it->second;
    }

    std::function<TBSet(std::size_t)> ks_;
    mutable std::mutex mu_;
    mutable std::map<std::size_t, TBSet> terms_;
};

// Center of the first cell with spread <= 2^-n along the first-child chain.
Point chain_limit(const TBSet& a, TBSet::Cell start) {
    struct Chain {
        explicit Chain(TBSet s) : set(std::move(s)) {}
        TBSet set;
        std::mutex mu;
        std::vector<TBSet::Cell> cells;
        Point at(std::size_t n) {
            std::lock_guard lock(mu);
            Dyadic target = Dyadic::pow2(-static_cast<std::int64_t>(n));
            for (const auto& c : cells)
                if (c.spread <= target) return c.center;
            for (;;) {
                auto kids = set.children(cells.back());
                if (kids.empty()) throw std::logic_error("tb_choice: cell without children");
                cells.push_back(std::move(kids.front()));
                if (cells.back().spread <= target) return cells.back().center;
            }
        }
    };
    auto chain = std::make_shared<Chain>(a);
    chain->cells.push_back(std::move(start));
    return point_limit([chain](std::size_t n) { return chain->at(n); });
}

// Walk c_0, c_1, ... with c_i in covering(L0 + 2i) and
// |c_i - c_{i+1}| < 1.5 2^-(L0+2i); the tail after c_i is shorter than
// 2^(1-L0-2i).
Point walk_limit(const TBSet& a, Point c0, std::int64_t l0) {
    struct Walk {
        Walk(TBSet s, std::int64_t l) : set(std::move(s)), l0(l) {}
        TBSet set;
        std::int64_t l0;
        std::mutex mu;
        std::vector<Point> cs;
        Point at(std::size_t n) {
            std::int64_t need = static_cast<std::int64_t>(n) + 1 - l0;
            std::size_t i = need <= 0 ? 0 : static_cast<std::size_t>((need + 1) / 2);
            std::lock_guard lock(mu);
            while (cs.size() <= i) {
                std::int64_t level = l0 + 2 * static_cast<std::int64_t>(cs.size() - 1);
                auto cand = set.covering(level + 2);
                CReal bound(Dyadic(mpz_class(3), -level - 1));
                const Point& cur = cs.back();
                std::size_t j = countable_select([&](std::size_t k) {
                    if (k >= cand->size()) return Kleenean::bottom();
                    return lt_semidec(max_norm_dist(cur, (*cand)[k]), bound).kleenean();
                });
                cs.push_back((*cand)[j]);
            }
            return cs[i];
        }
    };
    auto walk = std::make_shared<Walk>(a, l0);
    walk->cs.push_back(std::move(c0));
    return point_limit([walk](std::size_t n) { return walk->at(n); });
}

struct Candidate {
    Dyadic key;  // lower bound on distances to anything below the cell
    TBSet::Cell cell;
    std::uint64_t order;
};

struct CandidateAfter {
    bool operator()(const Candidate& a, const Candidate& b) const {
        if (a.key != b.key) return a.key > b.key;
        return a.order > b.order;
    }
};

// Within 2^-(n+1) + 2^-(n+5) of d(x, A).
Dyadic located_estimate(const TBSet& a, const Point& x, std::int64_t n) {
    const auto eff = static_cast<Effort>(n + 5);
    if (!a.has_hierarchy()) {
        // within 2^-(n+3) + 2^-(n+5)
        auto cov = a.covering(n + 3);
        std::optional<Dyadic> best;
        for (const auto& c : *cov) {
            Dyadic m = detail::dist_interval(x, c, eff).midpoint();
            if (!best || m < *best) best = m;
        }
        return *best;
    }
    // Every cell gives d(x, A) <= d(x, center) + spread.  Cells whose lower
    // bound is within 2 tol of the best upper bound are dropped; the rest are
    // refined down to spread tol.  Then d lies in [lower, upper] with
    // upper - lower <= 2 tol + 2^-(n+4).
    const Dyadic tol = Dyadic::pow2(-(n + 1));
    std::optional<Dyadic> upper, lower;
    auto bounds = [&](const TBSet::Cell& c) {
        Interval d = detail::dist_interval(x, c.center, eff);
        Dyadic up = d.hi + c.spread;
        if (!upper || up < *upper) upper = up;
        return std::pair{d.lo - c.spread, up};
    };
    auto note_lower = [&](const Dyadic& v) {
        if (!lower || v < *lower) lower = v;
    };

    // greedy dive for a good upper bound
    std::vector<TBSet::Cell> level = a.roots();
    while (!level.empty()) {
        std::size_t pick = 0;
        std::optional<Dyadic> pick_up;
        for (std::size_t i = 0; i < level.size(); ++i) {
            Dyadic up = bounds(level[i]).second;
            if (!pick_up || up < *pick_up) pick = i, pick_up = up;
        }
        if (level[pick].spread <= tol) break;
        level = a.children(level[pick]);
    }

    std::priority_queue<Candidate, std::vector<Candidate>, CandidateAfter> queue;
    std::uint64_t order = 0;
    auto push = [&](TBSet::Cell c) {
        Dyadic key = bounds(c).first;
        queue.push({std::move(key), std::move(c), order++});
    };
    for (auto& c : a.roots()) push(std::move(c));
    while (!queue.empty()) {
        Candidate top = queue.top();
        queue.pop();
        if (top.key >= *upper - tol - tol) {
            // everything left is at least this far
            note_lower(*upper - tol - tol);
            break;
        }
        auto kids = top.cell.spread <= tol ? std::vector<TBSet::Cell>{} : a.children(top.cell);
        if (kids.empty()) {
            note_lower(top.key);
            continue;
        }
        for (auto& c : kids) push(std::move(c));
    }
    if (!lower) lower = *upper - tol - tol;
    return (*lower + *upper).shifted(-1);
}

// Chebyshev nearest-neighbour search over integer points.
class KdTree {
public:
    KdTree(const std::vector<std::int64_t>& pts, std::size_t m) : pts_(pts), m_(m), idx_(pts.size() / m) {
        for (std::size_t i = 0; i < idx_.size(); ++i) idx_[i] = i;
        build(0, idx_.size(), 0);
    }

    // Nearest distance from q, or any value <= floor once it is known to be
    // below floor.
    std::int64_t nearest(const std::int64_t* q, std::int64_t floor) const {
        std::int64_t best = INT64_MAX;
        search(0, idx_.size(), 0, q, floor, best);
        return best;
    }

private:
    std::int64_t coord(std::size_t i, std::size_t axis) const { return pts_[i * m_ + axis]; }

    void build(std::size_t lo, std::size_t hi, std::size_t depth) {
        if (hi - lo <= 1) return;
        std::size_t mid = lo + (hi - lo) / 2, axis = depth % m_;
        std::nth_element(idx_.begin() + static_cast<std::ptrdiff_t>(lo), idx_.begin() + static_cast<std::ptrdiff_t>(mid),
                         idx_.begin() + static_cast<std::ptrdiff_t>(hi),
                         [&](std::size_t a, std::size_t b) { return coord(a, axis) < coord(b, axis); });
        build(lo, mid, depth + 1);
        build(mid + 1, hi, depth + 1);
    }

    void search(std::size_t lo, std::size_t hi, std::size_t depth, const std::int64_t* q, std::int64_t floor,
                std::int64_t& best) const {
        if (lo >= hi || best <= floor) return;
        std::size_t mid = lo + (hi - lo) / 2, axis = depth % m_, p = idx_[mid];
        std::int64_t d = 0;
        for (std::size_t k = 0; k < m_; ++k) d = std::max(d, std::abs(q[k] - coord(p, k)));
        best = std::min(best, d);
        std::int64_t diff = q[axis] - coord(p, axis);
        bool left_first = diff < 0;
        if (left_first)
            search(lo, mid, depth + 1, q, floor, best);
        else
            search(mid + 1, hi, depth + 1, q, floor, best);
        if (std::abs(diff) < best) {
            if (left_first)
                search(mid + 1, hi, depth + 1, q, floor, best);
            else
                search(lo, mid, depth + 1, q, floor, best);
        }
    }

    const std::vector<std::int64_t>& pts_;
    std::size_t m_;
    std::vector<std::size_t> idx_;
};

std::int64_t directed_grid(const std::vector<std::int64_t>& from, const std::vector<std::int64_t>& to, std::size_t m) {
    KdTree tree(to, m);
    std::int64_t worst = 0;
    for (std::size_t i = 0; i < from.size(); i += m) worst = std::max(worst, tree.nearest(&from[i], worst));
    return worst;
}

// Centers on the grid 2^-g, each coordinate within 2^-g of the center.
// `ints` is filled only if every value fits comfortably in 62 bits.
struct GridCenters {
    std::vector<std::vector<Dyadic>> values;
    std::optional<std::vector<std::int64_t>> ints;
    bool rounded = false;
};

GridCenters grid_centers(const std::vector<Point>& pts, std::int64_t g) {
    GridCenters out;
    out.ints.emplace();
    const mpz_class limit = mpz_class(1) << 61;
    for (const auto& p : pts) {
        std::vector<Dyadic> v;
        for (const auto& c : p) {
            const Dyadic* e = c.exact();
            Dyadic r;
            if (e && e->exponent() + g >= 0) {
                r = *e;
            } else {
                r = c.approx(static_cast<Effort>(g + 2)).midpoint().round_to(g);
                out.rounded = true;
            }
            if (out.ints) {
                mpz_class z = r.scaled_integer(g);
                if (::abs(z) >= limit)
                    out.ints.reset();
                else
                    out.ints->push_back(z.get_si());
            }
            v.push_back(std::move(r));
        }
        out.values.push_back(std::move(v));
    }
    return out;
}

// Hausdorff distance of the two center sets.
Dyadic centers_hausdorff(const GridCenters& a, const GridCenters& b, std::int64_t g, std::size_t m) {
    if (a.ints && b.ints) {
        std::int64_t d = std::max(directed_grid(*a.ints, *b.ints, m), directed_grid(*b.ints, *a.ints, m));
        return Dyadic(mpz_class(static_cast<long>(d)), -g);
    }
    return hausdorff_exact(a.values, b.values);
}

}  // namespace

TBSet empty_tb(std::size_t dimension) { return TBSet(std::make_shared<EmptyImpl>(dimension)); }

TBSet singleton_tb(Point x) {
    if (x.empty()) throw std::invalid_argument("singleton_tb: dimension 0");
    return TBSet(std::make_shared<SingletonImpl>(std::move(x)));
}

bool tb_is_empty(const TBSet& a) { return a.covering(0)->empty(); }

std::vector<TBSet::Cell> tb_frontier(const TBSet& a, std::int64_t n) {
    if (!a.has_hierarchy()) throw std::invalid_argument("tb_frontier: set has no cell hierarchy");
    Dyadic target = Dyadic::pow2(-n);
    std::vector<TBSet::Cell> out, stack = a.roots();
    std::reverse(stack.begin(), stack.end());
    while (!stack.empty()) {
        TBSet::Cell c = std::move(stack.back());
        stack.pop_back();
        if (c.spread <= target) {
            out.push_back(std::move(c));
            continue;
        }
        auto kids = a.children(c);
        for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(std::move(*it));
    }
    return out;
}

std::vector<Point> tb_centered(const TBSet& a, std::int64_t n) {
    require_nonempty(a, "tb_centered");
    if (a.centered()) return *a.covering(n);
    std::vector<Point> out;
    if (a.has_hierarchy()) {
        for (auto& c : tb_frontier(a, n + 2)) out.push_back(chain_limit(a, std::move(c)));
        return out;
    }
    for (const auto& c : *a.covering(n + 2)) out.push_back(walk_limit(a, c, n + 2));
    return out;
}

CReal tb_dist(const TBSet& a, const Point& x) {
    require_nonempty(a, "tb_dist");
    if (x.size() != a.dimension()) throw std::invalid_argument("tb_dist: dimension mismatch");
    return limit([a, x](std::size_t n) { return CReal(located_estimate(a, x, static_cast<std::int64_t>(n))); });
}

Point tb_choice(const TBSet& a) {
    require_nonempty(a, "tb_choice");
    if (a.has_hierarchy()) return chain_limit(a, a.roots().front());
    return walk_limit(a, a.covering(0)->front(), 0);
}

Dyadic hausdorff_exact(const std::vector<std::vector<Dyadic>>& s, const std::vector<std::vector<Dyadic>>& t) {
    if (s.empty() || t.empty()) throw std::invalid_argument("hausdorff: empty point set");
    auto dist = [](const std::vector<Dyadic>& p, const std::vector<Dyadic>& q) {
        if (p.size() != q.size()) throw std::invalid_argument("hausdorff: dimension mismatch");
        Dyadic d;
        for (std::size_t i = 0; i < p.size(); ++i) d = max(d, (p[i] - q[i]).abs());
        return d;
    };
    // d(S + s, T) = max(d(S, T), d(s, T)); d(s, T + t) = min(d(s, T), d(s, t))
    auto directed = [&](const auto& from, const auto& to) {
        Dyadic acc;
        for (const auto& p : from) {
            Dyadic near = dist(p, to.front());
            for (std::size_t j = 1; j < to.size(); ++j) near = min(near, dist(p, to[j]));
            acc = max(acc, near);
        }
        return acc;
    };
    return max(directed(s, t), directed(t, s));
}

CReal hausdorff_finite(const FinitePointSet& s, const FinitePointSet& t) {
    if (s.empty() || t.empty()) throw std::invalid_argument("hausdorff_finite: empty point set");
    std::vector<std::vector<Dyadic>> es, et;
    bool exact = true;
    for (auto [src, dst] : {std::pair{&s, &es}, std::pair{&t, &et}}) {
        for (const auto& p : *src) {
            auto e = exact_coords(p);
            if (!e) {
                exact = false;
                break;
            }
            dst->push_back(std::move(*e));
        }
        if (!exact) break;
    }
    if (exact) return CReal(hausdorff_exact(es, et));
    return CReal::from_isotone_intervals([s, t](Effort n) {
        auto directed = [n](const FinitePointSet& from, const FinitePointSet& to) {
            std::optional<Interval> acc;
            for (const auto& p : from) {
                Interval near = detail::dist_interval(p, to.front(), n + 1);
                for (std::size_t j = 1; j < to.size(); ++j) near = min(near, detail::dist_interval(p, to[j], n + 1));
                acc = acc ? max(*acc, near) : near;
            }
            return *acc;
        };
        return max(directed(s, t), directed(t, s));
    });
}

CReal hausdorff_tb(const TBSet& a, const TBSet& b) {
    require_nonempty(a, "hausdorff_tb");
    require_nonempty(b, "hausdorff_tb");
    if (a.dimension() != b.dimension()) throw std::invalid_argument("hausdorff_tb: dimension mismatch");
    if (a.same(b)) return CReal();
    // d_H(A, level-l centers) <= 2^-l.  Level n+1 centers already on the grid
    // 2^-(n+3) give radius 2^-n; otherwise level n+2 rounded to 2^-(n+4)
    // gives 2 (2^-(n+2) + 2^-(n+4)) < 2^-n.
    std::size_t m = a.dimension();
    return CReal::from_intervals([a, b, m](Effort e) {
        auto n = static_cast<std::int64_t>(e);
        std::int64_t level = n + 1, g = n + 3;
        GridCenters ga = grid_centers(*a.covering(level), g), gb = grid_centers(*b.covering(level), g);
        if (ga.rounded || gb.rounded) {
            level = n + 2, g = n + 4;
            ga = grid_centers(*a.covering(level), g);
            gb = grid_centers(*b.covering(level), g);
        }
        Dyadic h = centers_hausdorff(ga, gb, g, m);
        Dyadic r = Dyadic::pow2(-n);
        return Interval(max(Dyadic(), h - r), h + r);
    });
}

TBSet tb_limit(std::function<TBSet(std::size_t)> ks) { return TBSet(std::make_shared<LimitImpl>(std::move(ks))); }

std::vector<std::vector<Dyadic>> tb_limit_audit(const std::function<TBSet(std::size_t)>& ks, std::size_t count,
                                                std::int64_t level) {
    std::vector<TBSet> sets;
    for (std::size_t i = 0; i < count; ++i) sets.push_back(ks(i));
    std::vector<std::vector<Dyadic>> out(count, std::vector<Dyadic>(count));
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = i + 1; j < count; ++j) {
            Dyadic d = approx_dyadic(hausdorff_finite(*sets[i].covering(level), *sets[j].covering(level)), level);
            out[i][j] = out[j][i] = d;
        }
    return out;
}

TBSet tb_union(const TBSet& a, const TBSet& b) {
    if (a.dimension() != b.dimension()) throw std::invalid_argument("tb_union: dimension mismatch");
    return TBSet(std::make_shared<UnionImpl>(a, b));
}

TBSet tb_affine(const Dyadic& c, const Point& t, const TBSet& a) {
    if (c.sign() <= 0) throw std::invalid_argument("tb_affine: scale " + c.to_decimal() + " is not positive");
    if (t.size() != a.dimension()) throw std::invalid_argument("tb_affine: dimension mismatch");
    return TBSet(std::make_shared<AffineImpl>(c, t, a));
}

TBSet tb_image(PointMap f, ModulusFn omega, const TBSet& a, std::size_t out_dimension) {
    return TBSet(std::make_shared<ImageImpl>(std::move(f), std::move(omega), a, out_dimension));
}

}  // namespace certoset
