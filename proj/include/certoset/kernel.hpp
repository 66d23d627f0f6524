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

// Lazy three-valued truth values and the search primitives built on them.
//
// A Kleenean is queried with an effort n and answers True, False or Unknown.
// Answers are committed: once True (False) at effort n, the answer is True
// (False) at every m >= n.  A Sierpinski value is a Kleenean that never
// answers False; "eventually True" is how semi-decisions are observed.
//
// Nondeterministic choices (binary and countable selection) are realized by
// fixed search schedules, so every call is reproducible.  Searches that never
// succeed would diverge; they are cut off at a process-wide effort ceiling and
// throw EffortCeilingExceeded instead.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

namespace certoset {

/// Computation budget: effort n licenses answers of quality 2^-n.
using Effort = std::uint64_t;

enum class Truth { False, True, Unknown };

std::string to_string(Truth t);

class Kleenean {
public:
    enum class Const { False, True, Bottom };

    /// Bottom by default.
    Kleenean();
    static Kleenean constant(Const v);
    static Kleenean from_bool(bool b) { return constant(b ? Const::True : Const::False); }
    static Kleenean bottom() { return constant(Const::Bottom); }
    /// Answers `value` from effort `effort` on, Unknown before.
    static Kleenean committed_at(Effort effort, bool value);

    /// Wraps a query that already has monotone commitment.  Answers are
    /// cached: once committed, the function is not consulted again.
    static Kleenean from_monotone(std::function<Truth(Effort)> query);

    Truth query(Effort n) const;

    /// Returns the constant if this Kleenean is known to be constant.
    const Const* constant_value() const;

private:
    struct Impl;
    explicit Kleenean(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;

    friend class Sierpinski;
};

Kleenean operator&&(const Kleenean& a, const Kleenean& b);
Kleenean operator||(const Kleenean& a, const Kleenean& b);
Kleenean operator!(const Kleenean& a);

enum class LogicOp { And, Or, Neg };
/// Pointwise Kleene logic; `b` is ignored for Neg.
Kleenean k_logic(LogicOp op, const Kleenean& a, const Kleenean& b = Kleenean());

/// Index -> Kleenean; entries are built lazily and cached by consumers.
using KleeneanSeq = std::function<Kleenean(std::size_t)>;

/// Countable disjunction: True iff some element is eventually True, never
/// False.  At effort m elements 0..m are queried at effort m.
Kleenean k_countable_or(KleeneanSeq seq);

/// Kleenean restricted to {True, Unknown}: a False answer is read as Unknown.
class Sierpinski {
public:
    Sierpinski() = default;
    explicit Sierpinski(Kleenean k);
    static Sierpinski top() { return Sierpinski(Kleenean::constant(Kleenean::Const::True)); }
    static Sierpinski bottom() { return Sierpinski(); }
    /// Wraps k without a filtering layer; k must never answer False.
    static Sierpinski trusted(Kleenean k);

    Truth query(Effort n) const { return inner_.query(n); }
    bool is_true_at(Effort n) const { return query(n) == Truth::True; }
    const Kleenean& kleenean() const { return inner_; }

    friend Sierpinski operator&&(const Sierpinski& a, const Sierpinski& b);
    friend Sierpinski operator||(const Sierpinski& a, const Sierpinski& b);

private:
    Kleenean inner_;
};

using SierpinskiSeq = std::function<Sierpinski(std::size_t)>;
Sierpinski s_countable_or(SierpinskiSeq seq);

/// Thrown by search loops that reached the effort ceiling without success.
class EffortCeilingExceeded : public std::runtime_error {
public:
    EffortCeilingExceeded(const std::string& what, Effort ceiling)
        : std::runtime_error(what + ": no answer within effort " + std::to_string(ceiling)), ceiling_(ceiling) {}
    Effort ceiling() const { return ceiling_; }

private:
    Effort ceiling_;
};

/// Effort ceiling for all search loops; 2^24 unless changed.
Effort effort_ceiling();
void set_effort_ceiling(Effort e);

/// Restores the previous ceiling on scope exit.
class ScopedEffortCeiling {
public:
    explicit ScopedEffortCeiling(Effort e) : saved_(effort_ceiling()) { set_effort_ceiling(e); }
    ~ScopedEffortCeiling() { set_effort_ceiling(saved_); }
    ScopedEffortCeiling(const ScopedEffortCeiling&) = delete;
    ScopedEffortCeiling& operator=(const ScopedEffortCeiling&) = delete;

private:
    Effort saved_;
};

enum class Side { Left, Right };

/// Runs both semi-decisions on an alternating effort schedule and returns the
/// first side that answers True.  Requires at least one to be eventually True.
Side select_binary(const Kleenean& a, const Kleenean& b);

/// Dovetailed search over (index, effort): at outer effort m, indices 0..m are
/// queried at effort m and the first True in index order is returned.
/// Requires some element to be eventually True.
std::size_t countable_select(KleeneanSeq seq);

/// f(n) = 1 if k answers True by effort n, else 0.
std::function<unsigned(Effort)> k_to_nat_seq(Kleenean k);

/// Smallest effort <= limit at which k answers True, if any.
std::optional<Effort> first_true_effort(const Kleenean& k, Effort limit);

}  // namespace certoset
