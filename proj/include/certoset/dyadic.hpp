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

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace certoset {

/// Exact binary fraction mantissa * 2^exponent.
///
/// Always kept canonical: the mantissa is odd, or the value is zero with
/// exponent 0.  Canonical form makes structural equality coincide with
/// numeric equality, which the covering deduplication relies on.
class Dyadic {
public:
    Dyadic() = default;
    Dyadic(long v);  // NOLINT(google-explicit-constructor)
    Dyadic(mpz_class mantissa, std::int64_t exponent);

    /// 2^e
    static Dyadic pow2(std::int64_t e);

    const mpz_class& mantissa() const { return mantissa_; }
    std::int64_t exponent() const { return exponent_; }

    int sign() const { return sgn(mantissa_); }
    bool is_zero() const { return mantissa_ == 0; }
    bool is_integer() const { return exponent_ >= 0; }

    Dyadic operator-() const;
    friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
    friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
    friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
    Dyadic& operator+=(const Dyadic& o) { return *this = *this + o; }
    Dyadic& operator-=(const Dyadic& o) { return *this = *this - o; }

    /// Multiply by 2^k (exact).
    Dyadic shifted(std::int64_t k) const;
    Dyadic abs() const { return sign() < 0 ? -*this : *this; }

    /// Largest multiple of 2^-p that is <= *this.
    Dyadic floor_to(std::int64_t p) const;
    /// Smallest multiple of 2^-p that is >= *this.
    Dyadic ceil_to(std::int64_t p) const;
    /// Nearest multiple of 2^-p, ties towards -infinity.
    Dyadic round_to(std::int64_t p) const;

    /// Integer k with *this == k * 2^-p; requires the value to lie on that grid.
    mpz_class scaled_integer(std::int64_t p) const;

    friend bool operator==(const Dyadic& a, const Dyadic& b) {
        return a.exponent_ == b.exponent_ && a.mantissa_ == b.mantissa_;
    }
    friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

    /// "m*2^e" for non-integers, plain decimal integer otherwise.
    std::string to_string() const;
    /// Exact finite decimal expansion, e.g. "-0.375".
    std::string to_decimal() const;
    double to_double() const;

    /// Accepts "m*2^e", integers, finite decimals that are dyadic ("0.75")
    /// and fractions "a/b" with b a power of two.  Throws std::invalid_argument
    /// on anything else.
    static Dyadic parse(std::string_view text);

private:
    void normalize();

    mpz_class mantissa_{0};
    std::int64_t exponent_ = 0;
};

Dyadic min(const Dyadic& a, const Dyadic& b);
Dyadic max(const Dyadic& a, const Dyadic& b);

/// Exact rational value of a decimal or fraction literal ("0.1", "-3/10",
/// "1.5e-3" is not accepted).  Returns numerator/denominator in lowest terms
/// with positive denominator.
struct Rational {
    mpz_class num;
    mpz_class den;
};
Rational parse_rational(std::string_view text);
/// Dyadic value of r if its denominator is a power of two.
bool rational_is_dyadic(const Rational& r);
Dyadic rational_to_dyadic(const Rational& r);

}  // namespace certoset
