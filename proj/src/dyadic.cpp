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

#include "certoset/dyadic.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace certoset {

namespace {

mpz_class shl(const mpz_class& v, std::uint64_t k) {
    mpz_class r;
    mpz_mul_2exp(r.get_mpz_t(), v.get_mpz_t(), k);
    return r;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

mpz_class parse_integer(std::string_view s) {
    s = trim(s);
    bool neg = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
    mpz_class v(std::string(s), 10);
    return neg ? mpz_class(-v) : v;
}

}  // namespace

Dyadic::Dyadic(long v) : mantissa_(v), exponent_(0) { normalize(); }

Dyadic::Dyadic(mpz_class mantissa, std::int64_t exponent)
    : mantissa_(std::move(mantissa)), exponent_(exponent) {
    normalize();
}

Dyadic Dyadic::pow2(std::int64_t e) { return Dyadic(mpz_class(1), e); }

void Dyadic::normalize() {
    if (mantissa_ == 0) {
        exponent_ = 0;
        return;
    }
    mp_bitcnt_t tz = mpz_scan1(mantissa_.get_mpz_t(), 0);
    if (tz > 0) {
        mpz_tdiv_q_2exp(mantissa_.get_mpz_t(), mantissa_.get_mpz_t(), tz);
        exponent_ += static_cast<std::int64_t>(tz);
    }
}

Dyadic Dyadic::operator-() const {
    Dyadic r = *this;
    r.mantissa_ = -r.mantissa_;
    return r;
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    std::int64_t e = std::min(a.exponent_, b.exponent_);
    mpz_class m = shl(a.mantissa_, static_cast<std::uint64_t>(a.exponent_ - e)) +
                  shl(b.mantissa_, static_cast<std::uint64_t>(b.exponent_ - e));
    return Dyadic(std::move(m), e);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
    if (a.is_zero() || b.is_zero()) return {};
    // product of odd mantissas is odd: already canonical
    return Dyadic(a.mantissa_ * b.mantissa_, a.exponent_ + b.exponent_);
}

Dyadic Dyadic::shifted(std::int64_t k) const {
    if (is_zero()) return *this;
    Dyadic r = *this;
    r.exponent_ += k;
    return r;
}

Dyadic Dyadic::floor_to(std::int64_t p) const {
    if (exponent_ + p >= 0) return *this;
    mpz_class q;
    mpz_fdiv_q_2exp(q.get_mpz_t(), mantissa_.get_mpz_t(), static_cast<mp_bitcnt_t>(-(exponent_ + p)));
    return Dyadic(std::move(q), -p);
}

Dyadic Dyadic::ceil_to(std::int64_t p) const {
    if (exponent_ + p >= 0) return *this;
    mpz_class q;
    mpz_cdiv_q_2exp(q.get_mpz_t(), mantissa_.get_mpz_t(), static_cast<mp_bitcnt_t>(-(exponent_ + p)));
    return Dyadic(std::move(q), -p);
}

Dyadic Dyadic::round_to(std::int64_t p) const {
    Dyadic lo = floor_to(p);
    Dyadic hi = ceil_to(p);
    return (*this - lo) <= (hi - *this) ? lo : hi;
}

mpz_class Dyadic::scaled_integer(std::int64_t p) const {
    if (is_zero()) return 0;
    if (exponent_ + p < 0) throw std::domain_error("dyadic " + to_string() + " is not on grid 2^-" + std::to_string(p));
    return shl(mantissa_, static_cast<std::uint64_t>(exponent_ + p));
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
    int sa = a.sign(), sb = b.sign();
    if (sa != sb) return sa <=> sb;
    if (sa == 0) return std::strong_ordering::equal;
    std::int64_t e = std::min(a.exponent_, b.exponent_);
    int c = cmp(shl(a.mantissa_, static_cast<std::uint64_t>(a.exponent_ - e)),
                shl(b.mantissa_, static_cast<std::uint64_t>(b.exponent_ - e)));
    return c <=> 0;
}

std::string Dyadic::to_string() const {
    if (exponent_ >= 0) return shl(mantissa_, static_cast<std::uint64_t>(exponent_)).get_str();
    return mantissa_.get_str() + "*2^" + std::to_string(exponent_);
}

std::string Dyadic::to_decimal() const {
    if (exponent_ >= 0) return shl(mantissa_, static_cast<std::uint64_t>(exponent_)).get_str();
    auto k = static_cast<unsigned long>(-exponent_);
    mpz_class five;
    mpz_ui_pow_ui(five.get_mpz_t(), 5, k);
    mpz_class digits_value = ::abs(mantissa_) * five;
    std::string digits = digits_value.get_str();
    if (digits.size() <= k) digits.insert(0, k + 1 - digits.size(), '0');
    digits.insert(digits.size() - k, ".");
    return (sign() < 0 ? "-" : "") + digits;
}

double Dyadic::to_double() const {
    if (is_zero()) return 0.0;
    long e = 0;
    double d = mpz_get_d_2exp(&e, mantissa_.get_mpz_t());
    return std::ldexp(d, static_cast<int>(e + exponent_));
}

Dyadic Dyadic::parse(std::string_view text) {
    std::string_view s = trim(text);
    if (auto star = s.find("*2^"); star != std::string_view::npos) {
        mpz_class m = parse_integer(s.substr(0, star));
        mpz_class e = parse_integer(s.substr(star + 3));
        if (!e.fits_slong_p()) throw std::invalid_argument("exponent out of range");
        return Dyadic(std::move(m), e.get_si());
    }
    Rational r = parse_rational(s);
    if (!rational_is_dyadic(r))
        throw std::invalid_argument("'" + std::string(s) + "' is not a dyadic rational");
    return rational_to_dyadic(r);
}

Dyadic min(const Dyadic& a, const Dyadic& b) { return b < a ? b : a; }
Dyadic max(const Dyadic& a, const Dyadic& b) { return a < b ? b : a; }

Rational parse_rational(std::string_view text) {
    std::string_view s = trim(text);
    mpq_class q;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        mpz_class a = parse_integer(s.substr(0, slash));
        mpz_class b = parse_integer(s.substr(slash + 1));
        if (b == 0) throw std::invalid_argument("zero denominator");
        q = mpq_class(a, b);
    } else {
        bool neg = false;
        if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
            neg = s.front() == '-';
            s.remove_prefix(1);
        }
        std::string_view ip = s, fp;
        if (auto dot = s.find('.'); dot != std::string_view::npos) {
            ip = s.substr(0, dot);
            fp = s.substr(dot + 1);
            if (ip.empty() && fp.empty()) throw std::invalid_argument("bad number '" + std::string(text) + "'");
            if (!ip.empty() && !all_digits(ip)) throw std::invalid_argument("bad number '" + std::string(text) + "'");
            if (!fp.empty() && !all_digits(fp)) throw std::invalid_argument("bad number '" + std::string(text) + "'");
        } else if (!all_digits(ip)) {
            throw std::invalid_argument("bad number '" + std::string(text) + "'");
        }
        mpz_class num(std::string(ip.empty() ? "0" : ip) + std::string(fp), 10);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, fp.size());
        q = mpq_class(neg ? mpz_class(-num) : num, den);
    }
    q.canonicalize();
    return {q.get_num(), q.get_den()};
}

bool rational_is_dyadic(const Rational& r) {
    return mpz_popcount(r.den.get_mpz_t()) == 1;
}

Dyadic rational_to_dyadic(const Rational& r) {
    if (!rational_is_dyadic(r)) throw std::invalid_argument("rational is not dyadic");
    auto k = static_cast<std::int64_t>(mpz_scan1(r.den.get_mpz_t(), 0));
    return Dyadic(r.num, -k);
}

}  // namespace certoset
