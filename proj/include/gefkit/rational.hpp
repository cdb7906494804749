// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace gefkit {

/// Exact rational number on int64, always kept normalized (gcd 1, den > 0).
/// Used for inequality coefficients and term weights, where float rounding
/// would defeat the point of the identity checks.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) { normalize(); }
  constexpr Rational(std::int64_t num) : num_(num), den_(1) {}  // NOLINT(google-explicit-constructor)

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return make_checked(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return make_checked(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return make_checked(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
    return make_checked(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

  bool is_zero() const { return num_ == 0; }

  /// Renders "p/q", or just "p" for integers.
  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  using i128 = __int128;

  static Rational make_checked(i128 num, i128 den) {
    if (den < 0) { num = -num; den = -den; }
    const i128 g = gcd128(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
    constexpr i128 lim = INT64_MAX;
    if (num > lim || num < -lim || den > lim)
      throw std::overflow_error("Rational: int64 overflow");
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
  }

  static i128 gcd128(i128 a, i128 b) {
    while (b != 0) { const i128 t = a % b; a = b; b = t; }
    return a < 0 ? -a : a;
  }

  void normalize() {
    if (den_ == 0) throw std::domain_error("Rational: zero denominator");
    if (den_ < 0) { num_ = -num_; den_ = -den_; }
    const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) { num_ /= g; den_ /= g; }
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Coefficient affine in the decomposition ratio gamma2: c0 + c1*gamma2.
/// The four-party lower-bound chain carries gamma2 symbolically.
struct GammaAffine {
  Rational c0{0};
  Rational c1{0};

  GammaAffine() = default;
  GammaAffine(Rational constant) : c0(constant) {}  // NOLINT(google-explicit-constructor)
  GammaAffine(Rational constant, Rational gamma_coeff) : c0(constant), c1(gamma_coeff) {}

  friend GammaAffine operator+(const GammaAffine& a, const GammaAffine& b) {
    return {a.c0 + b.c0, a.c1 + b.c1};
  }
  friend GammaAffine operator*(const Rational& s, const GammaAffine& a) {
    return {s * a.c0, s * a.c1};
  }
  friend bool operator==(const GammaAffine& a, const GammaAffine& b) {
    return a.c0 == b.c0 && a.c1 == b.c1;
  }
  friend bool operator!=(const GammaAffine& a, const GammaAffine& b) { return !(a == b); }

  bool is_zero() const { return c0.is_zero() && c1.is_zero(); }

  std::string str() const {
    if (c1.is_zero()) return c0.str();
    std::string g = "(" + c1.str() + ")*g2";
    if (c0.is_zero()) return g;
    return c0.str() + "+" + g;
  }
};

}  // namespace gefkit
