#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace plurisign {

using Rational = mpq_class;

Rational make_rational(std::int64_t num, std::int64_t den = 1);
std::string to_string(const Rational& q);
/// Parses "3", "-2/7". Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// An element re + i*im of Q(i), both parts kept canonical by GMP.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long v) : re_(v), im_(0) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational re) : re_(std::move(re)), im_(0) {}  // NOLINT
  GaussianRational(Rational re, Rational im);

  static GaussianRational i() { return {Rational(0), Rational(1)}; }
  /// i^k for any integer k.
  static GaussianRational i_power(long k);

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_imaginary() const { return sgn(re_) == 0; }

  GaussianRational conj() const { return {re_, -im_}; }
  /// |z|^2, always a nonnegative rational.
  Rational norm() const { return re_ * re_ + im_ * im_; }
  GaussianRational inverse() const;

  GaussianRational operator-() const { return {-re_, -im_}; }
  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  /// "3", "-1/2", "2i", "1+2i", "-i", "1/2-3/4i".
  std::string str() const;

 private:
  Rational re_{0};
  Rational im_{0};
};

/// Accepts the forms produced by GaussianRational::str() plus "i*q" variants.
GaussianRational parse_gaussian(std::string_view text);

std::ostream& operator<<(std::ostream& os, const GaussianRational& z);

}  // namespace plurisign
