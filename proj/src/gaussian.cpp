#include "plurisign/gaussian.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <stdexcept>

namespace plurisign {

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational q(static_cast<long>(num), static_cast<long>(den));
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw std::invalid_argument("empty rational");
  if (s.front() == '+') s.erase(s.begin());
  auto valid = [](const std::string& part) {
    std::size_t k = (!part.empty() && part.front() == '-') ? 1 : 0;
    if (k == part.size()) return false;
    return std::all_of(part.begin() + static_cast<long>(k), part.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
  };
  const auto slash = s.find('/');
  const std::string num = s.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid(num) || !valid(den) || den.front() == '-') {
    throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
  }
  Rational q;
  q.get_num() = mpz_class(num);
  q.get_den() = mpz_class(den);
  if (sgn(q.get_den()) == 0) throw std::invalid_argument("zero denominator");
  q.canonicalize();
  return q;
}

GaussianRational::GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussianRational GaussianRational::i_power(long k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {Rational(1), Rational(0)};
    case 1: return {Rational(0), Rational(1)};
    case 2: return {Rational(-1), Rational(0)};
    default: return {Rational(0), Rational(-1)};
  }
}

GaussianRational GaussianRational::inverse() const {
  const Rational n = norm();
  if (sgn(n) == 0) throw std::domain_error("division by zero in Q(i)");
  return {re_ / n, -im_ / n};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  Rational r = re_ * o.re_ - im_ * o.im_;
  Rational m = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(m);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) { return *this *= o.inverse(); }

std::string GaussianRational::str() const {
  if (is_real()) return re_.get_str();
  std::string imag;
  if (im_ == 1) {
    imag = "i";
  } else if (im_ == -1) {
    imag = "-i";
  } else {
    imag = im_.get_str() + "i";
  }
  if (sgn(re_) == 0) return imag;
  if (imag.front() != '-') imag = "+" + imag;
  return re_.get_str() + imag;
}

GaussianRational parse_gaussian(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c)) && c != '*') s.push_back(c);
  }
  if (s.empty()) throw std::invalid_argument("empty number");
  if (s.back() != 'i') {
    if (s.front() == 'i') {
      // "i3" style from "i*3"
      return {Rational(0), parse_rational(s.substr(1))};
    }
    return {parse_rational(s), Rational(0)};
  }
  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != '/') {
      split = k;
      break;
    }
  }
  Rational re(0);
  std::string imag = s;
  if (split != std::string::npos) {
    re = parse_rational(s.substr(0, split));
    imag = s.substr(split);
  }
  Rational im;
  if (imag.empty() || imag == "+") {
    im = 1;
  } else if (imag == "-") {
    im = -1;
  } else {
    im = parse_rational(imag);
  }
  return {re, im};
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.str(); }

}  // namespace plurisign
