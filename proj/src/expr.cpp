#include "plurisign/expr.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace plurisign {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const std::vector<Parameter>& params) : text_(text), params_(params) {}

  Scalar parse() {
    Scalar s = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return s;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("cannot parse '" + std::string(text_) + "' at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Scalar expr() {
    Scalar s = term();
    for (;;) {
      if (accept('+')) {
        s += term();
      } else if (accept('-')) {
        s -= term();
      } else {
        return s;
      }
    }
  }

  Scalar term() {
    Scalar s = unary();
    for (;;) {
      if (accept('*')) {
        s *= unary();
      } else if (accept('/')) {
        const Scalar d = power();
        if (!d.is_constant() || d.is_zero()) fail("division by a non-constant or zero");
        s *= d.constant().inverse();
      } else {
        return s;
      }
    }
  }

  Scalar unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Scalar power() {
    Scalar base = atom();
    if (accept('^')) {
      skip();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected integer exponent");
      base = base.pow(static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start)))));
    }
    return base;
  }

  Scalar atom() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Scalar s = expr();
      expect(')');
      return s;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return Scalar(GaussianRational(Rational(mpz_class(std::string(text_.substr(start, pos_ - start))))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string name(text_.substr(start, pos_ - start));
      if (name == "i") return Scalar::i();
      if (name == "conj" || name == "re" || name == "im" || name == "abs2") {
        expect('(');
        const Scalar arg = expr();
        expect(')');
        if (name == "conj") return arg.conj();
        if (name == "abs2") return arg * arg.conj();
        const GaussianRational half(Rational(1, 2));
        if (name == "re") return (arg + arg.conj()) * half;
        return (arg - arg.conj()) * GaussianRational(Rational(0), Rational(-1, 2));
      }
      auto it = std::find_if(params_.begin(), params_.end(), [&](const Parameter& p) { return p.name == name; });
      if (it == params_.end()) fail("unknown parameter '" + name + "'");
      return it->symbol();
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const std::vector<Parameter>& params_;
  std::size_t pos_ = 0;
};

}  // namespace

Scalar parse_expression(std::string_view text, const std::vector<Parameter>& params) {
  return Parser(text, params).parse();
}

}  // namespace plurisign
