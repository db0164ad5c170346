#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <utility>

#include "nnt/exppoly.hpp"

namespace nnt {

// Recursive descent for the expression language of the command line:
// rational literals, variables x1..xm, + - * ^, parentheses and
// exp(linear). Multiplication is always explicit.
class ExprParser {
 public:
  ExprParser(std::string src, int m) : src_(std::move(src)), m_(m) {}

  ExpPoly parse() {
    ExpPoly f = expr();
    skip();
    if (pos_ != src_.size()) fail("unexpected trailing input");
    return f;
  }

 private:
  ExpPoly expr() {
    skip();
    bool neg = false;
    if (peek() == '+' || peek() == '-') neg = src_[pos_++] == '-';
    ExpPoly f = term();
    if (neg) f = -f;
    while (true) {
      skip();
      char c = peek();
      if (c != '+' && c != '-') return f;
      ++pos_;
      ExpPoly g = term();
      f = c == '+' ? f + g : f - g;
    }
  }

  ExpPoly term() {
    ExpPoly f = factor();
    while (true) {
      skip();
      if (peek() != '*') return f;
      ++pos_;
      f *= factor();
    }
  }

  ExpPoly factor() {
    ExpPoly f = primary();
    skip();
    if (peek() != '^') return f;
    ++pos_;
    skip();
    long e = digits("a nonnegative exponent");
    ExpPoly p = ExpPoly::constant(m_, 1);
    for (long k = 0; k < e; ++k) p *= f;
    return p;
  }

  ExpPoly primary() {
    skip();
    char c = peek();
    if (c == '(') {
      ++pos_;
      ExpPoly f = expr();
      expect(')');
      return f;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return rational_lit();
    if (c == 'x') {
      ++pos_;
      long i = digits("a variable index");
      if (i < 1 || i > m_)
        fail("variable index out of range for " + std::to_string(m_) + " variables");
      return ExpPoly::variable(m_, static_cast<int>(i));
    }
    if (src_.compare(pos_, 3, "exp") == 0) {
      pos_ += 3;
      expect('(');
      ExpPoly g = expr();
      expect(')');
      auto lam = linear_weights(g, m_);
      if (!lam) fail("exp argument must be linear in the variables with no constant term");
      return ExpPoly::exponential(m_, *lam);
    }
    fail("expected a number, a variable, exp() or a parenthesis");
    return {};
  }

  ExpPoly rational_lit() {
    std::size_t start = pos_;
    digits("a number");
    if (peek() == '/') {
      ++pos_;
      digits("a denominator");
    }
    return ExpPoly::constant(m_, rat_parse(src_.substr(start, pos_ - start)));
  }

  long digits(const char* what) {
    skip();
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (pos_ == start) fail(std::string("expected ") + what);
    return std::stol(src_.substr(start, pos_ - start));
  }

  void expect(char c) {
    skip();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }

  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("parse error at position " + std::to_string(pos_) + " of '" +
                                src_ + "': " + msg);
  }

  std::string src_;
  int m_ = 0;
  std::size_t pos_ = 0;
};

inline ExpPoly parse_exppoly(const std::string& src, int m) {
  return ExprParser(src, m).parse();
}

}  // namespace nnt
