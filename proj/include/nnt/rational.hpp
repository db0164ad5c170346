#pragma once

#include <gmpxx.h>

#include <cctype>
#include <stdexcept>
#include <string>

namespace nnt {

// Exact rational scalar. GMP keeps values reduced with positive denominator
// as long as construction goes through the canonicalizing helpers below;
// arithmetic on canonical operands stays canonical.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Accepts "p" or "p/q" in base 10, optional leading sign on p.
inline Rational rat_parse(const std::string& s) {
  auto bad = [&] { throw std::invalid_argument("malformed rational: '" + s + "'"); };
  if (s.empty()) bad();
  std::size_t i = 0;
  if (s[i] == '-' || s[i] == '+') ++i;
  std::size_t digits = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++digits;
  if (digits == 0) bad();
  if (i != s.size()) {
    if (s[i] != '/') bad();
    ++i;
    digits = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++digits;
    if (digits == 0 || i != s.size()) bad();
  }
  Rational q(s);
  if (q.get_den() == 0) throw std::invalid_argument("rational with zero denominator: '" + s + "'");
  q.canonicalize();
  return q;
}

inline std::string rat_str(const Rational& q) { return q.get_str(); }

}  // namespace nnt
