#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <utility>

#include "nnt/rational.hpp"

namespace nnt {
namespace detail {

inline bool probable_prime(const Integer& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

// Brent's cycle variant of Pollard rho with batched gcds. Input is odd,
// composite and free of small factors; the effort cap keeps the caller
// in charge when a factor is out of reach.
inline std::optional<Integer> rho_factor(const Integer& n, unsigned long step_cap) {
  unsigned long steps = 0;
  for (unsigned long c = 1; c <= 20; ++c) {
    Integer y = 2, g = 1, q = 1, x = 0, ys = 0;
    unsigned long r = 1;
    while (g == 1) {
      if (steps >= step_cap) return std::nullopt;
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
      unsigned long k = 0;
      while (k < r && g == 1) {
        ys = y;
        unsigned long batch = std::min<unsigned long>(128, r - k);
        for (unsigned long i = 0; i < batch; ++i) {
          y = (y * y + c) % n;
          q = q * abs(x - y) % n;
        }
        g = gcd(q, n);
        k += batch;
        steps += batch;
      }
      r *= 2;
    }
    if (g == n) {
      g = 1;
      while (g == 1) {
        ys = (ys * ys + c) % n;
        g = gcd(abs(x - ys), n);
      }
    }
    if (g != 1 && g != n) return g;
  }
  return std::nullopt;
}

inline bool factor_rec(const Integer& n, std::map<Integer, int>& out,
                       unsigned long step_cap) {
  if (n == 1) return true;
  if (probable_prime(n)) {
    ++out[n];
    return true;
  }
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return factor_rec(r, out, step_cap) && factor_rec(r, out, step_cap);
  }
  auto f = rho_factor(n, step_cap);
  if (!f) return false;
  return factor_rec(*f, out, step_cap) && factor_rec(n / *f, out, step_cap);
}

// Prime factorization of a positive integer: small factors by trial
// division, the rest by rho. False when the effort cap was hit.
inline bool factorize(Integer n, std::map<Integer, int>& out,
                      unsigned long step_cap = 1ul << 22) {
  if (n <= 0) return false;
  for (unsigned long p : {2ul, 3ul}) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
      ++out[Integer(p)];
    }
  }
  for (unsigned long p = 5; p <= 100000; p += 6) {
    for (unsigned long d : {p, p + 2}) {
      while (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
        mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), d);
        ++out[Integer(d)];
      }
    }
  }
  return factor_rec(n, out, step_cap);
}

// Square root of -1 modulo an odd prime p = 1 (mod 4), found from the
// first quadratic nonresidue among small bases.
inline std::optional<Integer> sqrt_minus_one_mod(const Integer& p) {
  Integer e = (p - 1) / 4;
  for (unsigned long g = 2; g <= 4096; ++g) {
    Integer t, base = g;
    mpz_powm(t.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    Integer t2 = t * t % p;
    if (t2 == p - 1) return t;
  }
  return std::nullopt;
}

// Cornacchia descent for x^2 + y^2 = p on primes p = 1 (mod 4) or p = 2.
inline std::optional<std::pair<Integer, Integer>> prime_two_squares(const Integer& p) {
  if (p == 2) return std::make_pair(Integer(1), Integer(1));
  if (p % 4 != 1) return std::nullopt;
  auto t = sqrt_minus_one_mod(p);
  if (!t) return std::nullopt;
  Integer a = p, b = *t;
  while (b * b > p) {
    Integer r = a % b;
    a = b;
    b = r;
  }
  Integer y2 = p - b * b;
  if (!mpz_perfect_square_p(y2.get_mpz_t())) return std::nullopt;
  Integer y;
  mpz_sqrt(y.get_mpz_t(), y2.get_mpz_t());
  return std::make_pair(b, y);
}

// x^2 + y^2 = n over the integers: primes 3 (mod 4) must divide n to an
// even power, the rest assembles multiplicatively from the prime case.
inline std::optional<std::pair<Integer, Integer>> two_squares(
    const Integer& n, unsigned long step_cap = 1ul << 22) {
  if (n < 0) return std::nullopt;
  if (n == 0) return std::make_pair(Integer(0), Integer(0));
  std::map<Integer, int> fac;
  if (!factorize(n, fac, step_cap)) return std::nullopt;
  Integer x = 1, y = 0;
  for (const auto& [p, e] : fac) {
    if (p % 4 == 3) {
      if (e % 2 != 0) return std::nullopt;
      Integer s;
      mpz_pow_ui(s.get_mpz_t(), p.get_mpz_t(), e / 2);
      x = x * s;
      y = y * s;
      continue;
    }
    auto ab = prime_two_squares(p);
    if (!ab) return std::nullopt;
    for (int i = 0; i < e; ++i) {
      Integer nx = x * ab->first - y * ab->second;
      y = x * ab->second + y * ab->first;
      x = nx;
    }
  }
  return std::make_pair(abs(x), abs(y));
}

// x^2 + y^2 = q over the rationals; with q = a/b in lowest terms this
// is the integer problem for a b scaled by the denominator.
inline std::optional<std::pair<Rational, Rational>> rational_two_squares(
    const Rational& q, unsigned long step_cap = 1ul << 22) {
  if (q < 0) return std::nullopt;
  auto xy = two_squares(Integer(q.get_num() * q.get_den()), step_cap);
  if (!xy) return std::nullopt;
  Rational den(q.get_den());
  Rational x = Rational(xy->first) / den, y = Rational(xy->second) / den;
  return std::make_pair(x, y);
}

}  // namespace detail
}  // namespace nnt
