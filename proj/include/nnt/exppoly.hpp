#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nnt/rational.hpp"

namespace nnt {

// Element of the function ring spanned by c x^alpha e^{lambda . x} over
// m variables, with rational c and lambda and nonnegative integer
// alpha. Distinct exponentials are linearly independent over the
// polynomial ring, so the kept form is canonical and the zero test is
// exact. An element with zero variables is a plain constant and adapts
// its variable count to the partner of any ring operation, which lets
// the type serve as the coefficient ring of the exterior algebra.
class ExpPoly {
 public:
  // (monomial exponents, exponential weights), both of length vars()
  using Key = std::pair<std::vector<long>, std::vector<Rational>>;
  using Terms = std::map<Key, Rational>;

  ExpPoly() = default;
  ExpPoly(int c) : ExpPoly(Rational(c)) {}
  ExpPoly(const Rational& c) {
    if (c != 0) terms_[Key{{}, {}}] = c;
  }

  static ExpPoly term(int m, const Rational& coeff, std::vector<long> mono,
                      std::vector<Rational> lam) {
    if (m < 0 || static_cast<int>(mono.size()) != m || static_cast<int>(lam.size()) != m)
      throw std::invalid_argument("term data does not match the variable count");
    for (long e : mono)
      if (e < 0) throw std::invalid_argument("negative monomial exponent");
    ExpPoly r;
    r.m_ = m;
    if (coeff != 0) r.terms_[Key{std::move(mono), std::move(lam)}] = coeff;
    return r;
  }

  static ExpPoly constant(int m, const Rational& c) {
    return term(m, c, std::vector<long>(m, 0), std::vector<Rational>(m));
  }

  // the coordinate function x_i, 1-based like exterior indices
  static ExpPoly variable(int m, int i) {
    if (i < 1 || i > m) throw std::out_of_range("variable index out of range");
    std::vector<long> mono(m, 0);
    mono[i - 1] = 1;
    return term(m, 1, std::move(mono), std::vector<Rational>(m));
  }

  static ExpPoly exponential(int m, std::vector<Rational> lam) {
    return term(m, 1, std::vector<long>(m, 0), std::move(lam));
  }

  int vars() const { return m_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const Key& k = terms_.begin()->first;
    for (long e : k.first)
      if (e != 0) return false;
    for (const Rational& l : k.second)
      if (l != 0) return false;
    return true;
  }
  Rational constant_value() const {
    if (!is_constant()) throw std::logic_error("not a constant");
    return terms_.empty() ? Rational(0) : terms_.begin()->second;
  }

  bool operator==(const ExpPoly& o) const {
    if (m_ == o.m_) return terms_ == o.terms_;
    if (m_ != 0 && o.m_ != 0) return false;
    int m = m_ > o.m_ ? m_ : o.m_;
    return promoted(m).terms_ == o.promoted(m).terms_;
  }
  bool operator!=(const ExpPoly& o) const { return !(*this == o); }

  ExpPoly operator+(const ExpPoly& o) const {
    int m = joint_vars(*this, o);
    ExpPoly r = promoted(m);
    for (const auto& [k, c] : o.promoted(m).terms_) r.add_term(k, c);
    return r;
  }

  ExpPoly& operator+=(const ExpPoly& o) { return *this = *this + o; }

  ExpPoly operator-() const {
    ExpPoly r = *this;
    for (auto& [k, c] : r.terms_) c = -c;
    return r;
  }

  ExpPoly operator-(const ExpPoly& o) const { return *this + (-o); }
  ExpPoly& operator-=(const ExpPoly& o) { return *this = *this - o; }

  ExpPoly operator*(const ExpPoly& o) const {
    int m = joint_vars(*this, o);
    ExpPoly a = promoted(m), b = o.promoted(m), r;
    r.m_ = m;
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_) {
        Key k = ka;
        for (int i = 0; i < m; ++i) {
          k.first[i] += kb.first[i];
          k.second[i] += kb.second[i];
        }
        r.add_term(std::move(k), ca * cb);
      }
    return r;
  }

  ExpPoly operator*(const Rational& c) const {
    ExpPoly r;
    r.m_ = m_;
    if (c == 0) return r;
    r.terms_ = terms_;
    for (auto& [k, v] : r.terms_) v *= c;
    return r;
  }

  ExpPoly& operator*=(const ExpPoly& o) { return *this = *this * o; }

  // d/dx_i, 1-based; constants differentiate to zero in any direction
  ExpPoly partial(int i) const {
    if (m_ == 0) return ExpPoly();
    if (i < 1 || i > m_) throw std::out_of_range("partial direction out of range");
    ExpPoly r;
    r.m_ = m_;
    for (const auto& [k, c] : terms_) {
      if (k.first[i - 1] > 0) {
        Key down = k;
        --down.first[i - 1];
        r.add_term(std::move(down), c * rat(k.first[i - 1]));
      }
      if (k.second[i - 1] != 0) r.add_term(k, c * k.second[i - 1]);
    }
    return r;
  }

  // Exact value at a rational point, kept as a map from the exponent
  // value lambda . x to the accumulated polynomial part, i.e. the
  // function value is the sum of part * e^{exponent} over entries.
  std::map<Rational, Rational> eval_certificate(const std::vector<Rational>& x) const {
    if (static_cast<int>(x.size()) != m_)
      throw std::invalid_argument("evaluation point does not match the variable count");
    std::map<Rational, Rational> out;
    for (const auto& [k, c] : terms_) {
      Rational part = c, expo = 0;
      for (int i = 0; i < m_; ++i) {
        for (long e = 0; e < k.first[i]; ++e) part *= x[i];
        expo += k.second[i] * x[i];
      }
      out[expo] += part;
    }
    for (auto it = out.begin(); it != out.end();)
      it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
      Rational a = c;
      if (first) {
        if (a < 0) {
          os << "-";
          a = -a;
        }
      } else {
        os << (a < 0 ? " - " : " + ");
        if (a < 0) a = -a;
      }
      first = false;
      std::vector<std::string> factors;
      for (int i = 0; i < m_; ++i) {
        if (k.first[i] == 0) continue;
        std::string f = "x" + std::to_string(i + 1);
        if (k.first[i] > 1) f += "^" + std::to_string(k.first[i]);
        factors.push_back(f);
      }
      std::string expo = linear_string(k.second);
      if (!expo.empty()) factors.push_back("exp(" + expo + ")");
      if (factors.empty() || a != 1) os << rat_str(a) << (factors.empty() ? "" : "*");
      for (std::size_t i = 0; i < factors.size(); ++i) os << (i ? "*" : "") << factors[i];
    }
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const ExpPoly& p) {
    return os << p.to_string();
  }

 private:
  static std::string linear_string(const std::vector<Rational>& lam) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < lam.size(); ++i) {
      if (lam[i] == 0) continue;
      Rational a = lam[i];
      if (first) {
        if (a < 0) {
          os << "-";
          a = -a;
        }
      } else {
        os << (a < 0 ? " - " : " + ");
        if (a < 0) a = -a;
      }
      first = false;
      if (a != 1) os << rat_str(a) << "*";
      os << "x" << i + 1;
    }
    return os.str();
  }

  static int joint_vars(const ExpPoly& a, const ExpPoly& b) {
    if (a.m_ == 0) return b.m_;
    if (b.m_ == 0 || a.m_ == b.m_) return a.m_;
    throw std::invalid_argument("operands live over different variable counts");
  }

  ExpPoly promoted(int m) const {
    if (m_ == m) return *this;
    if (m_ != 0) throw std::invalid_argument("operands live over different variable counts");
    ExpPoly r;
    r.m_ = m;
    if (!terms_.empty())
      r.terms_[Key{std::vector<long>(m, 0), std::vector<Rational>(m)}] = terms_.begin()->second;
    return r;
  }

  void add_term(Key k, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      terms_.emplace(std::move(k), c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  int m_ = 0;
  Terms terms_;
};

// lambda with f = sum lambda_i x_i, if f has that shape; only such f
// have an exponential e^f inside the ring.
inline std::optional<std::vector<Rational>> linear_weights(const ExpPoly& f, int m) {
  std::vector<Rational> lam(m);
  for (const auto& [key, c] : f.terms()) {
    for (const Rational& l : key.second)
      if (l != 0) return std::nullopt;
    long total = 0;
    int pos = -1;
    for (std::size_t i = 0; i < key.first.size(); ++i) {
      total += key.first[i];
      if (key.first[i] == 1) pos = static_cast<int>(i);
    }
    if (total != 1 || pos < 0) return std::nullopt;
    lam[pos] = c;
  }
  return lam;
}

}  // namespace nnt
