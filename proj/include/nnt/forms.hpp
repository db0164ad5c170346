#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "nnt/exppoly.hpp"
#include "nnt/exterior.hpp"
#include "nnt/matrix.hpp"

namespace nnt {

// A differential k-form on Q^m with ExpPoly coefficients is an
// alternating element over the cotangent directions dx_1 .. dx_m.
using KForm = AltElem<ExpPoly>;

inline KForm zero_form(int m, int degree) { return KForm(m, degree); }

inline KForm function_form(int m, const ExpPoly& f) {
  if (f.vars() != 0 && f.vars() != m)
    throw std::invalid_argument("function does not live over m variables");
  KForm w(m, 0);
  w.add({}, f);
  return w;
}

inline KForm dx(int m, int i) {
  KForm w(m, 1);
  w.add({i}, ExpPoly(1));
  return w;
}

inline ExpPoly form_partial(const ExpPoly& f, int m, int i) {
  if (f.vars() == 0) return ExpPoly();
  if (f.vars() != m)
    throw std::invalid_argument("form coefficient lives over a different variable count");
  return f.partial(i);
}

inline KForm exterior_d(int m, const ExpPoly& f) {
  KForm w(m, 1);
  for (int i = 1; i <= m; ++i) w.add({i}, form_partial(f, m, i));
  return w;
}

inline KForm exterior_d(const KForm& w) {
  int m = w.dim();
  KForm r(m, w.degree() + 1);
  for (const auto& [idx, c] : w.terms())
    for (int i = 1; i <= m; ++i) {
      std::vector<int> jdx;
      jdx.reserve(idx.size() + 1);
      jdx.push_back(i);
      jdx.insert(jdx.end(), idx.begin(), idx.end());
      r.add(std::move(jdx), form_partial(c, m, i));
    }
  return r;
}

// Matrix with k-form entries, all of one degree over one base.
class FormMat {
 public:
  FormMat(std::size_t rows, std::size_t cols, int m, int degree)
      : rows_(rows), cols_(cols), m_(m), degree_(degree),
        e_(rows * cols, KForm(m, degree)) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("empty form matrix");
  }

  static FormMat from_scalars(const Mat& a, int m) {
    FormMat w(a.rows(), a.cols(), m, 0);
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j)
        if (a.at(i, j) != 0) w.at(i, j).add({}, ExpPoly(a.at(i, j)));
    return w;
  }

  // constant coefficient matrix tensor a scalar form
  static FormMat tensor(const Mat& a, const KForm& w) {
    FormMat r(a.rows(), a.cols(), w.dim(), w.degree());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j)
        if (a.at(i, j) != 0) r.at(i, j) = w * ExpPoly(a.at(i, j));
    return r;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  int vars() const { return m_; }
  int degree() const { return degree_; }

  KForm& at(std::size_t i, std::size_t j) {
    check_index(i, j);
    return e_[i * cols_ + j];
  }
  const KForm& at(std::size_t i, std::size_t j) const {
    check_index(i, j);
    return e_[i * cols_ + j];
  }

  bool is_zero() const {
    for (const KForm& w : e_)
      if (!w.is_zero()) return false;
    return true;
  }

  bool operator==(const FormMat& o) const {
    check_shape(o);
    for (std::size_t k = 0; k < e_.size(); ++k)
      if (!(e_[k] == o.e_[k])) return false;
    return true;
  }
  bool operator!=(const FormMat& o) const { return !(*this == o); }

  FormMat operator+(const FormMat& o) const {
    check_shape(o);
    FormMat r = *this;
    for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = r.e_[k] + o.e_[k];
    return r;
  }

  FormMat operator-(const FormMat& o) const { return *this + (-o); }

  FormMat operator-() const {
    FormMat r = *this;
    for (KForm& w : r.e_) w = -w;
    return r;
  }

  FormMat transpose() const {
    FormMat r(cols_, rows_, m_, degree_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  FormMat block(std::size_t i0, std::size_t j0, std::size_t r, std::size_t c) const {
    if (i0 + r > rows_ || j0 + c > cols_)
      throw std::out_of_range("form matrix block out of range");
    FormMat b(r, c, m_, degree_);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) b.at(i, j) = at(i0 + i, j0 + j);
    return b;
  }

  void set_block(std::size_t i0, std::size_t j0, const FormMat& b) {
    if (b.m_ != m_ || b.degree_ != degree_)
      throw std::invalid_argument("form matrix block of different shape");
    if (i0 + b.rows_ > rows_ || j0 + b.cols_ > cols_)
      throw std::out_of_range("form matrix block out of range");
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) at(i0 + i, j0 + j) = b.at(i, j);
  }

 private:
  void check_index(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw std::out_of_range("form matrix index out of range");
  }
  void check_shape(const FormMat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || m_ != o.m_ || degree_ != o.degree_)
      throw std::invalid_argument("form matrices of different shape");
  }

  std::size_t rows_, cols_;
  int m_, degree_;
  std::vector<KForm> e_;
};

inline FormMat operator*(const Mat& a, const FormMat& w) {
  if (a.cols() != w.rows()) throw std::invalid_argument("form matrix product shape mismatch");
  FormMat r(a.rows(), w.cols(), w.vars(), w.degree());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < w.cols(); ++j) {
      KForm s(w.vars(), w.degree());
      for (std::size_t k = 0; k < a.cols(); ++k)
        if (a.at(i, k) != 0) s = s + w.at(k, j) * ExpPoly(a.at(i, k));
      r.at(i, j) = s;
    }
  return r;
}

inline FormMat operator*(const FormMat& w, const Mat& a) {
  if (w.cols() != a.rows()) throw std::invalid_argument("form matrix product shape mismatch");
  FormMat r(w.rows(), a.cols(), w.vars(), w.degree());
  for (std::size_t i = 0; i < w.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      KForm s(w.vars(), w.degree());
      for (std::size_t k = 0; k < w.cols(); ++k)
        if (a.at(k, j) != 0) s = s + w.at(i, k) * ExpPoly(a.at(k, j));
      r.at(i, j) = s;
    }
  return r;
}

inline FormMat operator*(const FormMat& w, const Rational& c) {
  FormMat r = w;
  for (std::size_t i = 0; i < w.rows(); ++i)
    for (std::size_t j = 0; j < w.cols(); ++j) r.at(i, j) = w.at(i, j) * ExpPoly(c);
  return r;
}

// matrix product with the wedge on entries
inline FormMat wedge(const FormMat& a, const FormMat& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("form matrix product shape mismatch");
  if (a.vars() != b.vars()) throw std::invalid_argument("form matrices over different bases");
  FormMat r(a.rows(), b.cols(), a.vars(), a.degree() + b.degree());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      KForm s(a.vars(), a.degree() + b.degree());
      for (std::size_t k = 0; k < a.cols(); ++k)
        s = s + wedge(a.at(i, k), b.at(k, j));
      r.at(i, j) = s;
    }
  return r;
}

inline FormMat exterior_d(const FormMat& w) {
  FormMat r(w.rows(), w.cols(), w.vars(), w.degree() + 1);
  for (std::size_t i = 0; i < w.rows(); ++i)
    for (std::size_t j = 0; j < w.cols(); ++j) r.at(i, j) = exterior_d(w.at(i, j));
  return r;
}

// First rational point of small height where f does not vanish. A
// nonzero element is a nonzero real-analytic function, so it cannot
// vanish on all of Q^m and the search terminates.
inline std::vector<Rational> nonvanishing_point(const ExpPoly& f, int m) {
  if (f.is_zero()) throw std::invalid_argument("the zero function vanishes everywhere");
  if (m == 0) return {};
  ExpPoly g = f + ExpPoly::constant(m, 0);
  std::vector<Rational> menu = {0};
  for (long h = 1; h <= 16; ++h) {
    menu.push_back(rat(h));
    menu.push_back(rat(-h));
    menu.push_back(rat(1, h + 1));
    menu.push_back(rat(-1, h + 1));
  }
  std::vector<std::size_t> pick(m, 0);
  for (std::size_t level = 0; level < menu.size(); ++level) {
    // all points whose largest menu index equals level
    while (true) {
      bool at_level = false;
      for (std::size_t p : pick)
        if (p == level) at_level = true;
      if (at_level) {
        std::vector<Rational> x(m);
        for (int i = 0; i < m; ++i) x[i] = menu[pick[i]];
        if (!g.eval_certificate(x).empty()) return x;
      }
      int i = 0;
      while (i < m && pick[i] == level) pick[i++] = 0;
      if (i == m) break;
      ++pick[i];
    }
  }
  throw std::logic_error("nonvanishing point search exhausted its menu");
}

// Exact value of f at x, rendered as a sum of c * exp(g) pieces.
inline std::string value_string(const ExpPoly& f, const std::vector<Rational>& x) {
  ExpPoly g = f + ExpPoly::constant(static_cast<int>(x.size()), 0);
  auto cert = g.eval_certificate(x);
  if (cert.empty()) return "0";
  std::string out;
  for (const auto& [expo, c] : cert) {
    std::string piece = c.get_str();
    if (expo != 0) piece += "*exp(" + expo.get_str() + ")";
    if (!out.empty()) out += " + ";
    out += piece;
  }
  return out;
}

inline std::string point_string(const std::vector<Rational>& x) {
  std::string out = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out += ", ";
    out += x[i].get_str();
  }
  return out + ")";
}

}  // namespace nnt
