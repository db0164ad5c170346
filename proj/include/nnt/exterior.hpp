#pragma once

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nnt/matrix.hpp"

namespace nnt {

// Sorts an index tuple in place, returning the sign of the permutation,
// or 0 if an index repeats. Indices are 1-based.
inline int canonicalize_tuple(std::vector<int>& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i)
    for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return 0;
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  return sign;
}

// Homogeneous element of the exterior algebra over a dim-dimensional
// space, with coefficients in a commutative ring R (exact equality
// required of R). Terms are kept on strictly increasing 1-based tuples;
// zero coefficients are dropped eagerly. Degrees above dim are allowed
// and hold only the zero element (no strictly increasing tuple exists).
template <class R>
class AltElem {
 public:
  using Terms = std::map<std::vector<int>, R>;

  AltElem(int dim, int degree) : dim_(dim), degree_(degree) {
    if (dim < 0 || degree < 0)
      throw std::invalid_argument("exterior element with negative dimension or degree");
  }

  static AltElem basis(int dim, int i) {
    AltElem e(dim, 1);
    e.add({i}, R(1));
    return e;
  }

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(std::vector<int> idx, R coeff) {
    if (static_cast<int>(idx.size()) != degree_)
      throw std::invalid_argument("term arity does not match element degree");
    for (int i : idx)
      if (i < 1 || i > dim_) throw std::out_of_range("exterior index out of range");
    int sign = canonicalize_tuple(idx);
    if (sign == 0 || coeff == R()) return;
    if (sign < 0) coeff = -coeff;
    auto it = terms_.find(idx);
    if (it == terms_.end()) {
      terms_.emplace(std::move(idx), std::move(coeff));
    } else {
      it->second += coeff;
      if (it->second == R()) terms_.erase(it);
    }
  }

  R coeff(std::vector<int> idx) const {
    int sign = canonicalize_tuple(idx);
    if (sign == 0) return R();
    auto it = terms_.find(idx);
    if (it == terms_.end()) return R();
    return sign < 0 ? -it->second : it->second;
  }

  bool operator==(const AltElem& o) const {
    return dim_ == o.dim_ && degree_ == o.degree_ && terms_ == o.terms_;
  }
  bool operator!=(const AltElem& o) const { return !(*this == o); }

  AltElem operator+(const AltElem& o) const {
    check_compatible(o);
    AltElem r = *this;
    for (const auto& [idx, c] : o.terms_) r.add(idx, c);
    return r;
  }

  AltElem operator-(const AltElem& o) const {
    check_compatible(o);
    AltElem r = *this;
    for (const auto& [idx, c] : o.terms_) r.add(idx, -c);
    return r;
  }

  AltElem operator-() const {
    AltElem r(dim_, degree_);
    for (const auto& [idx, c] : terms_) r.terms_.emplace(idx, -c);
    return r;
  }

  template <class S>
  AltElem operator*(const S& c) const {
    AltElem r(dim_, degree_);
    for (const auto& [idx, v] : terms_) {
      R w = v * c;
      if (!(w == R())) r.terms_.emplace(idx, std::move(w));
    }
    return r;
  }

 private:
  void check_compatible(const AltElem& o) const {
    if (dim_ != o.dim_ || degree_ != o.degree_)
      throw std::invalid_argument("exterior elements of different shape");
  }

  int dim_;
  int degree_;
  Terms terms_;
};

template <class R>
AltElem<R> wedge(const AltElem<R>& a, const AltElem<R>& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("wedge across different spaces");
  AltElem<R> r(a.dim(), a.degree() + b.degree());
  for (const auto& [ia, ca] : a.terms())
    for (const auto& [ib, cb] : b.terms()) {
      std::vector<int> idx = ia;
      idx.insert(idx.end(), ib.begin(), ib.end());
      r.add(std::move(idx), ca * cb);
    }
  return r;
}

using GradedElement = AltElem<Rational>;

// Column of a matrix as a degree-1 element.
template <class R = Rational>
AltElem<R> column_elem(const Mat& m, std::size_t j) {
  AltElem<R> e(static_cast<int>(m.rows()), 1);
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (m.at(i, j) != 0) e.add({static_cast<int>(i) + 1}, R(m.at(i, j)));
  return e;
}

// Wedge of all columns of m, left to right.
inline GradedElement columns_wedge(const Mat& m) {
  GradedElement r(static_cast<int>(m.rows()), 0);
  r.add({}, 1);
  for (std::size_t j = 0; j < m.cols(); ++j) r = wedge(r, column_elem(m, j));
  return r;
}

// The functorial action of an endomorphism on k-vectors: each factor of
// every term is mapped through the columns. cols[i] must be the image of
// the (i+1)-st basis vector as a degree-1 element.
template <class R>
AltElem<R> induced_endo_action(const std::vector<AltElem<R>>& cols, const AltElem<R>& x) {
  if (static_cast<int>(cols.size()) != x.dim())
    throw std::invalid_argument("endomorphism size does not match element space");
  AltElem<R> r(x.dim(), x.degree());
  for (const auto& [idx, c] : x.terms()) {
    AltElem<R> prod(x.dim(), 0);
    prod.add({}, c);
    for (int i : idx) prod = wedge(prod, cols[i - 1]);
    r = r + prod;
  }
  return r;
}

inline GradedElement induced_endo_action(const Mat& a, const GradedElement& x) {
  std::vector<GradedElement> cols;
  for (std::size_t j = 0; j < a.cols(); ++j) cols.push_back(column_elem(a, j));
  return induced_endo_action(cols, x);
}

// The derivation extension of an endomorphism: Leibniz action replacing
// one factor at a time.
template <class R>
AltElem<R> derivation_action(const std::vector<AltElem<R>>& cols, const AltElem<R>& x) {
  if (static_cast<int>(cols.size()) != x.dim())
    throw std::invalid_argument("endomorphism size does not match element space");
  AltElem<R> r(x.dim(), x.degree());
  for (const auto& [idx, c] : x.terms())
    for (std::size_t p = 0; p < idx.size(); ++p)
      for (const auto& [jdx, w] : cols[idx[p] - 1].terms()) {
        std::vector<int> t = idx;
        t[p] = jdx[0];
        r.add(std::move(t), c * w);
      }
  return r;
}

inline GradedElement derivation_action(const Mat& a, const GradedElement& x) {
  std::vector<GradedElement> cols;
  for (std::size_t j = 0; j < a.cols(); ++j) cols.push_back(column_elem(a, j));
  return derivation_action(cols, x);
}

// Normalized top power of a 2-form: ((-1)^{n(n-1)/2} / n!) theta^n.
inline GradedElement theta_power_xi(const GradedElement& theta, int n) {
  if (theta.degree() != 2) throw std::invalid_argument("theta_power_xi expects a degree-2 element");
  if (n < 1) throw std::invalid_argument("theta_power_xi expects n >= 1");
  GradedElement p = theta;
  Rational factorial = 1;
  for (int k = 2; k <= n; ++k) {
    p = wedge(p, theta);
    factorial *= k;
  }
  Rational c = Rational(1) / factorial;
  if ((n * (n - 1) / 2) % 2 != 0) c = -c;
  return p * c;
}

// Antisymmetric coefficient matrix of a 2-vector and its inverse map.
inline Mat coefficient_matrix(const GradedElement& theta) {
  if (theta.degree() != 2) throw std::invalid_argument("coefficient matrix of a non-2-vector");
  Mat a(theta.dim(), theta.dim());
  for (const auto& [idx, c] : theta.terms()) {
    a.at(idx[0] - 1, idx[1] - 1) = c;
    a.at(idx[1] - 1, idx[0] - 1) = -c;
  }
  return a;
}

inline GradedElement two_vector_from_matrix(const Mat& a) {
  if (!a.is_square() || a.transpose() != -a)
    throw std::invalid_argument("two_vector_from_matrix expects an antisymmetric matrix");
  GradedElement t(static_cast<int>(a.rows()), 2);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j)
      if (a.at(i, j) != 0) t.add({static_cast<int>(i) + 1, static_cast<int>(j) + 1}, a.at(i, j));
  return t;
}

// Whether a 2-vector supported inside span(L) is nondegenerate on L,
// i.e. its (dim L / 2)-th wedge power is nonzero. L is given by basis
// columns; containment of theta in the second exterior power of L is a
// precondition and is verified.
inline bool is_nondegenerate_on(const GradedElement& theta, const Mat& l) {
  if (l.rank() != l.cols()) throw std::invalid_argument("subspace basis columns are dependent");
  if (l.cols() % 2 != 0) throw std::invalid_argument("subspace must have even dimension");
  Mat a = coefficient_matrix(theta);
  if (!span_contains(l, a.column_space_basis()))
    throw std::invalid_argument("theta not contained in the second exterior power of the subspace");
  int k = static_cast<int>(l.cols()) / 2;
  if (k == 0) return true;  // vacuous: containment already forced theta = 0
  GradedElement p = theta;
  for (int i = 2; i <= k; ++i) p = wedge(p, theta);
  return !p.is_zero();
}

}  // namespace nnt
