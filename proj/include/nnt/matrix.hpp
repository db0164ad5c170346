#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <vector>

#include "nnt/rational.hpp"

namespace nnt {

// Dense matrix over the rationals, row major. All elimination routines are
// plain fraction arithmetic; GMP keeps intermediate entries exact.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static Mat identity(std::size_t k) {
    Mat m(k, k);
    for (std::size_t i = 0; i < k; ++i) m.at(i, i) = 1;
    return m;
  }

  static Mat diagonal(const std::vector<Rational>& d) {
    Mat m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m.at(i, i) = d[i];
    return m;
  }

  // Convenience for literal fixtures.
  static Mat from_rows(std::initializer_list<std::initializer_list<long>> rows) {
    Mat m(rows.size(), rows.size() ? rows.begin()->size() : 0);
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != m.cols_) throw std::invalid_argument("ragged matrix literal");
      std::size_t j = 0;
      for (long v : row) m.at(i, j++) = v;
      ++i;
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& at(std::size_t i, std::size_t j) {
    check_index(i, j);
    return a_[i * cols_ + j];
  }
  const Rational& at(std::size_t i, std::size_t j) const {
    check_index(i, j);
    return a_[i * cols_ + j];
  }

  bool operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  bool is_zero() const {
    for (const auto& x : a_)
      if (x != 0) return false;
    return true;
  }

  bool is_square() const { return rows_ == cols_; }

  Mat operator+(const Mat& o) const {
    check_same_shape(o);
    Mat r = *this;
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] += o.a_[k];
    return r;
  }

  Mat operator-(const Mat& o) const {
    check_same_shape(o);
    Mat r = *this;
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] -= o.a_[k];
    return r;
  }

  Mat operator-() const {
    Mat r = *this;
    for (auto& x : r.a_) x = -x;
    return r;
  }

  Mat operator*(const Mat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Mat r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Rational& aik = a_[i * cols_ + k];
        if (aik == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) r.a_[i * o.cols_ + j] += aik * o.a_[k * o.cols_ + j];
      }
    return r;
  }

  Mat operator*(const Rational& c) const {
    Mat r = *this;
    for (auto& x : r.a_) x *= c;
    return r;
  }
  friend Mat operator*(const Rational& c, const Mat& m) { return m * c; }

  Mat transpose() const {
    Mat r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  Rational trace() const {
    require_square("trace");
    Rational t = 0;
    for (std::size_t i = 0; i < rows_; ++i) t += at(i, i);
    return t;
  }

  Mat block(std::size_t i0, std::size_t j0, std::size_t r, std::size_t c) const {
    if (i0 + r > rows_ || j0 + c > cols_) throw std::out_of_range("block outside matrix");
    Mat b(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) b.at(i, j) = at(i0 + i, j0 + j);
    return b;
  }

  void set_block(std::size_t i0, std::size_t j0, const Mat& b) {
    if (i0 + b.rows_ > rows_ || j0 + b.cols_ > cols_) throw std::out_of_range("block outside matrix");
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) at(i0 + i, j0 + j) = b.at(i, j);
  }

  Mat col(std::size_t j) const { return block(0, j, rows_, 1); }

  static Mat hcat(const Mat& a, const Mat& b) {
    if (a.rows_ != b.rows_) throw std::invalid_argument("hcat row mismatch");
    Mat r(a.rows_, a.cols_ + b.cols_);
    r.set_block(0, 0, a);
    r.set_block(0, a.cols_, b);
    return r;
  }

  // Reduced row echelon form; optionally reports pivot column indices.
  Mat rref(std::vector<std::size_t>* pivots = nullptr) const {
    Mat m = *this;
    std::size_t lead = 0;
    for (std::size_t r = 0; r < m.rows_ && lead < m.cols_; ++r) {
      std::size_t i = r;
      while (i < m.rows_ && m.at(i, lead) == 0) ++i;
      if (i == m.rows_) {
        ++lead;
        --r;
        continue;
      }
      m.swap_rows(i, r);
      Rational inv = 1 / m.at(r, lead);
      for (std::size_t j = lead; j < m.cols_; ++j) m.at(r, j) *= inv;
      for (std::size_t k = 0; k < m.rows_; ++k) {
        if (k == r || m.at(k, lead) == 0) continue;
        Rational f = m.at(k, lead);
        for (std::size_t j = lead; j < m.cols_; ++j) m.at(k, j) -= f * m.at(r, j);
      }
      if (pivots) pivots->push_back(lead);
      ++lead;
    }
    return m;
  }

  std::size_t rank() const {
    std::vector<std::size_t> piv;
    rref(&piv);
    return piv.size();
  }

  Rational det() const {
    require_square("det");
    Mat m = *this;
    Rational d = 1;
    for (std::size_t c = 0; c < m.cols_; ++c) {
      std::size_t i = c;
      while (i < m.rows_ && m.at(i, c) == 0) ++i;
      if (i == m.rows_) return 0;
      if (i != c) {
        m.swap_rows(i, c);
        d = -d;
      }
      d *= m.at(c, c);
      Rational inv = 1 / m.at(c, c);
      for (std::size_t k = c + 1; k < m.rows_; ++k) {
        if (m.at(k, c) == 0) continue;
        Rational f = m.at(k, c) * inv;
        for (std::size_t j = c; j < m.cols_; ++j) m.at(k, j) -= f * m.at(c, j);
      }
    }
    return d;
  }

  // Solves A X = B; empty result when the system is inconsistent.
  static std::optional<Mat> solve(const Mat& A, const Mat& B) {
    if (A.rows_ != B.rows_) throw std::invalid_argument("solve shape mismatch");
    std::vector<std::size_t> piv;
    Mat aug = hcat(A, B).rref(&piv);
    // A pivot in the right-hand block means an inconsistent row.
    for (std::size_t p : piv)
      if (p >= A.cols_) return std::nullopt;
    Mat x(A.cols_, B.cols_);
    for (std::size_t r = 0; r < piv.size(); ++r)
      for (std::size_t j = 0; j < B.cols_; ++j) x.at(piv[r], j) = aug.at(r, A.cols_ + j);
    return x;
  }

  Mat inverse() const {
    require_square("inverse");
    auto x = solve(*this, identity(rows_));
    if (!x || ((*this) * *x) != identity(rows_)) throw std::domain_error("matrix is singular");
    return *x;
  }

  // Columns form a basis of the null space.
  Mat kernel_basis() const {
    std::vector<std::size_t> piv;
    Mat r = rref(&piv);
    std::vector<bool> is_pivot(cols_, false);
    for (std::size_t p : piv) is_pivot[p] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < cols_; ++j)
      if (!is_pivot[j]) free_cols.push_back(j);
    Mat k(cols_, free_cols.size());
    for (std::size_t f = 0; f < free_cols.size(); ++f) {
      k.at(free_cols[f], f) = 1;
      for (std::size_t p = 0; p < piv.size(); ++p) k.at(piv[p], f) = -r.at(p, free_cols[f]);
    }
    return k;
  }

  // Pivot columns of the original matrix: a basis of the column space.
  Mat column_space_basis() const {
    std::vector<std::size_t> piv;
    rref(&piv);
    Mat b(rows_, piv.size());
    for (std::size_t j = 0; j < piv.size(); ++j)
      for (std::size_t i = 0; i < rows_; ++i) b.at(i, j) = at(i, piv[j]);
    return b;
  }

 private:
  void check_index(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw std::out_of_range("matrix index");
  }
  void check_same_shape(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
  }
  void require_square(const char* op) const {
    if (!is_square()) throw std::invalid_argument(std::string(op) + " requires a square matrix");
  }
  void swap_rows(std::size_t i, std::size_t k) {
    if (i == k) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap(a_[i * cols_ + j], a_[k * cols_ + j]);
  }

  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> a_;
};

// Span utilities for subspaces given by basis columns.

inline bool span_contains(const Mat& basis, const Mat& vectors) {
  if (basis.cols() == 0) return vectors.is_zero();
  return Mat::solve(basis, vectors).has_value();
}

inline bool spans_equal(const Mat& a, const Mat& b) {
  return a.rank() == b.rank() && span_contains(a, b) && span_contains(b, a);
}

}  // namespace nnt
