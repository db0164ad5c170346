#pragma once

#include <array>
#include <stdexcept>

#include "nnt/matrix.hpp"

namespace nnt {

// Fibre model: R^{4n} with the neutral metric h(u,v) = t(u) S v,
// S = diag(I_2n, -I_2n). Basis vectors 1..2n are space-like, the rest
// time-like. All index conventions below follow the 4-block splitting
// of 4n into rows/columns {1..n, n+1..2n, 2n+1..3n, 3n+1..4n}.
struct NeutralSpace {
  int n = 1;
  int dim() const { return 4 * n; }
};

inline void require_n(int n) {
  if (n < 1) throw std::invalid_argument("rank parameter n must be >= 1");
}

inline Mat s_matrix(int n) {
  require_n(n);
  Mat s = Mat::identity(4 * n);
  for (int i = 2 * n; i < 4 * n; ++i) s.at(i, i) = -1;
  return s;
}

// diag(eps, 1, ..., 1), n x n.
inline Mat i_n_eps(int n, int eps) {
  require_n(n);
  Mat m = Mat::identity(n);
  m.at(0, 0) = eps;
  return m;
}

// diag(I_n, I_n, I_n, I_{n,eps}): twists the reference frame so the
// xi-vector pattern below is uniform in the twisted basis b = e I'.
inline Mat i_prime(int n, int eps) {
  require_n(n);
  if (eps != 1 && eps != -1) throw std::invalid_argument("eps must be +1 or -1");
  Mat m = Mat::identity(4 * n);
  m.at(3 * n, 3 * n) = eps;
  return m;
}

// diag(I_n, I_n, -I_n, -I_n); conjugation by it produces the dual
// structure. Coincides with S as a matrix but is kept separate for
// readability at call sites.
inline Mat i_2n2n(int n) { return s_matrix(n); }

// The model 2-step nilpotent matrix: squares to zero, rank 2n.
inline Mat lambda_n(int n) {
  require_n(n);
  Mat m(4 * n, 4 * n);
  Mat id = Mat::identity(n);
  m.set_block(0, n, -id);
  m.set_block(0, 3 * n, id);
  m.set_block(n, 0, id);
  m.set_block(n, 2 * n, id);
  m.set_block(2 * n, n, id);
  m.set_block(2 * n, 3 * n, -id);
  m.set_block(3 * n, 0, id);
  m.set_block(3 * n, 2 * n, id);
  return m;
}

// sign = +1: the model complex structure (squares to -Id, preserves h);
// sign = -1: the model paracomplex structure (squares to +Id, reverses h).
inline Mat lambda_pm(int n, int sign) {
  require_n(n);
  Mat m(4 * n, 4 * n);
  Mat id = Mat::identity(n);
  if (sign == +1) {
    m.set_block(0, n, -id);
    m.set_block(n, 0, id);
    m.set_block(2 * n, 3 * n, -id);
    m.set_block(3 * n, 2 * n, id);
  } else if (sign == -1) {
    m.set_block(0, 2 * n, id);
    m.set_block(n, 3 * n, -id);
    m.set_block(2 * n, 0, id);
    m.set_block(3 * n, n, -id);
  } else {
    throw std::invalid_argument("sign must be +1 or -1");
  }
  return m;
}

// Antidiagonal block pattern; the model second para structure, with
// lambda_pm(n,+1) + j2_model(n) == lambda_n(n).
inline Mat j2_model(int n) {
  require_n(n);
  Mat m(4 * n, 4 * n);
  Mat id = Mat::identity(n);
  m.set_block(0, 3 * n, id);
  m.set_block(n, 2 * n, id);
  m.set_block(2 * n, n, id);
  m.set_block(3 * n, 0, id);
  return m;
}

// Columns xi_1..xi_2n in the twisted basis: xi_i = b_i - b_{2n+i},
// xi_{n+i} = b_{n+i} + b_{3n+i}. Their span is the image (= kernel) of
// lambda_n, and equals the column span of lambda_n itself.
inline Mat xi_model(int n) {
  require_n(n);
  Mat m(4 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    m.at(i, i) = 1;
    m.at(2 * n + i, i) = -1;
    m.at(n + i, n + i) = 1;
    m.at(3 * n + i, n + i) = 1;
  }
  return m;
}

// Dual null vectors: xi'_i = b_i + b_{2n+i}, xi'_{n+i} = b_{n+i} - b_{3n+i},
// normalized so h(xi_i, xi'_j) = 2 delta_ij.
inline Mat xi_prime_model(int n) {
  require_n(n);
  Mat m(4 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    m.at(i, i) = 1;
    m.at(2 * n + i, i) = 1;
    m.at(n + i, n + i) = 1;
    m.at(3 * n + i, n + i) = -1;
  }
  return m;
}

// n x n blocks of a 4n x 4n matrix, 1-based block indices.
struct Blocks4 {
  int n = 1;
  std::array<Mat, 16> b;
  Mat& operator()(int i, int j) { return b[(i - 1) * 4 + (j - 1)]; }
  const Mat& operator()(int i, int j) const { return b[(i - 1) * 4 + (j - 1)]; }
};

inline Blocks4 blocks4(const Mat& a, int n) {
  require_n(n);
  if (a.rows() != static_cast<std::size_t>(4 * n) || a.cols() != static_cast<std::size_t>(4 * n))
    throw std::invalid_argument("blocks4 expects a 4n x 4n matrix");
  Blocks4 g;
  g.n = n;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g.b[i * 4 + j] = a.block(i * n, j * n, n, n);
  return g;
}

inline Mat assemble4(const Blocks4& g) {
  int n = g.n;
  Mat a(4 * n, 4 * n);
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) a.set_block((i - 1) * n, (j - 1) * n, g(i, j));
  return a;
}

inline void require_endo(const Mat& a, int n, const char* who) {
  require_n(n);
  if (a.rows() != static_cast<std::size_t>(4 * n) || a.cols() != static_cast<std::size_t>(4 * n))
    throw std::invalid_argument(std::string(who) + " expects a 4n x 4n matrix");
}

// --- Group membership ------------------------------------------------

inline bool in_so(const Mat& a, int n) {
  require_endo(a, n, "in_so");
  Mat s = s_matrix(n);
  return a.transpose() * s * a == s && a.det() == 1;
}

inline bool in_g(const Mat& a, int n) {
  require_endo(a, n, "in_g");
  if (!in_so(a, n)) return false;
  Mat lam = lambda_n(n);
  return a * lam == lam * a;
}

// The centralizer block pattern: diagonal blocks all equal, and the
// off-diagonal blocks repeat with the displayed signs.
inline bool h_pattern_holds(const Mat& a, int n) {
  Blocks4 p = blocks4(a, n);
  return p(2, 2) == p(1, 1) && p(3, 3) == p(1, 1) && p(4, 4) == p(1, 1) &&
         p(3, 4) == p(2, 1) && p(1, 2) == -p(2, 1) && p(4, 3) == -p(2, 1) &&
         p(1, 3) == p(3, 1) && p(2, 4) == p(3, 1) && p(4, 2) == p(3, 1) &&
         p(1, 4) == p(4, 1) && p(2, 3) == -p(4, 1) && p(3, 2) == -p(4, 1);
}

inline bool in_h(const Mat& a, int n) {
  require_endo(a, n, "in_h");
  return in_so(a, n) && h_pattern_holds(a, n);
}

inline bool in_so_w(const Mat& a, int n) {
  require_endo(a, n, "in_so_w");
  if (!in_so(a, n)) return false;
  Mat w = xi_model(n);  // column span of lambda_n
  return span_contains(w, a * w);
}

// --- Lie algebra membership ------------------------------------------

inline bool in_lie_so(const Mat& x, int n) {
  require_endo(x, n, "in_lie_so");
  Mat s = s_matrix(n);
  return (x.transpose() * s + s * x).is_zero();
}

inline bool in_lie_g(const Mat& x, int n) {
  require_endo(x, n, "in_lie_g");
  if (!in_lie_so(x, n)) return false;
  Mat lam = lambda_n(n);
  return x * lam == lam * x;
}

// h-pattern plus the symmetry side conditions on the generating blocks.
inline bool lie_h_pattern_holds(const Mat& x, int n) {
  if (!h_pattern_holds(x, n)) return false;
  Blocks4 p = blocks4(x, n);
  return p(1, 1).transpose() == -p(1, 1) && p(2, 1).transpose() == p(2, 1) &&
         p(3, 1).transpose() == p(3, 1) && p(4, 1).transpose() == p(4, 1);
}

inline bool in_lie_h(const Mat& x, int n) {
  require_endo(x, n, "in_lie_h");
  return lie_h_pattern_holds(x, n);
}

enum class Group { so, g, h, sow };
enum class Algebra { so, g, h };

inline bool in_group(const Mat& a, int n, Group which) {
  switch (which) {
    case Group::so: return in_so(a, n);
    case Group::g: return in_g(a, n);
    case Group::h: return in_h(a, n);
    case Group::sow: return in_so_w(a, n);
  }
  return false;
}

inline bool in_algebra(const Mat& x, int n, Algebra which) {
  switch (which) {
    case Algebra::so: return in_lie_so(x, n);
    case Algebra::g: return in_lie_g(x, n);
    case Algebra::h: return in_lie_h(x, n);
  }
  return false;
}

// Cayley transform (I+X)(I-X)^{-1}: maps algebra elements without
// eigenvalue 1 into the identity component of the matching group.
inline Mat cayley(const Mat& x) {
  if (!x.is_square()) throw std::invalid_argument("cayley expects a square matrix");
  Mat id = Mat::identity(x.rows());
  Mat m = id - x;
  if (m.det() == 0) throw std::domain_error("cayley transform undefined: 1 is an eigenvalue");
  return (id + x) * m.inverse();
}

}  // namespace nnt
