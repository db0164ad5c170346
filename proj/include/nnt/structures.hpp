#pragma once

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nnt/arith.hpp"
#include "nnt/exterior.hpp"
#include "nnt/matrix.hpp"
#include "nnt/neutral.hpp"

namespace nnt {

// A nilpotent structure together with an admissible frame. The frame e
// has det 1 and preserves h; the twisted basis b = e I' intertwines N
// with the model, N b = b Lambda_n. eps is the orientation class of the
// structure and equals det(b).
struct NilpotentStructure {
  int n = 1;
  int eps = 1;
  Mat N;
  Mat frame;

  Mat b() const { return frame * i_prime(n, eps); }
};

inline Rational h_pair(const Mat& s, const Mat& u, const Mat& v) {
  return (u.transpose() * s * v).at(0, 0);
}

// Model two-vectors in twisted coordinates.
inline GradedElement model_theta(int n) {
  return two_vector_from_matrix(s_matrix(n) * lambda_n(n).transpose());
}

inline GradedElement model_theta_cx(int n) {
  require_n(n);
  GradedElement t(4 * n, 2);
  for (int i = 1; i <= n; ++i) {
    t.add({i, n + i}, 1);
    t.add({2 * n + i, 3 * n + i}, rat(-1));
  }
  return t;
}

inline GradedElement model_theta_para(int n) {
  require_n(n);
  GradedElement t(4 * n, 2);
  for (int i = 1; i <= n; ++i) {
    t.add({i, 3 * n + i}, 1);
    t.add({n + i, 2 * n + i}, 1);
  }
  return t;
}

// The two-form h(X., .) of a compatible endomorphism, as a two-vector.
inline GradedElement theta_of_endo(int n, const Mat& x) {
  require_endo(x, n, "theta_of_endo");
  Mat a = s_matrix(n) * x.transpose();
  if (a.transpose() != -a)
    throw std::invalid_argument("endomorphism is not skew with respect to h");
  return two_vector_from_matrix(a);
}

inline std::optional<std::string> structure_matrix_failure(int n, const Mat& N) {
  require_endo(N, n, "nilpotent structure");
  if (!(N * N).is_zero()) return "N squared is not zero";
  if (N.rank() != static_cast<std::size_t>(2 * n)) return "N does not have rank 2n";
  Mat sn = s_matrix(n) * N;
  if (sn.transpose() != -sn) return "h(N., .) is not antisymmetric";
  return std::nullopt;
}

namespace detail {

// Axes completing span(cols) to the full space, found by row reduction.
inline Mat complement_axes(const Mat& cols) {
  std::size_t d = cols.rows();
  std::vector<std::size_t> pivots;
  Mat::hcat(cols, Mat::identity(d)).rref(&pivots);
  Mat c(d, d - cols.cols());
  std::size_t k = 0;
  for (std::size_t p : pivots)
    if (p >= cols.cols()) c.at(p - cols.cols(), k++) = 1;
  if (k != d - cols.cols()) throw std::logic_error("complement axes not found");
  return c;
}

// Replace the complement C by C + L X so that it becomes totally
// isotropic; L must be totally isotropic with h pairing L x C
// nondegenerately. The canonical correction solves h(l_j, c_m) = -G_jm/2.
inline Mat isotropize_complement(const Mat& s, const Mat& l, const Mat& c) {
  Mat g = c.transpose() * s * c;
  Mat m = l.transpose() * s * c;
  auto x = Mat::solve(m.transpose(), g * rat(-1, 2));
  if (!x) throw std::logic_error("isotropic correction system is singular");
  return c + l * *x;
}

// b-basis from xi and xi' columns, inverting xi_i = b_i - b_{2n+i},
// xi'_i = b_i + b_{2n+i}, xi_{n+i} = b_{n+i} + b_{3n+i},
// xi'_{n+i} = b_{n+i} - b_{3n+i}.
inline Mat frame_from_xi(int n, const Mat& xi, const Mat& xip) {
  Mat b(4 * n, 4 * n);
  for (int i = 0; i < 2 * n; ++i) b.set_block(0, i, (xi.col(i) + xip.col(i)) * rat(1, 2));
  for (int i = 0; i < n; ++i) {
    b.set_block(0, 2 * n + i, (xip.col(i) - xi.col(i)) * rat(1, 2));
    b.set_block(0, 3 * n + i, (xi.col(n + i) - xip.col(n + i)) * rat(1, 2));
  }
  return b;
}

// Split a twisted basis b into the frame e = b I' and the orientation
// eps = det b.
inline std::pair<Mat, int> orient_frame(int n, const Mat& b) {
  Rational d = b.det();
  if (d != 1 && d != -1) throw std::logic_error("candidate frame is not an isometry");
  int eps = d == 1 ? 1 : -1;
  return {b * i_prime(n, eps), eps};
}

}  // namespace detail

// Admissible frame of a nilpotent structure matrix: returns (e, eps)
// with e of det 1 preserving h and N (e I') = (e I') Lambda_n. The
// orientation eps does not depend on the choices made here.
inline std::pair<Mat, int> admissible_frame(int n, const Mat& N) {
  if (auto why = structure_matrix_failure(n, N))
    throw std::invalid_argument("not a nilpotent structure: " + *why);
  Mat s = s_matrix(n);
  Mat l = N.column_space_basis();
  Mat lp = detail::isotropize_complement(s, l, detail::complement_axes(l));

  // Darboux pairs for the symplectic form w(y, y') = h(N y, y') on the
  // isotropic complement, normalized to w(u_i, v_i) = 4.
  Mat t = N.transpose() * s;
  auto omega = [&](const Mat& a, const Mat& b) { return (a.transpose() * t * b).at(0, 0); };
  std::vector<Mat> rem;
  for (std::size_t j = 0; j < lp.cols(); ++j) rem.push_back(lp.col(j));
  std::vector<Mat> us, vs;
  while (!rem.empty()) {
    std::size_t p = rem.size(), q = rem.size();
    for (std::size_t a = 0; a < rem.size() && p == rem.size(); ++a)
      for (std::size_t b = a + 1; b < rem.size(); ++b)
        if (omega(rem[a], rem[b]) != 0) {
          p = a;
          q = b;
          break;
        }
    if (p == rem.size()) throw std::logic_error("symplectic form degenerated during reduction");
    Mat u = rem[p];
    Mat v = rem[q] * (rat(4) / omega(rem[p], rem[q]));
    rem.erase(rem.begin() + q);
    rem.erase(rem.begin() + p);
    for (Mat& w : rem)
      w = w - u * (omega(w, v) / 4) - v * (omega(u, w) / 4);
    us.push_back(u);
    vs.push_back(v);
  }

  Mat xi(4 * n, 2 * n), xip(4 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    xip.set_block(0, i, us[i]);
    xip.set_block(0, n + i, vs[i]);
    xi.set_block(0, n + i, (N * us[i]) * rat(1, 2));
    xi.set_block(0, i, (N * vs[i]) * rat(-1, 2));
  }
  return detail::orient_frame(n, detail::frame_from_xi(n, xi, xip));
}

inline NilpotentStructure from_matrix(int n, const Mat& N) {
  auto [e, eps] = admissible_frame(n, N);
  return {n, eps, N, e};
}

inline std::optional<std::string> axiom_failure(const NilpotentStructure& s) {
  if (s.eps != 1 && s.eps != -1) return "eps must be +1 or -1";
  if (auto why = structure_matrix_failure(s.n, s.N)) return why;
  require_endo(s.frame, s.n, "frame");
  Mat sm = s_matrix(s.n);
  Mat im = s.N.column_space_basis();
  if (!(im.transpose() * sm * im).is_zero()) return "image of N is not totally isotropic";
  if (s.frame.transpose() * sm * s.frame != sm) return "frame does not preserve h";
  if (s.frame.det() != 1) return "frame does not have determinant 1";
  Mat b = s.b();
  if (s.N * b != b * lambda_n(s.n)) return "frame does not intertwine N with the model";
  return std::nullopt;
}

inline bool verify_axioms(const NilpotentStructure& s) { return !axiom_failure(s); }

inline Mat xi_vectors(const NilpotentStructure& s) { return s.b() * xi_model(s.n); }
inline Mat xi_prime_vectors(const NilpotentStructure& s) { return s.b() * xi_prime_model(s.n); }

inline GradedElement theta_of(const NilpotentStructure& s) { return theta_of_endo(s.n, s.N); }
inline GradedElement xi_of(const NilpotentStructure& s) { return columns_wedge(xi_vectors(s)); }

// Reconstruction of the structure whose image is span(l) and whose
// two-form is theta; inverse to theta_of on every valid input.
inline NilpotentStructure from_theta(int n, const Mat& l, const GradedElement& theta) {
  require_n(n);
  if (l.rows() != static_cast<std::size_t>(4 * n) || l.cols() != static_cast<std::size_t>(2 * n))
    throw std::invalid_argument("subspace must be given by 2n basis columns of height 4n");
  if (l.rank() != static_cast<std::size_t>(2 * n))
    throw std::invalid_argument("subspace basis columns are dependent");
  Mat s = s_matrix(n);
  if (!(l.transpose() * s * l).is_zero())
    throw std::invalid_argument("subspace must be totally isotropic");
  if (theta.dim() != 4 * n || theta.degree() != 2)
    throw std::invalid_argument("theta must be a two-vector on the 4n-dimensional space");
  if (!is_nondegenerate_on(theta, l))
    throw std::invalid_argument("theta is degenerate on the subspace");
  Mat N = -(coefficient_matrix(theta) * s);
  return from_matrix(n, N);
}

// Transition between the twisted bases of two structures on the same
// space; for frames of one structure it lies in the model group G.
inline Mat transition(const NilpotentStructure& a, const NilpotentStructure& b) {
  if (a.n != b.n) throw std::invalid_argument("transition requires structures of equal rank");
  return a.b().inverse() * b.b();
}

// The dual structure of the record: the roles of xi and xi' swap. An
// exact involution; the image of the dual is spanned by xi'.
inline NilpotentStructure dual(const NilpotentStructure& s) {
  Mat k = i_2n2n(s.n);
  Mat b = s.b();
  Mat nd = b * (k * lambda_n(s.n) * k) * b.inverse();
  return {s.n, s.eps, nd, s.frame * k};
}

// The compatible triple carried by the frame: I is a complex structure
// preserving h, J1 and J2 are product structures reversing h, and
// I J1 = J2. N splits as I + J2 and the dual as I - J2.
struct SplitTriple {
  int n = 1;
  int eps = 1;
  Mat frame;
  Mat I;
  Mat J1;
  Mat J2;

  Mat b() const { return frame * i_prime(n, eps); }
};

inline SplitTriple split(const NilpotentStructure& s) {
  Mat b = s.b();
  Mat binv = b.inverse();
  return {s.n,
          s.eps,
          s.frame,
          b * lambda_pm(s.n, +1) * binv,
          b * lambda_pm(s.n, -1) * binv,
          b * j2_model(s.n) * binv};
}

inline Mat assemble_matrix(const SplitTriple& t, const Rational& r, const Rational& c,
                           const Rational& s) {
  if (r == 0) throw std::invalid_argument("assemble requires r nonzero");
  if (c * c + s * s != 1) throw std::invalid_argument("assemble requires c^2 + s^2 = 1");
  return (t.I - t.J1 * s + t.J2 * c) * r;
}

inline NilpotentStructure assemble(const SplitTriple& t, const Rational& r, const Rational& c,
                                   const Rational& s) {
  Mat N = assemble_matrix(t, r, c, s);
  Mat b = t.b();
  if (N * b == b * lambda_n(t.n)) return {t.n, t.eps, N, t.frame};
  return from_matrix(t.n, N);
}

inline bool is_cx_structure(int n, const Mat& x) {
  require_endo(x, n, "is_cx_structure");
  Mat s = s_matrix(n);
  return x * x == -Mat::identity(4 * n) && x.transpose() * s * x == s;
}

inline bool is_para_structure(int n, const Mat& x) {
  require_endo(x, n, "is_para_structure");
  Mat s = s_matrix(n);
  return x * x == Mat::identity(4 * n) && x.transpose() * s * x == -s;
}

namespace detail {

// Clear denominators and common content column by column; rescaling a
// column only moves its q-values by a square.
inline Mat primitive_columns(const Mat& a) {
  Mat out = a;
  for (std::size_t j = 0; j < out.cols(); ++j) {
    Integer l = 1;
    for (std::size_t i = 0; i < out.rows(); ++i)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), out.at(i, j).get_den_mpz_t());
    Integer g = 0;
    for (std::size_t i = 0; i < out.rows(); ++i) {
      Rational v = out.at(i, j) * Rational(l);
      out.at(i, j) = v;
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_num_mpz_t());
    }
    if (g > 1)
      for (std::size_t i = 0; i < out.rows(); ++i) out.at(i, j) /= Rational(g);
  }
  return out;
}

inline Integer round_to_integer(const Rational& x) {
  Rational y = x + rat(1, 2);
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
  return q;
}

// Lattice reduction of independent integer columns, Lovasz factor 3/4.
// Keeps the span while shortening the vectors, which tames coefficient
// growth in everything downstream.
inline Mat lll_reduce(const Mat& basis) {
  Mat b = basis;
  std::size_t n = b.cols();
  if (n < 2) return b;
  std::vector<std::vector<Rational>> mu(n, std::vector<Rational>(n));
  std::vector<Rational> bb(n);
  auto dot = [](const Mat& u, const Mat& v) { return (u.transpose() * v).at(0, 0); };
  std::vector<Mat> star(n, Mat(b.rows(), 1));
  auto gram = [&] {
    for (std::size_t i = 0; i < n; ++i) {
      star[i] = b.col(i);
      for (std::size_t j = 0; j < i; ++j) {
        mu[i][j] = dot(b.col(i), star[j]) / bb[j];
        star[i] = star[i] - star[j] * mu[i][j];
      }
      bb[i] = dot(star[i], star[i]);
    }
  };
  gram();
  std::size_t k = 1;
  while (k < n) {
    for (std::size_t j = k; j-- > 0;) {
      Integer r = round_to_integer(mu[k][j]);
      if (r != 0) {
        b.set_block(0, k, b.col(k) - b.col(j) * Rational(r));
        for (std::size_t l = 0; l < j; ++l) mu[k][l] = mu[k][l] - mu[j][l] * Rational(r);
        mu[k][j] = mu[k][j] - Rational(r);
      }
    }
    Rational lovasz = (rat(3, 4) - mu[k][k - 1] * mu[k][k - 1]) * bb[k - 1];
    if (bb[k] >= lovasz) {
      ++k;
    } else {
      Mat t = b.col(k);
      b.set_block(0, k, b.col(k - 1));
      b.set_block(0, k - 1, t);
      Rational m = mu[k][k - 1];
      Rational bnew = bb[k] + m * m * bb[k - 1];
      mu[k][k - 1] = m * bb[k - 1] / bnew;
      bb[k] = bb[k - 1] * bb[k] / bnew;
      bb[k - 1] = bnew;
      for (std::size_t j = 0; j + 1 < k; ++j) std::swap(mu[k][j], mu[k - 1][j]);
      for (std::size_t i = k + 1; i < n; ++i) {
        Rational ti = mu[i][k];
        mu[i][k] = mu[i][k - 1] - m * ti;
        mu[i][k - 1] = ti + mu[k][k - 1] * mu[i][k];
      }
      k = std::max<std::size_t>(1, k - 1);
    }
  }
  return b;
}

// Every integer point of the rational kernel of a, as an LLL-reduced
// basis. Columns are embedded under x -> (2^t a x, x); once the weight
// dominates, the reduced vectors whose head vanishes span the full
// kernel lattice, not merely the sublattice some rational basis
// generates, and saturation is what keeps the entries small.
inline Mat integer_kernel(const Mat& a) {
  Mat ai = primitive_columns(a.transpose()).transpose();
  std::size_t m = ai.rows(), n = ai.cols();
  std::size_t dim = n - ai.rank();
  if (dim == 0) return Mat(n, 0);
  std::size_t bits = 1;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (ai.at(i, j) != 0)
        bits = std::max(bits, mpz_sizeinbase(ai.at(i, j).get_num_mpz_t(), 2));
  std::size_t t = bits + n + 8;
  for (int round = 0; round < 5; ++round, t *= 2) {
    Integer weight;
    mpz_ui_pow_ui(weight.get_mpz_t(), 2ul, t);
    Mat b(m + n, n);
    b.set_block(0, 0, ai * Rational(weight));
    b.set_block(m, 0, Mat::identity(n));
    Mat r = lll_reduce(b);
    Mat out(n, 0);
    for (std::size_t j = 0; j < n; ++j)
      if (r.block(0, j, m, 1) == Mat(m, 1)) out = Mat::hcat(out, r.block(m, j, n, 1));
    if (out.cols() == dim) return out;
  }
  throw std::logic_error("integer kernel reduction did not separate");
}

// Replace the complement c0 of span(base) by an I-invariant one: the
// section it defines is averaged over {1, I}, which keeps it a section
// because I squares to minus the identity.
inline Mat invariant_complement(const Mat& ii, const Mat& base, const Mat& c0) {
  if (base.cols() == 0) return c0;
  auto x = Mat::solve(Mat::hcat(base, c0), ii * c0);
  if (!x) throw std::logic_error("complement coordinates are singular");
  Mat g = x->block(0, 0, base.cols(), c0.cols());
  Mat r = x->block(base.cols(), 0, c0.cols(), c0.cols());
  return c0 - base * (g * r) * rat(1, 2);
}

// Square root of a nonnegative rational when it is a perfect square.
// Canonical form makes the test independent on numerator and denominator.
inline std::optional<Rational> exact_sqrt(const Rational& x) {
  if (x < 0) return std::nullopt;
  if (!mpz_perfect_square_p(x.get_num_mpz_t()) ||
      !mpz_perfect_square_p(x.get_den_mpz_t()))
    return std::nullopt;
  Rational r;
  mpz_sqrt(mpq_numref(r.get_mpq_t()), x.get_num_mpz_t());
  mpz_sqrt(mpq_denref(r.get_mpq_t()), x.get_den_mpz_t());
  return r;
}

// Seed step through the complex structure. span(w) is I-invariant and
// carries H(u, v) = h(u, v) - i h(u, I v), a split hermitian form over
// Q(i) whose radical is exactly span(avoid). Gram-Schmidt with full
// pivoting either meets a null vector outright or diagonalizes modulo
// the radical; a pair of diagonal entries of opposite sign asks for a
// norm ratio as a sum of two squares, and when a third entry is in
// play the target moves with a free parameter, so a short sweep finds
// a representable one.
inline std::optional<Mat> hermitian_seed(const Mat& s, const Mat& ii, const Mat& w,
                                         const Mat& avoid) {
  auto independent = [&](const Mat& y) {
    return avoid.cols() == 0 || Mat::hcat(avoid, y).rank() == avoid.cols() + 1;
  };
  auto digits = [](const Rational& x) {
    return mpz_sizeinbase(x.get_num_mpz_t(), 10) + mpz_sizeinbase(x.get_den_mpz_t(), 10);
  };
  // |d| lies in the norm group of Q(i) iff every prime 3 (mod 4)
  // divides it to an even power; the diagonal entries stay small enough
  // to decide this by full factorization
  auto norm_clean = [](const Rational& d) {
    Integer m = abs(Integer(d.get_num() * d.get_den()));
    std::map<Integer, int> fac;
    if (!factorize(m, fac)) return false;
    for (const auto& [p, e] : fac)
      if (p % 4 == 3 && e % 2 != 0) return false;
    return true;
  };
  std::vector<Mat> us;
  std::vector<Rational> ds;
  Mat constraints = avoid;
  Mat basis = w;
  while (true) {
    // full pivoting over basis vectors and small combinations: a clean
    // pivot makes every later opposite-sign ratio a norm outright, so
    // cleanliness wins over size, and a fresh reduced kernel basis each
    // round keeps the diagonal entries short
    Mat q = basis.transpose() * s * basis;
    std::vector<std::pair<Mat, Rational>> cands;
    auto consider = [&](const Mat& v, const Rational& d) -> std::optional<Mat> {
      if (d == 0) {
        if (independent(v)) return v;
        return std::nullopt;  // radical direction
      }
      cands.emplace_back(v, d);
      return std::nullopt;
    };
    for (std::size_t a = 0; a < basis.cols(); ++a) {
      if (auto y = consider(basis.col(a), q.at(a, a))) return *y;
      for (std::size_t b = a + 1; b < basis.cols(); ++b)
        for (long c : {1l, -1l, 2l, -2l}) {
          Rational d = q.at(a, a) + q.at(b, b) * rat(c * c) + q.at(a, b) * rat(2 * c);
          if (auto y = consider(basis.col(a) + basis.col(b) * rat(c), d)) return *y;
        }
    }
    if (cands.empty()) break;
    std::sort(cands.begin(), cands.end(), [&](const auto& x, const auto& y) {
      return digits(x.second) < digits(y.second);
    });
    std::size_t pick = 0;
    for (std::size_t j = 0; j < cands.size(); ++j)
      if (norm_clean(cands[j].second)) {
        pick = j;
        break;
      }
    Mat u = primitive_columns(cands[pick].first);
    us.push_back(u);
    ds.push_back((u.transpose() * s * u).at(0, 0));
    constraints = Mat::hcat(Mat::hcat(constraints, u), ii * u);
    basis = primitive_columns(integer_kernel(constraints.transpose() * s));
  }
  // pairs of opposite sign, cheapest ratios first
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < us.size(); ++i)
    for (std::size_t j = 0; j < us.size(); ++j)
      if (ds[i] > 0 && ds[j] < 0) pairs.emplace_back(i, j);
  std::sort(pairs.begin(), pairs.end(), [&](const auto& a, const auto& b) {
    return digits(-ds[a.second] / ds[a.first]) < digits(-ds[b.second] / ds[b.first]);
  });
  for (const auto& [i, j] : pairs) {
    auto xy = rational_two_squares(-ds[j] / ds[i]);
    if (!xy) continue;
    return us[i] * xy->first + (ii * us[i]) * xy->second + us[j];
  }
  // ternary targeting: (x^2 + y^2) d_i + v d_j + u d_k = 0 with u and v
  // running over small sums of two squares. Scaling the third entry as
  // well moves the target across square classes, which escapes the
  // local obstructions a fixed target can run into; the tight factoring
  // cap keeps undecidable targets cheap to skip.
  std::vector<std::pair<long, std::pair<Integer, Integer>>> norms;
  for (long v = 1; v <= 40; ++v)
    if (auto zw = two_squares(Integer(v))) norms.emplace_back(v, *zw);
  for (const auto& [i, j] : pairs)
    for (std::size_t k = 0; k < us.size(); ++k) {
      if (k == i || k == j) continue;
      for (const auto& [uval, st] : norms)
        for (const auto& [vval, zw] : norms) {
          Rational tau = (-ds[k] * rat(uval) - ds[j] * rat(vval)) / ds[i];
          if (tau < 0) continue;
          auto xy = rational_two_squares(tau, 1ul << 16);
          if (!xy) continue;
          return us[i] * xy->first + (ii * us[i]) * xy->second +
                 us[j] * Rational(zw.first) + (ii * us[j]) * Rational(zw.second) +
                 us[k] * Rational(st.first) + (ii * us[k]) * Rational(st.second);
        }
    }
  return std::nullopt;
}

// Null vector h-orthogonal to span(avoid) and independent of it. The
// search runs over the saturated integer points of the orthogonal
// complement, where LLL keeps coordinates small: basis vectors, their
// pair sums and the hermitian construction cover everything that
// occurs, and the budgeted sweep kept behind them solves for one pivot
// coordinate exactly, so every small-integer tail costs one square
// test on a discriminant.
inline Mat find_null_seed(const Mat& s, const Mat& ii, const Mat& avoid) {
  Mat w = avoid.cols() == 0 ? Mat::identity(s.rows())
                            : integer_kernel(avoid.transpose() * s);
  Mat q = w.transpose() * s * w;
  int k = static_cast<int>(w.cols());
  auto independent = [&](const Mat& y) {
    return avoid.cols() == 0 || Mat::hcat(avoid, y).rank() == avoid.cols() + 1;
  };
  for (int j = 0; j < k; ++j)
    if (q.at(j, j) == 0 && independent(w.col(j))) return w.col(j);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      for (int sign : {1, -1}) {
        Rational val = q.at(i, i) + q.at(j, j) + q.at(i, j) * rat(2 * sign);
        if (val != 0) continue;
        Mat y = w.col(i) + w.col(j) * rat(sign);
        if (independent(y)) return y;
      }
  if (auto y = hermitian_seed(s, ii, w, avoid)) return *y;
  long budget = 200000;  // tails to try before giving up
  int p = 0;  // pivot coordinate, preferably with a nonzero square
  while (p < k && q.at(p, p) == 0) ++p;
  if (p == k) p = 0;
  Rational a = q.at(p, p);
  std::vector<int> rest;
  for (int j = 0; j < k; ++j)
    if (j != p) rest.push_back(j);
  int m = static_cast<int>(rest.size());
  auto candidate = [&](const Rational& cp, const std::vector<long>& t) -> std::optional<Mat> {
    Mat c(k, 1);
    c.at(p, 0) = cp;
    for (int i = 0; i < m; ++i) c.at(rest[i], 0) = rat(t[i]);
    Mat y = w * c;
    if (independent(y)) return y;
    return std::nullopt;
  };
  for (long height = 1; height <= 64; ++height) {
    std::vector<long> t(m, -height);
    while (true) {
      long sup = 0;
      for (long ti : t) sup = std::max(sup, std::abs(ti));
      bool lead_ok = false;  // skip -t duplicates: first nonzero entry positive
      for (int i = 0; i < m; ++i)
        if (t[i] != 0) {
          lead_ok = t[i] > 0;
          break;
        }
      if (sup == height && lead_ok) {
        if (--budget < 0) throw std::logic_error("null seed search exhausted its budget");
        Rational lin = 0, cst = 0;  // q on pivot + tail: a x^2 + lin x + cst
        for (int i = 0; i < m; ++i) {
          if (t[i] == 0) continue;
          lin += q.at(p, rest[i]) * rat(2 * t[i]);
          for (int j = 0; j < m; ++j)
            if (t[j] != 0) cst += q.at(rest[i], rest[j]) * rat(t[i] * t[j]);
        }
        if (a != 0) {
          if (auto root = exact_sqrt(lin * lin - a * cst * rat(4))) {
            if (auto y = candidate((-lin + *root) / (a * rat(2)), t)) return *y;
            if (*root != 0)
              if (auto y = candidate((-lin - *root) / (a * rat(2)), t)) return *y;
          }
        } else if (lin != 0) {
          if (auto y = candidate(-cst / lin, t)) return *y;
        } else if (cst == 0) {
          if (auto y = candidate(rat(0), t)) return *y;
          if (auto y = candidate(rat(1), t)) return *y;
        }
      }
      int pos = 0;
      while (pos < m && t[pos] == height) t[pos++] = -height;
      if (pos == m) break;
      ++t[pos];
    }
  }
  throw std::logic_error("null seed search exhausted its height bound");
}

}  // namespace detail

// Adapted frame of a product structure: maps it to the model J_2. The
// +1 and -1 eigenspaces are totally isotropic and h pairs them, so a
// dual pair of bases assembles the twisted basis directly.
inline std::pair<Mat, int> para_frame(int n, const Mat& j) {
  if (!is_para_structure(n, j)) throw std::invalid_argument("not a para structure");
  Mat id = Mat::identity(4 * n);
  Mat s = s_matrix(n);
  Mat q = (j - id).kernel_basis();
  Mat p = (j + id).kernel_basis();
  auto x = Mat::solve(q.transpose() * s * p, Mat::identity(2 * n) * rat(2));
  if (!x) throw std::logic_error("eigenspace pairing is singular");
  p = p * *x;  // now h(q_i, p_j) = 2 delta_ij
  Mat b(4 * n, 4 * n);
  for (int i = 0; i < n; ++i) {
    b.set_block(0, i, (q.col(i) + p.col(i)) * rat(1, 2));
    b.set_block(0, 3 * n + i, (q.col(i) - p.col(i)) * rat(1, 2));
    b.set_block(0, n + i, (q.col(n + i) + p.col(n + i)) * rat(1, 2));
    b.set_block(0, 2 * n + i, (q.col(n + i) - p.col(n + i)) * rat(1, 2));
  }
  return detail::orient_frame(n, b);
}

// Adapted frame of a complex structure: maps it to the model Lambda_+.
// A maximal isotropic invariant subspace is grown from null seeds, its
// invariant isotropic complement is produced by equivariant averaging,
// and a dual basis completes the xi pattern.
inline std::pair<Mat, int> cx_frame(int n, const Mat& ii) {
  if (!is_cx_structure(n, ii)) throw std::invalid_argument("not a complex structure");
  Mat s = s_matrix(n);
  Mat ys(4 * n, 0), yfull(4 * n, 0);
  for (int k = 0; k < n; ++k) {
    Mat y = detail::find_null_seed(s, ii, yfull);
    ys = Mat::hcat(ys, y);
    yfull = Mat::hcat(Mat::hcat(yfull, y), ii * y);
  }

  // invariant complement: average a coordinate splitting over {1, I}
  Mat c = detail::invariant_complement(ii, yfull, detail::complement_axes(yfull));
  Mat yp = detail::isotropize_complement(s, yfull, c);

  // dual basis z with h(y_i, z_j) = 2 delta_ij and h(I y_i, z_j) = 0
  Mat rhs(2 * n, n);
  for (int i = 0; i < n; ++i) rhs.at(i, i) = 2;
  auto xz = Mat::solve(Mat::hcat(ys, ii * ys).transpose() * s * yp, rhs);
  if (!xz) throw std::logic_error("dual basis system is singular");
  Mat z = yp * *xz;

  Mat xi(4 * n, 2 * n), xip(4 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    xi.set_block(0, i, ys.col(i));
    xi.set_block(0, n + i, ii * z.col(i));
    xip.set_block(0, i, z.col(i));
    xip.set_block(0, n + i, ii * ys.col(i));
  }
  return detail::orient_frame(n, detail::frame_from_xi(n, xi, xip));
}

// Two-forms of the triple members through an admissible frame.
inline GradedElement theta_of_cx(int n, int eps, const Mat& frame) {
  require_endo(frame, n, "theta_of_cx");
  Mat s = s_matrix(n);
  if (frame.transpose() * s * frame != s || frame.det() != 1)
    throw std::invalid_argument("frame is not admissible");
  return induced_endo_action(frame * i_prime(n, eps), model_theta_cx(n));
}

inline GradedElement theta_of_para(int n, int eps, const Mat& frame) {
  require_endo(frame, n, "theta_of_para");
  Mat s = s_matrix(n);
  if (frame.transpose() * s * frame != s || frame.det() != 1)
    throw std::invalid_argument("frame is not admissible");
  return induced_endo_action(frame * i_prime(n, eps), model_theta_para(n));
}

}  // namespace nnt
