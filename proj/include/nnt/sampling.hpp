#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "nnt/forms.hpp"
#include "nnt/neutral.hpp"

namespace nnt {

// Deterministic sampling for randomized identity tests. Everything is
// driven by a seeded mt19937_64 so failures reproduce exactly.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  long uniform(long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng_);
  }

  Rational small_rational() {
    return rat(uniform(-4, 4), uniform(1, 3));
  }

  Rational nonzero_rational() {
    Rational q = small_rational();
    while (q == 0) q = small_rational();
    return q;
  }

  // Rational point on the unit circle via the tangent half-angle map.
  std::pair<Rational, Rational> circle_point() {
    Rational t = small_rational();
    Rational d = 1 + t * t;
    return {(1 - t * t) / d, 2 * t / d};
  }

  Mat matrix(int rows, int cols) {
    Mat a(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) a.at(i, j) = small_rational();
    return a;
  }

  Mat antisymmetric(int k) {
    Mat a(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) {
        a.at(i, j) = small_rational();
        a.at(j, i) = -a.at(i, j);
      }
    return a;
  }

  Mat symmetric(int k) {
    Mat a(k, k);
    for (int i = 0; i < k; ++i) {
      a.at(i, i) = small_rational();
      for (int j = i + 1; j < k; ++j) {
        a.at(i, j) = small_rational();
        a.at(j, i) = a.at(i, j);
      }
    }
    return a;
  }

  // t(X) S + S X = 0 is equivalent to X = S A with A antisymmetric.
  Mat lie_so(int n) { return s_matrix(n) * antisymmetric(4 * n); }

  Mat lie_h(int n) {
    Mat d11 = antisymmetric(n);
    Mat d21 = symmetric(n);
    Mat d31 = symmetric(n);
    Mat d41 = symmetric(n);
    Blocks4 p;
    p.n = n;
    p(1, 1) = d11;  p(1, 2) = -d21; p(1, 3) = d31;  p(1, 4) = d41;
    p(2, 1) = d21;  p(2, 2) = d11;  p(2, 3) = -d41; p(2, 4) = d31;
    p(3, 1) = d31;  p(3, 2) = -d41; p(3, 3) = d11;  p(3, 4) = d21;
    p(4, 1) = d41;  p(4, 2) = d31;  p(4, 3) = -d21; p(4, 4) = d11;
    return assemble4(p);
  }

  Mat lie_g(int n) { return combination(lie_g_basis(n)); }

  Mat lie_so_w(int n) { return combination(lie_so_w_basis(n)); }

  // Metric algebra elements additionally satisfying the three Walker
  // block identities; used to generate Walker-compatible gauges.
  Mat lie_walker(int n) { return combination(lie_walker_basis(n)); }

  ExpPoly exppoly(int m, int terms = 2) {
    ExpPoly f;
    for (int t = 0; t < terms; ++t) {
      std::vector<long> mono(m);
      std::vector<Rational> lam(m);
      for (int i = 0; i < m; ++i) {
        mono[i] = uniform(0, 2);
        lam[i] = rat(uniform(-1, 1));
      }
      f += ExpPoly::term(m, small_rational(), std::move(mono), std::move(lam));
    }
    return f;
  }

  KForm one_form(int m, int terms = 2) {
    KForm w(m, 1);
    for (int i = 1; i <= m; ++i) w.add({i}, exppoly(m, terms));
    return w;
  }

  // Connection forms valued in an algebra pattern: sums of constant
  // pattern matrices tensor scalar one-forms, so every coordinate
  // coefficient matrix lies in the pattern by linearity.
  FormMat so_connection(int n, int m) {
    return pattern_connection(m, [&] { return lie_so(n); });
  }
  FormMat g_connection(int n, int m) {
    return pattern_connection(m, [&] { return lie_g(n); });
  }
  FormMat h_connection(int n, int m) {
    return pattern_connection(m, [&] { return lie_h(n); });
  }
  FormMat walker_connection(int n, int m) {
    return pattern_connection(m, [&] { return lie_walker(n); });
  }

  // Conjugate of the model by a random isometry of the requested
  // orientation class.
  Mat structure_matrix(int n, int eps) {
    Mat p = so_element(n);
    if (eps == -1) p = i_prime(n, -1) * p;
    return p * lambda_n(n) * p.inverse();
  }

  Mat so_element(int n) { return group_via_cayley([&] { return lie_so(n); }); }
  Mat g_element(int n) { return group_via_cayley([&] { return lie_g(n); }); }
  Mat h_element(int n) { return group_via_cayley([&] { return lie_h(n); }); }
  Mat so_w_element(int n) { return group_via_cayley([&] { return lie_so_w(n); }); }

  // Basis of the solution space of the linear membership conditions,
  // as matrices. Computed once per n and cached.
  const std::vector<Mat>& lie_g_basis(int n) {
    auto it = g_basis_.find(n);
    if (it == g_basis_.end()) it = g_basis_.emplace(n, solve_pattern(n, Pattern::g)).first;
    return it->second;
  }

  const std::vector<Mat>& lie_so_w_basis(int n) {
    auto it = sow_basis_.find(n);
    if (it == sow_basis_.end()) it = sow_basis_.emplace(n, solve_pattern(n, Pattern::sow)).first;
    return it->second;
  }

  const std::vector<Mat>& lie_walker_basis(int n) {
    auto it = walker_basis_.find(n);
    if (it == walker_basis_.end()) it = walker_basis_.emplace(n, solve_pattern(n, Pattern::walker)).first;
    return it->second;
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  enum class Pattern { g, sow, walker };

  Mat combination(const std::vector<Mat>& basis) {
    if (basis.empty()) throw std::logic_error("empty algebra basis");
    Mat x(basis.front().rows(), basis.front().cols());
    bool nonzero = false;
    for (const auto& b : basis) {
      Rational c = small_rational();
      if (c != 0) nonzero = true;
      x = x + b * c;
    }
    if (!nonzero) x = x + basis.front();
    return x;
  }

  template <class F>
  FormMat pattern_connection(int m, F&& draw, int terms = 2) {
    FormMat w = FormMat::tensor(draw(), one_form(m));
    for (int t = 1; t < terms; ++t) w = w + FormMat::tensor(draw(), one_form(m));
    return w;
  }

  template <class F>
  Mat group_via_cayley(F&& draw) {
    for (int attempt = 0; attempt < 64; ++attempt) {
      Mat x = draw() * rat(1, 2);
      if ((Mat::identity(x.rows()) - x).det() != 0) return cayley(x);
    }
    throw std::runtime_error("failed to sample an invertible cayley argument");
  }

  // Sets up the linear system for the requested pattern on the 16 n^2
  // matrix entries and returns a basis of its solution space.
  std::vector<Mat> solve_pattern(int n, Pattern which) {
    const int d = 4 * n;
    const int vars = d * d;
    std::vector<std::vector<Rational>> rows;
    auto var = [d](int i, int j) { return i * d + j; };
    auto new_row = [&]() -> std::vector<Rational>& {
      rows.emplace_back(vars);
      return rows.back();
    };

    // metric condition: s_j X_ji + s_i X_ij = 0
    Mat s = s_matrix(n);
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) {
        auto& row = new_row();
        row[var(j, i)] += s.at(j, j);
        row[var(i, j)] += s.at(i, i);
      }

    if (which == Pattern::g) {
      Mat lam = lambda_n(n);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          auto& row = new_row();
          for (int k = 0; k < d; ++k) {
            if (lam.at(k, j) != 0) row[var(i, k)] += lam.at(k, j);
            if (lam.at(i, k) != 0) row[var(k, j)] -= lam.at(i, k);
          }
        }
    } else if (which == Pattern::sow) {
      // X W inside W: q X w = 0 for the annihilator rows q and basis w
      Mat w = xi_model(n);
      Mat q = w.transpose().kernel_basis().transpose();  // rows annihilate W
      for (std::size_t a = 0; a < q.rows(); ++a)
        for (std::size_t c = 0; c < w.cols(); ++c) {
          auto& row = new_row();
          for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
              if (q.at(a, i) != 0 && w.at(j, c) != 0) row[var(i, j)] += q.at(a, i) * w.at(j, c);
        }
    } else {
      // the three Walker block identities
      auto add_block_eq = [&](std::initializer_list<std::pair<std::pair<int, int>, int>> terms) {
        for (int bi = 0; bi < n; ++bi)
          for (int bj = 0; bj < n; ++bj) {
            auto& row = new_row();
            for (auto& [blk, sign] : terms)
              row[var((blk.first - 1) * n + bi, (blk.second - 1) * n + bj)] += sign;
          }
      };
      add_block_eq({{{1, 1}, 1}, {{1, 3}, -1}, {{3, 1}, 1}, {{3, 3}, -1}});
      add_block_eq({{{2, 1}, 1}, {{2, 3}, -1}, {{4, 1}, -1}, {{4, 3}, 1}});
      add_block_eq({{{2, 2}, 1}, {{2, 4}, 1}, {{4, 2}, -1}, {{4, 4}, -1}});
    }

    Mat c(rows.size(), vars);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (int v = 0; v < vars; ++v) c.at(r, v) = rows[r][v];
    Mat kernel = c.kernel_basis();
    std::vector<Mat> basis;
    for (std::size_t b = 0; b < kernel.cols(); ++b) {
      Mat x(d, d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) x.at(i, j) = kernel.at(var(i, j), b);
      basis.push_back(x);
    }
    return basis;
  }

  std::mt19937_64 rng_;
  std::map<int, std::vector<Mat>> g_basis_, sow_basis_, walker_basis_;
};

}  // namespace nnt
