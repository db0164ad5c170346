#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "nnt/exterior.hpp"
#include "nnt/forms.hpp"
#include "nnt/neutral.hpp"
#include "nnt/structures.hpp"

namespace nnt {

// Connection form of an h-connection in an admissible gauge b = e I'_{4n,eps}.
// All structure tensors (N, J, Lambda, xi, Theta) are the constant model
// matrices in this basis, so every condition on nabla becomes an exact
// identity between the entry forms of omega.
struct ConnectionGauge {
  int n;
  int eps;
  FormMat omega;

  ConnectionGauge(int n_, int eps_, FormMat omega_)
      : n(n_), eps(eps_), omega(std::move(omega_)) {
    if (n < 1) throw std::invalid_argument("connection gauge needs n >= 1");
    if (eps != 1 && eps != -1) throw std::invalid_argument("eps must be +1 or -1");
    if (omega.rows() != 4 * static_cast<std::size_t>(n) || omega.cols() != omega.rows())
      throw std::invalid_argument("connection form must be 4n x 4n");
    if (omega.degree() != 1)
      throw std::invalid_argument("connection form entries must have degree 1");
    if (omega.vars() < 1)
      throw std::invalid_argument("connection gauge needs at least one base variable");
  }

  int vars() const { return omega.vars(); }
};

inline ConnectionGauge zero_connection(int n, int eps, int m) {
  return ConnectionGauge(n, eps, FormMat(4 * n, 4 * n, m, 1));
}

struct PredicateReport {
  bool ok = true;
  std::string witness;  // first failing identity, entry, and sample point
};

namespace detail {

inline std::string dx_string(const std::vector<int>& idx) {
  std::string out;
  for (int i : idx) {
    if (!out.empty()) out += "^";
    out += "dx" + std::to_string(i);
  }
  return out;
}

// Passes iff dev == 0; otherwise points at the first nonzero entry and
// a rational point where its leading coefficient does not vanish.
inline PredicateReport report_zero(const FormMat& dev, const std::string& label) {
  for (std::size_t i = 0; i < dev.rows(); ++i)
    for (std::size_t j = 0; j < dev.cols(); ++j) {
      const KForm& w = dev.at(i, j);
      if (w.is_zero()) continue;
      const auto& [idx, f] = *w.terms().begin();
      std::vector<Rational> x = nonvanishing_point(f, dev.vars());
      return {false, label + " fails at entry (" + std::to_string(i + 1) + ", " +
                         std::to_string(j + 1) + "): the " + dx_string(idx) +
                         " coefficient equals " + value_string(f, x) + " at x = " +
                         point_string(x)};
    }
  return {true, ""};
}

inline FormMat gauge_block(const FormMat& w, int n, int k, int l) {
  return w.block((k - 1) * static_cast<std::size_t>(n), (l - 1) * static_cast<std::size_t>(n),
                 n, n);
}

}  // namespace detail

inline PredicateReport metric_report(const ConnectionGauge& cg) {
  Mat s = s_matrix(cg.n);
  return detail::report_zero(cg.omega.transpose() * s + s * cg.omega,
                             "t(omega) S + S omega = 0");
}

inline bool is_metric_compatible(const ConnectionGauge& cg) { return metric_report(cg).ok; }

inline void require_metric(const ConnectionGauge& cg, const char* who) {
  if (!is_metric_compatible(cg))
    throw std::invalid_argument(std::string(who) + " expects a metric connection gauge");
}

// Coefficient matrix of nabla X for a constant endomorphism X of the gauge.
inline FormMat nabla_endo(const ConnectionGauge& cg, const Mat& x) {
  return cg.omega * x - x * cg.omega;
}

inline FormMat nabla_n(const ConnectionGauge& cg) { return nabla_endo(cg, lambda_n(cg.n)); }

inline FormMat nabla_j(const ConnectionGauge& cg) {
  return nabla_endo(cg, lambda_pm(cg.n, -1));
}

inline FormMat curvature(const ConnectionGauge& cg) {
  return exterior_d(cg.omega) + wedge(cg.omega, cg.omega);
}

inline PredicateReport flat_report(const ConnectionGauge& cg) {
  return detail::report_zero(curvature(cg), "d omega + omega ^ omega = 0");
}

inline PredicateReport walker_report(const ConnectionGauge& cg) {
  require_metric(cg, "walker");
  int n = cg.n;
  auto d = [&](int k, int l) { return detail::gauge_block(cg.omega, n, k, l); };
  PredicateReport r =
      detail::report_zero(d(1, 1) - d(1, 3) + d(3, 1) - d(3, 3), "D11 - D13 + D31 - D33 = 0");
  if (!r.ok) return r;
  r = detail::report_zero(d(2, 1) - d(2, 3) - d(4, 1) + d(4, 3), "D21 - D23 - D41 + D43 = 0");
  if (!r.ok) return r;
  return detail::report_zero(d(2, 2) + d(2, 4) - d(4, 2) - d(4, 4),
                             "D22 + D24 - D42 - D44 = 0");
}

inline bool walker(const ConnectionGauge& cg) { return walker_report(cg).ok; }

// Both N and the opposite structure N' satisfy the Walker condition.
inline PredicateReport both_walker_report(const ConnectionGauge& cg) {
  require_metric(cg, "both_walker");
  int n = cg.n;
  auto d = [&](int k, int l) { return detail::gauge_block(cg.omega, n, k, l); };
  struct Identity {
    FormMat dev;
    const char* label;
  };
  const Identity ids[] = {
      {d(1, 1) - d(3, 3), "D11 = D33"}, {d(2, 2) - d(4, 4), "D22 = D44"},
      {d(1, 3) - d(3, 1), "D13 = D31"}, {d(2, 4) - d(4, 2), "D24 = D42"},
      {d(4, 3) + d(2, 1), "D43 = -D21"}, {d(4, 1) + d(2, 3), "D41 = -D23"},
  };
  for (const Identity& id : ids) {
    PredicateReport r = detail::report_zero(id.dev, id.label);
    if (!r.ok) return r;
  }
  return {true, ""};
}

inline bool both_walker(const ConnectionGauge& cg) { return both_walker_report(cg).ok; }

inline PredicateReport parallel_report(const ConnectionGauge& cg) {
  require_metric(cg, "is_parallel");
  return detail::report_zero(nabla_n(cg), "omega Lambda_n = Lambda_n omega");
}

inline bool is_parallel(const ConnectionGauge& cg) { return parallel_report(cg).ok; }

inline KForm alpha_form(const ConnectionGauge& cg) {
  require_metric(cg, "alpha_form");
  int n = cg.n;
  KForm a(cg.vars(), 1);
  for (int i = 0; i < n; ++i) {
    a = a - cg.omega.at(2 * n + i, i);
    a = a + cg.omega.at(3 * n + i, n + i);
  }
  return a;
}

namespace detail {

// Columns of omega(d/dx_v) as bundle vectors with ExpPoly coefficients.
inline std::vector<AltElem<ExpPoly>> gauge_columns(const FormMat& w, int v) {
  std::vector<AltElem<ExpPoly>> cols;
  cols.reserve(w.cols());
  for (std::size_t j = 0; j < w.cols(); ++j) {
    AltElem<ExpPoly> c(static_cast<int>(w.rows()), 1);
    for (std::size_t i = 0; i < w.rows(); ++i) {
      ExpPoly f = w.at(i, j).coeff({v});
      if (!f.is_zero()) c.add({static_cast<int>(i) + 1}, std::move(f));
    }
    cols.push_back(std::move(c));
  }
  return cols;
}

inline AltElem<ExpPoly> with_exppoly_coeffs(const GradedElement& g) {
  AltElem<ExpPoly> e(g.dim(), g.degree());
  for (const auto& [idx, c] : g.terms()) e.add(idx, ExpPoly(c));
  return e;
}

}  // namespace detail

// Covariant derivative of a constant bundle multivector, one component
// per base direction: (nabla_hat g)(d/dx_v) = omega(d/dx_v) . g as a
// derivation of the exterior algebra.
inline std::vector<AltElem<ExpPoly>> nabla_hat(const ConnectionGauge& cg,
                                               const GradedElement& g) {
  AltElem<ExpPoly> ge = detail::with_exppoly_coeffs(g);
  std::vector<AltElem<ExpPoly>> out;
  out.reserve(cg.vars());
  for (int v = 1; v <= cg.vars(); ++v)
    out.push_back(derivation_action(detail::gauge_columns(cg.omega, v), ge));
  return out;
}

inline std::vector<AltElem<ExpPoly>> nabla_hat_xi(const ConnectionGauge& cg) {
  require_metric(cg, "nabla_hat_xi");
  return nabla_hat(cg, columns_wedge(xi_model(cg.n)));
}

inline std::vector<AltElem<ExpPoly>> nabla_hat_theta(const ConnectionGauge& cg) {
  require_metric(cg, "nabla_hat_theta");
  return nabla_hat(cg, model_theta(cg.n));
}

// The one-form tensor multivector pairing used on the right-hand sides
// of the nabla_hat identities.
inline std::vector<AltElem<ExpPoly>> tensor_with(const KForm& a, const GradedElement& g) {
  if (a.degree() != 1) throw std::invalid_argument("tensor_with expects a one-form");
  AltElem<ExpPoly> ge = detail::with_exppoly_coeffs(g);
  std::vector<AltElem<ExpPoly>> out;
  out.reserve(a.dim());
  for (int v = 1; v <= a.dim(); ++v) out.push_back(ge * a.coeff({v}));
  return out;
}

inline bool sections_equal(const std::vector<AltElem<ExpPoly>>& a,
                           const std::vector<AltElem<ExpPoly>>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t v = 0; v < a.size(); ++v)
    if (!(a[v] == b[v])) return false;
  return true;
}

inline bool sections_vanish(const std::vector<AltElem<ExpPoly>>& a) {
  for (const auto& s : a)
    if (!s.is_zero()) return false;
  return true;
}

// The eigenform shape of the Walker condition: the xi top form is
// recovered from its own derivative through the trace form alpha.
inline bool xi_factorizes(const ConnectionGauge& cg) {
  return sections_equal(nabla_hat_xi(cg),
                        tensor_with(alpha_form(cg), columns_wedge(xi_model(cg.n))));
}

// The same connection read in the frame of the dual structure. The
// frame change is the constant involution I_{2n,2n}.
inline ConnectionGauge dual_gauge(const ConnectionGauge& cg) {
  Mat k = i_2n2n(cg.n);
  return {cg.n, cg.eps, k * cg.omega * k};
}

inline PredicateReport lie_h_report(const ConnectionGauge& cg) {
  int n = cg.n;
  auto d = [&](int k, int l) { return detail::gauge_block(cg.omega, n, k, l); };
  struct Identity {
    FormMat dev;
    const char* label;
  };
  const Identity ids[] = {
      {d(2, 2) - d(1, 1), "D22 = D11"},
      {d(3, 3) - d(1, 1), "D33 = D11"},
      {d(4, 4) - d(1, 1), "D44 = D11"},
      {d(1, 2) + d(2, 1), "D12 = -D21"},
      {d(1, 3) - d(3, 1), "D13 = D31"},
      {d(1, 4) - d(4, 1), "D14 = D41"},
      {d(2, 3) + d(4, 1), "D23 = -D41"},
      {d(2, 4) - d(3, 1), "D24 = D31"},
      {d(3, 2) + d(4, 1), "D32 = -D41"},
      {d(3, 4) - d(2, 1), "D34 = D21"},
      {d(4, 2) - d(3, 1), "D42 = D31"},
      {d(4, 3) + d(2, 1), "D43 = -D21"},
      {d(1, 1).transpose() + d(1, 1), "t(D11) = -D11"},
      {d(2, 1).transpose() - d(2, 1), "t(D21) = D21"},
      {d(3, 1).transpose() - d(3, 1), "t(D31) = D31"},
      {d(4, 1).transpose() - d(4, 1), "t(D41) = D41"},
  };
  for (const Identity& id : ids) {
    PredicateReport r = detail::report_zero(id.dev, id.label);
    if (!r.ok) return r;
  }
  return {true, ""};
}

inline bool is_lie_h_valued(const ConnectionGauge& cg) { return lie_h_report(cg).ok; }

// The block shape of metric gauges commuting with Lambda_n, written as
// the two equality chains rather than through the commutator, so the
// commutator form of the parallel predicate has an independent witness.
inline PredicateReport lie_g_report(const ConnectionGauge& cg) {
  require_metric(cg, "lie_g");
  int n = cg.n;
  auto d = [&](int k, int l) { return detail::gauge_block(cg.omega, n, k, l); };
  struct Identity {
    FormMat dev;
    const char* label;
  };
  const Identity ids[] = {
      {d(1, 1) - d(1, 3) - d(2, 2) + d(4, 2), "D11 - D13 = D22 - D42"},
      {d(2, 2) - d(4, 2) - d(3, 3) + d(3, 1), "D22 - D42 = D33 - D31"},
      {d(3, 3) - d(3, 1) - d(4, 4) + d(2, 4), "D33 - D31 = D44 - D24"},
      {d(1, 2) + d(1, 4) + d(2, 1) - d(4, 1), "D12 + D14 = -D21 + D41"},
      {d(2, 1) - d(4, 1) - d(2, 3) + d(4, 3), "-D21 + D41 = -D23 + D43"},
      {d(2, 3) - d(4, 3) - d(3, 2) - d(3, 4), "-D23 + D43 = -D32 - D34"},
  };
  for (const Identity& id : ids) {
    PredicateReport r = detail::report_zero(id.dev, id.label);
    if (!r.ok) return r;
  }
  return {true, ""};
}

inline bool is_lie_g_valued(const ConnectionGauge& cg) { return lie_g_report(cg).ok; }

// nabla J = alpha tensor N in the gauge, cross-checked on Theta_J by the
// Leibniz rule. The paracomplex structure J is the constant Lambda_{n,-};
// mirrored swaps the roles of J and N, as in the dF example where
// nabla N = df tensor J.
inline bool verify_remark_j(const ConnectionGauge& cg, const KForm& alpha,
                            bool mirrored = false) {
  require_metric(cg, "verify_remark_j");
  if (alpha.degree() != 1 || alpha.dim() != cg.vars())
    throw std::invalid_argument("verify_remark_j expects a base one-form");
  Mat jm = lambda_pm(cg.n, -1), nm = lambda_n(cg.n);
  if (mirrored) std::swap(jm, nm);
  if (nabla_endo(cg, jm) != FormMat::tensor(nm, alpha)) return false;
  std::vector<AltElem<ExpPoly>> lhs = nabla_hat(cg, theta_of_endo(cg.n, jm));
  std::vector<AltElem<ExpPoly>> rhs = tensor_with(alpha, theta_of_endo(cg.n, nm));
  for (int v = 0; v < cg.vars(); ++v)
    if (!(lhs[v] == rhs[v]))
      throw std::logic_error("Leibniz derivative of Theta_J disagrees with the gauge relations");
  return true;
}

}  // namespace nnt
