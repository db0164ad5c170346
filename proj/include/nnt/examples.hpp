#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nnt/connection.hpp"
#include "nnt/sampling.hpp"
#include "nnt/structures.hpp"

namespace nnt {

// One verified claim of a worked example or a theorem suite. The rule
// restates the identity being checked; the witness explains a failure.
struct ExampleCheck {
  std::string claim;
  std::string rule;
  bool pass = false;
  std::string witness;
};

struct ExampleReport {
  std::string name;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<ExampleCheck> checks;

  bool all_pass() const {
    for (const ExampleCheck& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

namespace detail {

// Promote plain constants to the base arity; reject everything else.
inline ExpPoly over(const ExpPoly& f, int m) {
  if (f.vars() == m) return f;
  if (f.vars() == 0) return f + ExpPoly::constant(m, 0);
  throw std::invalid_argument("example data lives over a different variable count");
}

inline std::string form_witness(const KForm& dev) {
  if (dev.is_zero()) return "";
  const auto& [idx, c] = *dev.terms().begin();
  std::vector<Rational> x = nonvanishing_point(c, dev.dim());
  return "the " + dx_string(idx) + " coefficient equals " + value_string(c, x) +
         " at x = " + point_string(x);
}

inline void add_check(ExampleReport& r, std::string claim, std::string rule, bool pass,
                      std::string witness = "") {
  r.checks.push_back({std::move(claim), std::move(rule), pass,
                      pass ? std::string() : std::move(witness)});
}

inline void add_verdict(ExampleReport& r, std::string claim, std::string rule,
                        const PredicateReport& p, bool expected) {
  bool pass = p.ok == expected;
  std::string witness;
  if (!pass) witness = p.ok ? "the identity holds unexpectedly" : p.witness;
  add_check(r, std::move(claim), std::move(rule), pass, std::move(witness));
}

// The five verdicts every connection example reports. The xi check is
// the factorization through alpha, which tracks the Walker verdict.
inline void add_core_checks(ExampleReport& r, const ConnectionGauge& cg, bool expect_walker,
                            bool expect_both, bool expect_parallel) {
  add_verdict(r, "flat", "d omega + omega ^ omega = 0", flat_report(cg), true);
  add_verdict(r, "walker", "the three Walker block identities", walker_report(cg),
              expect_walker);
  add_verdict(r, "both_walker", "the Walker block identities for N and for the dual",
              both_walker_report(cg), expect_both);
  add_verdict(r, "parallel", "omega Lambda_n = Lambda_n omega", parallel_report(cg),
              expect_parallel);
  bool fact = xi_factorizes(cg);
  add_check(r, "xi_factorization", "nabla_hat xi = alpha tensor xi",
            fact == expect_walker,
            fact ? "the factorization holds unexpectedly" : "the factorization fails");
}

inline void add_form_equal(ExampleReport& r, std::string claim, std::string rule,
                           const KForm& got, const KForm& want) {
  KForm dev = got - want;
  add_check(r, std::move(claim), std::move(rule), dev.is_zero(), form_witness(dev));
}

// First failure wins; later samples cannot flip a suite check back.
struct SuiteCheck {
  std::string claim;
  std::string rule;
  bool pass = true;
  std::string witness;

  SuiteCheck(std::string claim_, std::string rule_)
      : claim(std::move(claim_)), rule(std::move(rule_)) {}

  void note(int sample, bool ok, const std::string& what = "") {
    if (ok || !pass) return;
    pass = false;
    witness = "sample " + std::to_string(sample) + (what.empty() ? "" : ": " + what);
  }

  void finish(ExampleReport& r) const { add_check(r, claim, rule, pass, witness); }
};

inline void finalize(ExampleReport& r) {
  std::sort(r.checks.begin(), r.checks.end(),
            [](const ExampleCheck& a, const ExampleCheck& b) { return a.claim < b.claim; });
}

inline std::string list_string(const std::vector<ExpPoly>& fs) {
  std::string out = "[";
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (i) out += ", ";
    out += fs[i].to_string();
  }
  return out + "]";
}

}  // namespace detail

// d of the symmetric tridiagonal matrix with constant diagonal a and
// off diagonal b; such data always wedges to zero against itself.
inline FormMat tridiagonal_d(int n, int m, const ExpPoly& a, const ExpPoly& b) {
  FormMat f(n, n, m, 1);
  KForm da = exterior_d(m, detail::over(a, m));
  KForm db = exterior_d(m, detail::over(b, m));
  for (int i = 0; i < n; ++i) {
    f.at(i, i) = da;
    if (i + 1 < n) {
      f.at(i, i + 1) = db;
      f.at(i + 1, i) = db;
    }
  }
  return f;
}

// Two tridiagonal factors placed on the (1,3) and (2,4) block pairs.
inline ConnectionGauge build_wnp(int n, int m, const ExpPoly& a1, const ExpPoly& b1,
                                 const ExpPoly& a2, const ExpPoly& b2) {
  if (n < 2)
    throw std::invalid_argument("build_wnp needs n >= 2; the n = 1 family is build_wnp_n1");
  FormMat w(4 * n, 4 * n, m, 1);
  FormMat df1 = tridiagonal_d(n, m, a1, b1);
  FormMat df2 = tridiagonal_d(n, m, a2, b2);
  w.set_block(0, 2 * n, df1);
  w.set_block(2 * n, 0, df1);
  w.set_block(n, 3 * n, df2);
  w.set_block(3 * n, n, df2);
  return {n, 1, w};
}

inline ConnectionGauge build_wnp_n1(int m, const ExpPoly& a1, const ExpPoly& a2) {
  FormMat w(4, 4, m, 1);
  KForm da1 = exterior_d(m, detail::over(a1, m));
  KForm da2 = exterior_d(m, detail::over(a2, m));
  w.at(0, 2) = da1;
  w.at(2, 0) = da1;
  w.at(1, 3) = da2;
  w.at(3, 1) = da2;
  return {1, 1, w};
}

// The general flat n = 1 family built from a potential c, a scaling a
// with a - 2c linear, and a pair of functions with dphi ^ dpsi = 0.
// A constant b summand contributes e^a db = 0 and is kept only so
// reports can echo it.
inline ConnectionGauge build_gen_n1(int m, const ExpPoly& a, const ExpPoly& c,
                                    const ExpPoly& phi, const ExpPoly& psi,
                                    [[maybe_unused]] const Rational& b_const = 0) {
  ExpPoly am = detail::over(a, m), cm = detail::over(c, m);
  ExpPoly pm = detail::over(phi, m), qm = detail::over(psi, m);
  ExpPoly gap = am - cm * Rational(2);
  auto lam = linear_weights(gap, m);
  if (!lam)
    throw std::invalid_argument(
        "build_gen_n1 requires a - 2c to be linear with no constant term; got " +
        gap.to_string());
  KForm dphi = exterior_d(m, pm), dpsi = exterior_d(m, qm);
  KForm cross = wedge(dphi, dpsi);
  if (!cross.is_zero())
    throw std::invalid_argument("build_gen_n1 requires dphi ^ dpsi = 0: " +
                                detail::form_witness(cross));
  ExpPoly ep = ExpPoly::exponential(m, *lam);
  std::vector<Rational> neg = *lam;
  for (Rational& l : neg) l = -l;
  ExpPoly em = ExpPoly::exponential(m, neg);
  KForm da = exterior_d(m, am);
  KForm w21 = (dphi * ep + dpsi * em) * rat(1, 2);
  KForm w31 = exterior_d(m, cm);
  KForm w41 = (dphi * ep - dpsi * em) * rat(1, 2);
  KForm w42 = w31 - da;
  KForm w32 = -w41;
  KForm w43 = -w21;
  FormMat w(4, 4, m, 1);
  w.at(1, 0) = w21;
  w.at(0, 1) = -w21;
  w.at(2, 0) = w31;
  w.at(0, 2) = w31;
  w.at(3, 0) = w41;
  w.at(0, 3) = w41;
  w.at(3, 1) = w42;
  w.at(1, 3) = w42;
  w.at(2, 1) = w32;
  w.at(1, 2) = w32;
  w.at(3, 2) = w43;
  w.at(2, 3) = -w43;
  return {1, 1, w};
}

// Diagonal factors with equal traces on the (1,3) and (2,4) block pairs.
inline ConnectionGauge build_diag(int n, int m, const std::vector<ExpPoly>& a,
                                  const std::vector<ExpPoly>& b) {
  if (n < 2)
    throw std::invalid_argument("build_diag needs n >= 2; the n = 1 family is build_wnp_n1");
  if (static_cast<int>(a.size()) != n || static_cast<int>(b.size()) != n)
    throw std::invalid_argument("build_diag needs n diagonal entries for each factor");
  ExpPoly diff;
  for (int i = 0; i < n; ++i) diff += detail::over(a[i], m) - detail::over(b[i], m);
  if (!diff.is_zero()) {
    std::vector<Rational> x = nonvanishing_point(diff, m);
    throw std::invalid_argument("build_diag requires equal traces: sum a - sum b equals " +
                                value_string(diff, x) + " at x = " + point_string(x));
  }
  FormMat da(n, n, m, 1), db(n, n, m, 1);
  for (int i = 0; i < n; ++i) {
    da.at(i, i) = exterior_d(m, detail::over(a[i], m));
    db.at(i, i) = exterior_d(m, detail::over(b[i], m));
  }
  FormMat w(4 * n, 4 * n, m, 1);
  w.set_block(0, 2 * n, da);
  w.set_block(2 * n, 0, da);
  w.set_block(n, 3 * n, db);
  w.set_block(3 * n, n, db);
  return {n, 1, w};
}

// One symmetric factor with dF ^ dF = 0 on the antidiagonal block pairs.
inline ConnectionGauge build_df(int n, int m, const FormMat& f) {
  if (static_cast<int>(f.rows()) != n || static_cast<int>(f.cols()) != n ||
      f.degree() != 0 || f.vars() != m)
    throw std::invalid_argument("build_dF needs an n x n function matrix over the base");
  if (f != f.transpose()) throw std::invalid_argument("build_dF requires a symmetric F");
  FormMat df = exterior_d(f);
  if (df.is_zero()) throw std::invalid_argument("build_dF requires a nonconstant F");
  PredicateReport p = detail::report_zero(wedge(df, df), "dF ^ dF = 0");
  if (!p.ok) throw std::invalid_argument("build_dF requires " + p.witness);
  FormMat w(4 * n, 4 * n, m, 1);
  w.set_block(0, 3 * n, df);
  w.set_block(n, 2 * n, df);
  w.set_block(2 * n, n, df);
  w.set_block(3 * n, 0, df);
  return {n, 1, w};
}

inline ExampleReport report_wnp(int n, int m, const ExpPoly& a1, const ExpPoly& b1,
                                const ExpPoly& a2, const ExpPoly& b2) {
  ConnectionGauge cg = build_wnp(n, m, a1, b1, a2, b2);
  ExampleReport r;
  r.name = "wnp";
  r.params = {{"n", std::to_string(n)},   {"m", std::to_string(m)},
              {"a1", a1.to_string()},     {"b1", b1.to_string()},
              {"a2", a2.to_string()},     {"b2", b2.to_string()}};
  KForm da1 = exterior_d(m, detail::over(a1, m));
  KForm da2 = exterior_d(m, detail::over(a2, m));
  bool same_factor = tridiagonal_d(n, m, a1, b1) == tridiagonal_d(n, m, a2, b2);
  detail::add_core_checks(r, cg, true, true, same_factor);
  detail::add_form_equal(r, "alpha", "alpha = n(-da1 + da2)", alpha_form(cg),
                         (da2 - da1) * Rational(n));
  ConnectionGauge dg = dual_gauge(cg);
  detail::add_form_equal(r, "dual_alpha", "in the dual frame alpha = n(da1 - da2)",
                         alpha_form(dg), (da1 - da2) * Rational(n));
  detail::add_check(r, "dual_xi_factorization", "in the dual frame nabla_hat xi = alpha tensor xi",
                    xi_factorizes(dg), "the factorization fails");
  detail::finalize(r);
  return r;
}

inline ExampleReport report_wnp_n1(int m, const ExpPoly& a1, const ExpPoly& a2) {
  ConnectionGauge cg = build_wnp_n1(m, a1, a2);
  ExampleReport r;
  r.name = "wnp_n1";
  r.params = {{"m", std::to_string(m)}, {"a1", a1.to_string()}, {"a2", a2.to_string()}};
  KForm da1 = exterior_d(m, detail::over(a1, m));
  KForm da2 = exterior_d(m, detail::over(a2, m));
  detail::add_core_checks(r, cg, true, true, da1 == da2);
  detail::add_form_equal(r, "alpha", "alpha = -da1 + da2", alpha_form(cg), da2 - da1);
  ConnectionGauge dg = dual_gauge(cg);
  detail::add_form_equal(r, "dual_alpha", "in the dual frame alpha = da1 - da2",
                         alpha_form(dg), da1 - da2);
  detail::add_check(r, "dual_xi_factorization", "in the dual frame nabla_hat xi = alpha tensor xi",
                    xi_factorizes(dg), "the factorization fails");
  detail::finalize(r);
  return r;
}

inline ExampleReport report_gen_n1(int m, const ExpPoly& a, const ExpPoly& c,
                                   const ExpPoly& phi, const ExpPoly& psi,
                                   const Rational& b_const = 0) {
  ConnectionGauge cg = build_gen_n1(m, a, c, phi, psi, b_const);
  ExampleReport r;
  r.name = "gen_n1";
  r.params = {{"m", std::to_string(m)}, {"a", a.to_string()},
              {"c", c.to_string()},     {"phi", phi.to_string()},
              {"psi", psi.to_string()}, {"b", b_const.get_str()}};
  KForm da = exterior_d(m, detail::over(a, m));
  detail::add_core_checks(r, cg, true, true, da.is_zero());
  detail::add_form_equal(r, "alpha", "alpha = -da", alpha_form(cg), -da);
  const KForm& w21 = cg.omega.at(1, 0);
  const KForm& w31 = cg.omega.at(2, 0);
  const KForm& w41 = cg.omega.at(3, 0);
  detail::add_form_equal(r, "system_w21", "d w21 + 2 w31 ^ w41 - da ^ w41 = 0",
                         exterior_d(w21) + wedge(w31, w41) * Rational(2) - wedge(da, w41),
                         zero_form(m, 2));
  detail::add_form_equal(r, "system_w31", "d w31 + 2 w21 ^ w41 = 0",
                         exterior_d(w31) + wedge(w21, w41) * Rational(2), zero_form(m, 2));
  detail::add_form_equal(r, "system_w41", "d w41 - 2 w21 ^ w31 - da ^ w21 = 0",
                         exterior_d(w41) - wedge(w21, w31) * Rational(2) - wedge(da, w21),
                         zero_form(m, 2));
  detail::finalize(r);
  return r;
}

inline ExampleReport report_diag(int n, int m, const std::vector<ExpPoly>& a,
                                 const std::vector<ExpPoly>& b) {
  ConnectionGauge cg = build_diag(n, m, a, b);
  ExampleReport r;
  r.name = "diag";
  r.params = {{"n", std::to_string(n)},
              {"m", std::to_string(m)},
              {"a", detail::list_string(a)},
              {"b", detail::list_string(b)}};
  bool same = true;
  for (int i = 0; i < n; ++i)
    same = same &&
           exterior_d(m, detail::over(a[i], m)) == exterior_d(m, detail::over(b[i], m));
  detail::add_core_checks(r, cg, true, true, same);
  detail::add_form_equal(r, "alpha", "equal traces make alpha vanish", alpha_form(cg),
                         zero_form(m, 1));
  detail::add_check(r, "xi_vanishes", "nabla_hat xi = 0", sections_vanish(nabla_hat_xi(cg)),
                    "the xi derivative is nonzero");
  detail::add_check(r, "theta_strictness", "nabla_hat Theta = 0 exactly when dA = dB",
                    sections_vanish(nabla_hat_theta(cg)) == same,
                    same ? "the Theta derivative is nonzero" : "the Theta derivative vanishes");
  detail::finalize(r);
  return r;
}

inline ExampleReport report_df(int n, int m, const FormMat& f) {
  ConnectionGauge cg = build_df(n, m, f);
  ExampleReport r;
  r.name = "dF";
  std::string fs = "[";
  for (int i = 0; i < n; ++i) {
    if (i) fs += ", ";
    std::vector<ExpPoly> row;
    for (int j = 0; j < n; ++j) row.push_back(f.at(i, j).coeff({}));
    fs += detail::list_string(row);
  }
  fs += "]";
  r.params = {{"n", std::to_string(n)}, {"m", std::to_string(m)}, {"F", fs}};
  detail::add_core_checks(r, cg, false, false, false);
  FormMat df = exterior_d(f);
  FormMat want(4 * n, 4 * n, m, 1);
  want.set_block(0, 2 * n, df * Rational(2));
  want.set_block(2 * n, 0, df * Rational(2));
  want.set_block(n, 3 * n, df * Rational(-2));
  want.set_block(3 * n, n, df * Rational(-2));
  detail::add_verdict(r, "nabla_n_blocks",
                      "nabla N has blocks 2 dF at (1,3), (3,1) and -2 dF at (2,4), (4,2)",
                      detail::report_zero(nabla_n(cg) - want, "nabla N pattern"), true);
  bool scalar = true;
  ExpPoly g = f.at(0, 0).coeff({});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      scalar = scalar && (i == j ? f.at(i, j).coeff({}) == g : f.at(i, j).is_zero());
  if (scalar) {
    KForm dfm = exterior_d(m, detail::over(g, m) * Rational(2));
    detail::add_check(r, "mirrored_roles",
                      "for F = (f/2) Id, nabla N = df tensor J and nabla_hat Theta_N = "
                      "df tensor Theta_J",
                      verify_remark_j(cg, dfm, true), "the mirrored relations fail");
  }
  detail::finalize(r);
  return r;
}

inline ExampleReport report_theorem_onetoone(int n, std::uint64_t seed, int samples) {
  Sampler smp(seed);
  ExampleReport r;
  r.name = "theorem_onetoone";
  r.params = {{"n", std::to_string(n)},
              {"seed", std::to_string(seed)},
              {"samples", std::to_string(samples)}};
  detail::SuiteCheck axioms{"axioms", "from_matrix output satisfies the structure axioms"};
  detail::SuiteCheck matrix{"matrix_roundtrip", "from_theta(pi_N, Theta_N) reproduces N"};
  detail::SuiteCheck theta{"theta_roundtrip", "theta_of after from_theta returns the input"};
  detail::SuiteCheck span{"span_roundtrip", "the reconstructed xi span is pi_N"};
  detail::SuiteCheck trans{"transition_in_g",
                           "two admissible frames for one N differ by an element of G"};
  for (int k = 0; k < samples; ++k) {
    int eps = k % 2 == 0 ? 1 : -1;
    Mat nm = smp.structure_matrix(n, eps);
    NilpotentStructure s = from_matrix(n, nm);
    axioms.note(k, verify_axioms(s) && s.eps == eps, "axioms or orientation");
    GradedElement th = theta_of(s);
    Mat l = xi_vectors(s);
    NilpotentStructure s2 = from_theta(n, l, th);
    matrix.note(k, s2.N == nm);
    theta.note(k, theta_of(s2) == th);
    span.note(k, spans_equal(xi_vectors(s2), l));
    trans.note(k, in_g(transition(s, s2), n));
  }
  axioms.finish(r);
  matrix.finish(r);
  theta.finish(r);
  span.finish(r);
  trans.finish(r);
  detail::finalize(r);
  return r;
}

inline ExampleReport report_theorem_nh(int n, std::uint64_t seed, int samples) {
  Sampler smp(seed);
  ExampleReport r;
  r.name = "theorem_nh";
  r.params = {{"n", std::to_string(n)},
              {"seed", std::to_string(seed)},
              {"samples", std::to_string(samples)}};
  const std::array<std::pair<Rational, Rational>, 3> circle = {
      {{1, 0}, {rat(3, 5), rat(4, 5)}, {rat(-5, 13), rat(12, 13)}}};
  const std::array<Rational, 3> radii = {1, -2, rat(1, 3)};
  detail::SuiteCheck triple{"triple",
                            "the split triple has I^2 = -Id, J1^2 = J2^2 = Id, I J1 = J2, "
                            "with the metric signs"};
  detail::SuiteCheck decomp{"decomposition", "N = I + J2 and the dual is I - J2"};
  detail::SuiteCheck fixed{"assembled_fixed",
                           "r(I - s J1 + c J2) is a structure for fixed circle data"};
  detail::SuiteCheck random{"assembled_random",
                            "r(I - s J1 + c J2) is a structure for sampled circle data"};
  for (int k = 0; k < samples; ++k) {
    int eps = k % 2 == 0 ? 1 : -1;
    NilpotentStructure s = from_matrix(n, smp.structure_matrix(n, eps));
    SplitTriple t = split(s);
    triple.note(k, is_cx_structure(n, t.I) && is_para_structure(n, t.J1) &&
                       is_para_structure(n, t.J2) && t.I * t.J1 == t.J2);
    decomp.note(k, s.N == t.I + t.J2 && dual(s).N == t.I - t.J2);
    const auto& [c, sn] = circle[k % circle.size()];
    const Rational& rr = radii[(k / 3) % radii.size()];
    NilpotentStructure f = assemble(t, rr, c, sn);
    fixed.note(k, f.N == assemble_matrix(t, rr, c, sn) && verify_axioms(f));
    auto [rc, rs] = smp.circle_point();
    NilpotentStructure g = assemble(t, smp.nonzero_rational(), rc, rs);
    random.note(k, verify_axioms(g));
  }
  triple.finish(r);
  decomp.finish(r);
  fixed.finish(r);
  random.finish(r);
  detail::finalize(r);
  return r;
}

inline ExampleReport report_theorem_dual(int n, std::uint64_t seed, int samples) {
  Sampler smp(seed);
  ExampleReport r;
  r.name = "theorem_dual";
  r.params = {{"n", std::to_string(n)},
              {"seed", std::to_string(seed)},
              {"samples", std::to_string(samples)}};
  detail::SuiteCheck invol{"involution", "the dual of the dual is the original record"};
  detail::SuiteCheck axioms{"dual_axioms", "the dual satisfies the structure axioms"};
  detail::SuiteCheck compl_{"complementary_spans", "pi_N and pi_N' together span the fibre"};
  detail::SuiteCheck sums{"split_sums", "N + N' = 2I and N - N' = 2 J2"};
  detail::SuiteCheck hconn{"h_connections_flat_triple",
                           "lie(H) valued gauges commute with I, J1 and J2"};
  for (int k = 0; k < samples; ++k) {
    int eps = k % 2 == 0 ? 1 : -1;
    NilpotentStructure s = from_matrix(n, smp.structure_matrix(n, eps));
    NilpotentStructure d = dual(s);
    NilpotentStructure dd = dual(d);
    invol.note(k, dd.N == s.N && dd.frame == s.frame && dd.eps == s.eps);
    axioms.note(k, verify_axioms(d));
    compl_.note(k, Mat::hcat(xi_vectors(s), xi_vectors(d)).rank() == 4 * std::size_t(n));
    SplitTriple t = split(s);
    sums.note(k, s.N + d.N == t.I * 2 && s.N - d.N == t.J2 * 2);
    ConnectionGauge cg{n, 1, smp.h_connection(n, 2)};
    hconn.note(k, nabla_endo(cg, lambda_pm(n, 1)).is_zero() &&
                      nabla_endo(cg, lambda_pm(n, -1)).is_zero() &&
                      nabla_endo(cg, j2_model(n)).is_zero());
  }
  invol.finish(r);
  axioms.finish(r);
  compl_.finish(r);
  sums.finish(r);
  hconn.finish(r);
  detail::finalize(r);
  return r;
}

inline ExampleReport report_prop_wcond(int n, std::uint64_t seed, int samples) {
  Sampler smp(seed);
  ExampleReport r;
  r.name = "prop_wcond";
  r.params = {{"n", std::to_string(n)},
              {"seed", std::to_string(seed)},
              {"samples", std::to_string(samples)}};
  const int m = 2;
  ExpPoly x1 = ExpPoly::variable(m, 1), x2 = ExpPoly::variable(m, 2);
  detail::SuiteCheck builders{"examples",
                              "every example gauge has the Walker verdict of its factorization"};
  {
    std::vector<std::pair<std::string, ConnectionGauge>> gs;
    gs.emplace_back("wnp", build_wnp(2, m, x1, x1 * x2, x2, x1 + x2));
    gs.emplace_back("wnp_n1", build_wnp_n1(m, x1, x2));
    ExpPoly u = x1 + x2;
    gs.emplace_back("gen_n1", build_gen_n1(m, x1, x2, u, u * u));
    gs.emplace_back("diag", build_diag(2, m, {x1, x2}, {x2, x1}));
    FormMat f(1, 1, m, 0);
    f.at(0, 0).add({}, x1 * rat(1, 2));
    gs.emplace_back("dF", build_df(1, m, f));
    for (std::size_t k = 0; k < gs.size(); ++k)
      builders.note(static_cast<int>(k), walker(gs[k].second) == xi_factorizes(gs[k].second),
                    gs[k].first);
  }
  detail::SuiteCheck random{"random",
                            "the Walker identities hold exactly when nabla_hat xi = "
                            "alpha tensor xi"};
  for (int k = 0; k < samples; ++k) {
    FormMat w = k % 4 == 0   ? smp.so_connection(n, m)
                : k % 4 == 1 ? smp.g_connection(n, m)
                : k % 4 == 2 ? smp.h_connection(n, m)
                             : smp.walker_connection(n, m);
    ConnectionGauge cg{n, 1, w};
    random.note(k, walker(cg) == xi_factorizes(cg));
  }
  detail::SuiteCheck violators{"violators",
                               "gauges failing the Walker identities also fail the "
                               "factorization"};
  int found = 0;
  for (int attempt = 0; attempt < 40 * samples && found < 20; ++attempt) {
    ConnectionGauge cg{n, 1, smp.so_connection(n, m)};
    if (walker(cg)) continue;
    violators.note(found, !xi_factorizes(cg));
    ++found;
  }
  violators.note(found, found >= 20, "too few Walker violators sampled");
  builders.finish(r);
  random.finish(r);
  violators.finish(r);
  detail::finalize(r);
  return r;
}

inline ExampleReport report_prop_g2(int n, std::uint64_t seed, int samples) {
  Sampler smp(seed);
  ExampleReport r;
  r.name = "prop_g2";
  r.params = {{"n", std::to_string(n)},
              {"seed", std::to_string(seed)},
              {"samples", std::to_string(samples)}};
  const int m = 2;
  detail::SuiteCheck positive{"g_valued", "lie(G) valued gauges are parallel"};
  detail::SuiteCheck bicond{"biconditional",
                            "the lie(G) block chains hold exactly when omega commutes "
                            "with Lambda_n"};
  for (int k = 0; k < samples; ++k) {
    ConnectionGauge g{n, 1, smp.g_connection(n, m)};
    positive.note(k, is_lie_g_valued(g) && is_parallel(g));
    FormMat w = k % 3 == 0   ? smp.so_connection(n, m)
                : k % 3 == 1 ? smp.h_connection(n, m)
                             : smp.walker_connection(n, m);
    ConnectionGauge cg{n, 1, w};
    bicond.note(k, is_lie_g_valued(cg) == is_parallel(cg));
  }
  positive.finish(r);
  bicond.finish(r);
  detail::finalize(r);
  return r;
}

// The named dispatch used by the command line with default data.
inline ExampleReport run_example(const std::string& name, std::uint64_t seed = 1,
                                 int samples = 50) {
  const int m = 2;
  ExpPoly x1 = ExpPoly::variable(m, 1), x2 = ExpPoly::variable(m, 2);
  if (name == "wnp") return report_wnp(2, m, x1, x1 * x2, x2, x1 + x2);
  if (name == "wnp_n1") return report_wnp_n1(m, x1, x2);
  if (name == "gen_n1") {
    ExpPoly u = x1 + x2;
    return report_gen_n1(m, x1, x2, u, u * u);
  }
  if (name == "diag") return report_diag(2, m, {x1, x2}, {x2, x1});
  if (name == "dF") {
    FormMat f(1, 1, m, 0);
    f.at(0, 0).add({}, x1 * rat(1, 2));
    return report_df(1, m, f);
  }
  if (name == "theorem_onetoone") return report_theorem_onetoone(1, seed, samples);
  if (name == "theorem_nh") return report_theorem_nh(1, seed, samples);
  if (name == "theorem_dual") return report_theorem_dual(1, seed, samples);
  if (name == "prop_wcond") return report_prop_wcond(1, seed, samples);
  if (name == "prop_g2") return report_prop_g2(1, seed, samples);
  throw std::invalid_argument("unknown example: " + name);
}

}  // namespace nnt
