#include <catch2/catch_amalgamated.hpp>

#include "nnt/connection.hpp"
#include "nnt/sampling.hpp"

using namespace nnt;
using Catch::Matchers::ContainsSubstring;

namespace {

FormMat tridiagonal_d(int n, int m, const ExpPoly& a, const ExpPoly& b) {
  FormMat f(n, n, m, 1);
  for (int i = 0; i < n; ++i) {
    f.at(i, i) = exterior_d(m, a);
    if (i + 1 < n) {
      f.at(i, i + 1) = exterior_d(m, b);
      f.at(i + 1, i) = exterior_d(m, b);
    }
  }
  return f;
}

// Flat gauge with dF1 in the (1,3)/(3,1) blocks and dF2 in (2,4)/(4,2).
ConnectionGauge wnp_gauge(int n, int m, const FormMat& df1, const FormMat& df2) {
  FormMat omega(4 * n, 4 * n, m, 1);
  omega.set_block(0, 2 * n, df1);
  omega.set_block(2 * n, 0, df1);
  omega.set_block(n, 3 * n, df2);
  omega.set_block(3 * n, n, df2);
  return ConnectionGauge(n, +1, omega);
}

ConnectionGauge df_gauge(int n, const KForm& df) {
  return ConnectionGauge(n, +1, FormMat::tensor(j2_model(n), df * ExpPoly(rat(1, 2))));
}

GradedElement model_xi(int n) { return columns_wedge(xi_model(n)); }

bool wcond_a_both_sides(const ConnectionGauge& cg) {
  bool lhs = walker(cg);
  bool rhs = nabla_hat_xi(cg) == tensor_with(alpha_form(cg), model_xi(cg.n));
  REQUIRE(lhs == rhs);
  return lhs;
}

}  // namespace

TEST_CASE("connection gauges validate their shape", "[connection]") {
  const int m = 2;
  CHECK_THROWS_WITH(ConnectionGauge(1, +1, FormMat(4, 5, m, 1)), ContainsSubstring("4n x 4n"));
  CHECK_THROWS_WITH(ConnectionGauge(2, +1, FormMat(4, 4, m, 1)), ContainsSubstring("4n x 4n"));
  CHECK_THROWS_WITH(ConnectionGauge(1, 0, FormMat(4, 4, m, 1)), ContainsSubstring("eps"));
  CHECK_THROWS_WITH(ConnectionGauge(1, +1, FormMat(4, 4, m, 0)), ContainsSubstring("degree 1"));
  CHECK_THROWS_WITH(ConnectionGauge(0, +1, FormMat(4, 4, m, 1)), ContainsSubstring("n >= 1"));

  ConnectionGauge cg = zero_connection(2, -1, 3);
  CHECK(cg.vars() == 3);
  CHECK(is_metric_compatible(cg));
  CHECK(walker(cg));
  CHECK(both_walker(cg));
  CHECK(is_parallel(cg));
  CHECK(is_lie_h_valued(cg));
  CHECK(alpha_form(cg).is_zero());
  CHECK(curvature(cg).is_zero());
}

TEST_CASE("metric compatibility is the so pattern on every direction", "[connection]") {
  Sampler smp(411);
  for (int n : {1, 2}) {
    ConnectionGauge cg(n, +1, smp.so_connection(n, 2));
    CHECK(is_metric_compatible(cg));
    CHECK(metric_report(cg).witness.empty());

    FormMat bad = cg.omega;
    bad.at(0, 0) = bad.at(0, 0) + dx(2, 1);  // a diagonal entry breaks skewness
    ConnectionGauge cb(n, +1, bad);
    PredicateReport r = metric_report(cb);
    CHECK_FALSE(r.ok);
    CHECK_THAT(r.witness, ContainsSubstring("fails at entry (1, 1)"));
    CHECK_THROWS_WITH(walker(cb), ContainsSubstring("metric"));
    CHECK_THROWS_WITH(alpha_form(cb), ContainsSubstring("metric"));
    CHECK_THROWS_WITH(nabla_hat_xi(cb), ContainsSubstring("metric"));
  }
}

TEST_CASE("curvature vanishes exactly for gauges built from closed forms", "[connection]") {
  Sampler smp(412);
  const int m = 2;
  for (int n : {1, 2}) {
    // d(X f) wedge-squares away because f df = df f and X is constant
    Mat x = smp.lie_so(n);
    KForm df = exterior_d(m, smp.exppoly(m, 3));
    ConnectionGauge cg(n, +1, FormMat::tensor(x, df));
    CHECK(curvature(cg).is_zero());
  }

  FormMat w(4, 4, m, 1);
  w.at(0, 1) = dx(m, 2) * ExpPoly::variable(m, 1);
  ConnectionGauge cg(1, +1, w);
  FormMat r = curvature(cg);
  CHECK_FALSE(r.is_zero());
  CHECK(r.at(0, 1) == wedge(dx(m, 1), dx(m, 2)));
}

TEST_CASE("walker and parallel predicates match their block identities", "[connection]") {
  Sampler smp(413);
  const int m = 2;
  for (int n : {1, 2}) {
    for (int trial = 0; trial < 6; ++trial) {
      ConnectionGauge cw(n, +1, smp.walker_connection(n, m));
      CHECK(walker(cw));

      ConnectionGauge cgg(n, +1, smp.g_connection(n, m));
      CHECK(is_parallel(cgg));
      CHECK(walker(cgg));
      CHECK(nabla_n(cgg).is_zero());
      CHECK(nabla_hat_theta(cgg) ==
            std::vector<AltElem<ExpPoly>>(m, AltElem<ExpPoly>(4 * n, 2)));

      ConnectionGauge ch(n, +1, smp.h_connection(n, m));
      CHECK(is_lie_h_valued(ch));
      CHECK(both_walker(ch));
      CHECK(is_parallel(ch));
    }
  }

  // generic metric gauges fail with a pinpointed witness
  int found = 0;
  for (int trial = 0; trial < 20 && found < 3; ++trial) {
    ConnectionGauge cs(1, +1, smp.so_connection(1, m));
    if (walker(cs)) continue;
    ++found;
    PredicateReport r = walker_report(cs);
    CHECK_FALSE(r.ok);
    CHECK_THAT(r.witness, ContainsSubstring("fails at entry"));
    CHECK_THAT(r.witness, ContainsSubstring("at x ="));
  }
  CHECK(found == 3);
}

TEST_CASE("the n=1 entry conditions are the block conditions", "[connection]") {
  Sampler smp(414);
  const int m = 2;
  for (int trial = 0; trial < 10; ++trial) {
    FormMat w = trial % 2 ? smp.walker_connection(1, m) : smp.so_connection(1, m);
    ConnectionGauge cg(1, +1, w);

    // the metric pattern at n=1
    for (int i = 0; i < 4; ++i) CHECK(w.at(i, i).is_zero());
    CHECK(w.at(1, 0) == -w.at(0, 1));
    CHECK(w.at(3, 2) == -w.at(2, 3));
    CHECK(w.at(2, 0) == w.at(0, 2));
    CHECK(w.at(3, 0) == w.at(0, 3));
    CHECK(w.at(2, 1) == w.at(1, 2));
    CHECK(w.at(3, 1) == w.at(1, 3));

    bool entry_walker = (w.at(0, 1) + w.at(0, 3) + w.at(2, 1) + w.at(2, 3)).is_zero();
    CHECK(entry_walker == walker(cg));
    bool entry_parallel = entry_walker && w.at(2, 0) == w.at(3, 1);
    CHECK(entry_parallel == is_parallel(cg));
  }
}

TEST_CASE("the Walker condition is the xi eigenform identity", "[connection]") {
  Sampler smp(415);
  const int m = 2;
  int walker_count = 0, other_count = 0;
  for (int n : {1, 2})
    for (int trial = 0; trial < 5; ++trial) {
      if (wcond_a_both_sides(ConnectionGauge(n, +1, smp.walker_connection(n, m))))
        ++walker_count;
      if (wcond_a_both_sides(ConnectionGauge(n, +1, smp.g_connection(n, m)))) ++walker_count;
      if (wcond_a_both_sides(ConnectionGauge(n, +1, smp.h_connection(n, m)))) ++walker_count;
    }
  CHECK(walker_count == 30);

  for (int n : {1, 2}) {
    int found = 0;
    for (int trial = 0; trial < 20 && found < 4; ++trial) {
      ConnectionGauge cs(n, +1, smp.so_connection(n, m));
      if (walker(cs)) continue;
      ++found;
      if (!wcond_a_both_sides(cs)) ++other_count;
    }
    CHECK(found == 4);
  }
  CHECK(other_count == 8);
}

TEST_CASE("parallel means horizontal theta and kills the xi derivative", "[connection]") {
  Sampler smp(416);
  const int m = 2;
  const std::vector<AltElem<ExpPoly>> zero_theta(m, AltElem<ExpPoly>(8, 2));
  const std::vector<AltElem<ExpPoly>> zero_xi(m, AltElem<ExpPoly>(8, 4));

  for (int trial = 0; trial < 6; ++trial) {
    ConnectionGauge cg(2, +1, smp.g_connection(2, m));
    CHECK(is_parallel(cg));
    CHECK(nabla_hat_theta(cg) == zero_theta);
    CHECK(nabla_hat_xi(cg) == zero_xi);
  }

  // diagonal data with equal traces: xi is flat yet N is not parallel
  const int n = 2;
  FormMat da(n, n, m, 1), db(n, n, m, 1);
  da.at(0, 0) = dx(m, 1);
  da.at(1, 1) = dx(m, 2);
  db.at(0, 0) = dx(m, 2);
  db.at(1, 1) = dx(m, 1);
  ConnectionGauge diag = wnp_gauge(n, m, da, db);
  CHECK(is_metric_compatible(diag));
  CHECK(walker(diag));
  CHECK(both_walker(diag));
  CHECK(alpha_form(diag).is_zero());
  CHECK(nabla_hat_xi(diag) == zero_xi);
  CHECK_FALSE(is_parallel(diag));
  CHECK_FALSE(nabla_hat_theta(diag) == zero_theta);
  CHECK(curvature(diag).is_zero());
  PredicateReport r = parallel_report(diag);
  CHECK_THAT(r.witness, ContainsSubstring("omega Lambda_n = Lambda_n omega"));
}

TEST_CASE("the tridiagonal flat family is Walker but not parallel", "[connection]") {
  const int m = 2;
  for (int n : {2, 3}) {
    ExpPoly a1 = ExpPoly::variable(m, 1), a2 = ExpPoly::variable(m, 2);
    ExpPoly b1 = a1 * a2, b2 = a1 + a2;
    ConnectionGauge cg =
        wnp_gauge(n, m, tridiagonal_d(n, m, a1, b1), tridiagonal_d(n, m, a2, b2));
    CHECK(is_metric_compatible(cg));
    CHECK(curvature(cg).is_zero());
    CHECK(walker(cg));
    CHECK(both_walker(cg));
    CHECK_FALSE(is_parallel(cg));
    KForm expect = (exterior_d(m, a2) - exterior_d(m, a1)) * ExpPoly(n);
    CHECK(alpha_form(cg) == expect);
    CHECK(nabla_hat_xi(cg) == tensor_with(expect, model_xi(n)));
    CHECK_FALSE(is_lie_h_valued(cg));
  }
}

TEST_CASE("lie h valued gauges leave the whole triple flat", "[connection]") {
  Sampler smp(417);
  const int m = 2;
  for (int n : {1, 2})
    for (int trial = 0; trial < 4; ++trial) {
      ConnectionGauge cg(n, +1, smp.h_connection(n, m));
      CHECK(is_lie_h_valued(cg));
      CHECK(nabla_n(cg).is_zero());
      CHECK(nabla_j(cg).is_zero());
      CHECK(nabla_endo(cg, lambda_pm(n, +1)).is_zero());
      CHECK(both_walker(cg));

      FormMat bad = cg.omega + FormMat::tensor(lambda_n(n), dx(m, 1));
      ConnectionGauge cb(n, +1, bad);
      CHECK(is_metric_compatible(cb));
      CHECK_FALSE(is_lie_h_valued(cb));
      CHECK_THAT(lie_h_report(cb).witness, ContainsSubstring("fails at entry"));
    }
}

TEST_CASE("the paracomplex relations hold in both roles", "[connection]") {
  Sampler smp(418);
  const int m = 2;
  for (int n : {1, 2}) {
    // Lambda_n Lambda_- - Lambda_- Lambda_n = 2 Lambda_n drives the direct role
    Mat lam = lambda_n(n), lm = lambda_pm(n, -1);
    CHECK(lam * lm - lm * lam == lam * rat(2));

    KForm alpha = smp.one_form(m, 2);
    ConnectionGauge cg(n, +1, FormMat::tensor(lam, alpha * ExpPoly(rat(1, 2))));
    CHECK(is_metric_compatible(cg));
    CHECK(verify_remark_j(cg, alpha));
    if (!alpha.is_zero()) CHECK_FALSE(verify_remark_j(cg, alpha, true));

    // the dF family mirrors the roles
    KForm df = exterior_d(m, smp.exppoly(m, 2));
    ConnectionGauge cf = df_gauge(n, df);
    CHECK(is_metric_compatible(cf));
    if (!df.is_zero()) {
      CHECK_FALSE(walker(cf));
      CHECK(nabla_n(cf) == FormMat::tensor(lambda_pm(n, -1), df));
      CHECK(nabla_j(cf) == FormMat::tensor(lambda_pm(n, +1), df));
      CHECK(verify_remark_j(cf, df, true));
      CHECK_FALSE(verify_remark_j(cf, df));
    }

    FormMat bad = cg.omega + FormMat::tensor(smp.lie_so(n), dx(m, 1));
    CHECK_FALSE(verify_remark_j(ConnectionGauge(n, +1, bad), alpha));
  }
}
