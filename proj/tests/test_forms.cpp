#include <catch2/catch_amalgamated.hpp>

#include "nnt/forms.hpp"
#include "nnt/sampling.hpp"

using namespace nnt;
using Catch::Matchers::ContainsSubstring;

namespace {

ExpPoly x(int m, int i) { return ExpPoly::variable(m, i); }

// Tridiagonal symmetric matrix with diagonal a and off-diagonal b.
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

}  // namespace

TEST_CASE("the exterior derivative follows the product rule", "[forms]") {
  const int m = 2;
  CHECK(exterior_d(m, ExpPoly(rat(5, 3))).is_zero());
  CHECK(exterior_d(m, ExpPoly()).is_zero());

  KForm d12 = exterior_d(m, x(m, 1) * x(m, 2));
  CHECK(d12.coeff({1}) == x(m, 2));
  CHECK(d12.coeff({2}) == x(m, 1));

  ExpPoly e1 = ExpPoly::exponential(m, {rat(1), rat(0)});
  KForm de = exterior_d(m, e1 * x(m, 2));
  CHECK(de.coeff({1}) == e1 * x(m, 2));
  CHECK(de.coeff({2}) == e1);

  KForm w(m, 1);
  w.add({1}, x(m, 2) * x(m, 2));
  KForm dw = exterior_d(w);
  CHECK(dw.degree() == 2);
  CHECK(dw.coeff({1, 2}) == -(x(m, 2) + x(m, 2)));
}

TEST_CASE("d squares to zero", "[forms]") {
  Sampler smp(401);
  for (int m : {1, 2, 3}) {
    for (int trial = 0; trial < 8; ++trial) {
      ExpPoly f = smp.exppoly(m, 3);
      CHECK(exterior_d(exterior_d(m, f)).is_zero());
      KForm w = smp.one_form(m, 2);
      CHECK(exterior_d(exterior_d(w)).is_zero());
    }
  }
}

TEST_CASE("wedges are graded anticommutative", "[forms]") {
  const int m = 3;
  CHECK(wedge(dx(m, 1), dx(m, 1)).is_zero());
  CHECK(wedge(dx(m, 1), dx(m, 2)) == -wedge(dx(m, 2), dx(m, 1)));
  CHECK(wedge(dx(1, 1), dx(1, 1)).is_zero());

  Sampler smp(402);
  for (int trial = 0; trial < 6; ++trial) {
    KForm a = smp.one_form(m, 2), b = smp.one_form(m, 2);
    CHECK(wedge(a, b) == -wedge(b, a));
    CHECK(wedge(a, a).is_zero());
    KForm f = function_form(m, smp.exppoly(m, 2));
    CHECK(wedge(f, a) == wedge(a, f));
  }

  // degree three, explicit coefficient
  KForm vol = wedge(wedge(dx(m, 1), dx(m, 2)), dx(m, 3));
  CHECK(vol.coeff({1, 2, 3}) == ExpPoly(1));
  CHECK(wedge(vol, dx(m, 1)).is_zero());
}

TEST_CASE("matrix wedge is the matrix product with wedge entries", "[forms]") {
  const int m = 3;
  Sampler smp(403);
  for (int trial = 0; trial < 5; ++trial) {
    Mat a = smp.matrix(2, 2), b = smp.matrix(2, 2);
    KForm th = smp.one_form(m, 1), ps = smp.one_form(m, 1);
    FormMat lhs = wedge(FormMat::tensor(a, th), FormMat::tensor(b, ps));
    FormMat rhs = FormMat::tensor(a * b, wedge(th, ps));
    CHECK(lhs == rhs);
  }

  FormMat w(2, 2, m, 1);
  w.at(0, 1) = dx(m, 1);
  w.at(1, 0) = dx(m, 2);
  FormMat ww = wedge(w, w);
  CHECK(ww.at(0, 0) == wedge(dx(m, 1), dx(m, 2)));
  CHECK(ww.at(1, 1) == wedge(dx(m, 2), dx(m, 1)));
  CHECK(ww.at(0, 1).is_zero());

  CHECK_THROWS_WITH(wedge(w, FormMat(3, 2, m, 1)), ContainsSubstring("shape"));
}

TEST_CASE("tridiagonal data wedges to zero against itself", "[forms]") {
  const int m = 2;
  for (int n : {2, 3}) {
    FormMat df = tridiagonal_d(n, m, x(m, 1), x(m, 2));
    CHECK(wedge(df, df).is_zero());
  }
  // not a general fact: generic symmetric d-matrices fail it
  FormMat g(2, 2, m, 1);
  g.at(0, 0) = exterior_d(m, x(m, 1));
  g.at(1, 1) = exterior_d(m, x(m, 2));
  g.at(0, 1) = exterior_d(m, x(m, 1) * x(m, 2));
  g.at(1, 0) = g.at(0, 1);
  CHECK_FALSE(wedge(g, g).is_zero());
}

TEST_CASE("form matrices behave like matrices", "[forms]") {
  const int m = 2;
  Sampler smp(404);
  Mat a = smp.matrix(3, 3);
  KForm th = smp.one_form(m, 2);
  FormMat w = FormMat::tensor(a, th);
  CHECK(w.transpose() == FormMat::tensor(a.transpose(), th));
  CHECK((w - w).is_zero());
  CHECK(w + w == w * rat(2));
  CHECK(Mat::identity(3) * w == w);
  CHECK(w * Mat::identity(3) == w);
  CHECK(w.block(1, 1, 2, 2).at(0, 0) == w.at(1, 1));

  FormMat z(3, 3, m, 1);
  z.set_block(0, 0, w.block(0, 0, 2, 2));
  CHECK(z.at(0, 1) == w.at(0, 1));
  CHECK(z.at(2, 2).is_zero());
  CHECK_THROWS_WITH(z.set_block(2, 2, w), ContainsSubstring("out of range"));
  CHECK_THROWS_WITH(FormMat(0, 1, m, 1), ContainsSubstring("empty"));
}

TEST_CASE("nonvanishing points certify nonzero functions", "[forms]") {
  const int m = 2;
  // vanishes at the origin and on both axes, menu must move past them
  ExpPoly f = x(m, 1) * x(m, 2);
  auto p = nonvanishing_point(f, m);
  REQUIRE(p.size() == 2);
  CHECK(!(f + ExpPoly::constant(m, 0)).eval_certificate(p).empty());

  ExpPoly g = x(m, 1) - ExpPoly(1);
  auto q = nonvanishing_point(g, m);
  CHECK(!(g + ExpPoly::constant(m, 0)).eval_certificate(q).empty());

  CHECK(value_string(ExpPoly(rat(3, 2)), {rat(0), rat(0)}) == "3/2");
  CHECK(value_string(x(m, 1), {rat(0), rat(5)}) == "0");
  ExpPoly h = ExpPoly::exponential(m, {rat(1), rat(0)}) * rat(2) + ExpPoly(1);
  CHECK(value_string(h, {rat(1), rat(0)}) == "1 + 2*exp(1)");
  CHECK(point_string({rat(1, 2), rat(-3)}) == "(1/2, -3)");
  CHECK_THROWS_WITH(nonvanishing_point(ExpPoly(), m), ContainsSubstring("zero function"));
}
