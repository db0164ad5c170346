#include <catch2/catch_amalgamated.hpp>

#include "nnt/exterior.hpp"
#include "nnt/neutral.hpp"
#include "nnt/sampling.hpp"

using namespace nnt;
using Catch::Matchers::ContainsSubstring;

namespace {

GradedElement random_elem(Sampler& s, int dim, int deg, int terms) {
  GradedElement x(dim, deg);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> idx;
    for (int k = 0; k < deg; ++k) idx.push_back(static_cast<int>(s.uniform(1, dim)));
    x.add(idx, s.small_rational());
  }
  return x;
}

// Reference pfaffian by expansion along the first row; test-only.
Rational pfaffian(const Mat& a) {
  std::size_t k = a.rows();
  if (k == 0) return 1;
  Rational sum = 0;
  for (std::size_t j = 1; j < k; ++j) {
    if (a.at(0, j) == 0) continue;
    std::vector<std::size_t> keep;
    for (std::size_t t = 1; t < k; ++t)
      if (t != j) keep.push_back(t);
    Mat sub(k - 2, k - 2);
    for (std::size_t r = 0; r < keep.size(); ++r)
      for (std::size_t c = 0; c < keep.size(); ++c) sub.at(r, c) = a.at(keep[r], keep[c]);
    Rational term = a.at(0, j) * pfaffian(sub);
    sum += (j % 2 == 1) ? term : -term;
  }
  return sum;
}

}  // namespace

TEST_CASE("tuples canonicalize with the permutation sign", "[exterior]") {
  GradedElement x(4, 2);
  x.add({2, 1}, rat(3));
  CHECK(x.coeff({1, 2}) == rat(-3));
  CHECK(x.coeff({2, 1}) == rat(3));
  x.add({1, 2}, rat(3));  // cancels the stored term
  CHECK(x.is_zero());

  GradedElement y(5, 3);
  y.add({3, 1, 2}, rat(1));  // even permutation
  CHECK(y.coeff({1, 2, 3}) == rat(1));
  y.add({2, 2, 5}, rat(7));  // repeated index contributes nothing
  CHECK(y.coeff({2, 2, 5}) == 0);
  CHECK(y == y);

  CHECK_THROWS_AS(y.add({1, 2}, rat(1)), std::invalid_argument);
  CHECK_THROWS_AS(y.add({1, 2, 6}, rat(1)), std::out_of_range);
}

TEST_CASE("wedge is graded commutative and associative", "[exterior]") {
  Sampler s(2026);
  for (int trial = 0; trial < 20; ++trial) {
    int dim = 6;
    int p = static_cast<int>(s.uniform(1, 3));
    int q = static_cast<int>(s.uniform(1, 3));
    GradedElement a = random_elem(s, dim, p, 4);
    GradedElement b = random_elem(s, dim, q, 4);
    GradedElement c = random_elem(s, dim, 1, 4);
    GradedElement ab = wedge(a, b);
    GradedElement ba = wedge(b, a);
    if (p * q % 2 == 0)
      CHECK(ab == ba);
    else
      CHECK(ab == -ba);
    CHECK(wedge(ab, c) == wedge(a, wedge(b, c)));
    CHECK(wedge(a + a, b) == ab + ab);
    CHECK(wedge(a * rat(3, 2), b) == ab * rat(3, 2));
  }
  // degree-1 squares vanish, and degrees above the dimension are zero
  GradedElement v = random_elem(s, 6, 1, 6);
  CHECK(wedge(v, v).is_zero());
  GradedElement top = random_elem(s, 3, 2, 3);
  CHECK(wedge(top, top).degree() == 4);
  CHECK(wedge(top, top).is_zero());
}

TEST_CASE("induced endomorphism action is functorial", "[exterior]") {
  Sampler s(7);
  for (int trial = 0; trial < 10; ++trial) {
    Mat a = s.matrix(5, 5);
    Mat b = s.matrix(5, 5);
    GradedElement x = random_elem(s, 5, 2, 4);
    GradedElement y = random_elem(s, 5, 2, 4);
    CHECK(induced_endo_action(a * b, x) == induced_endo_action(a, induced_endo_action(b, x)));
    CHECK(induced_endo_action(Mat::identity(5), x) == x);
    CHECK(induced_endo_action(a, x + y) == induced_endo_action(a, x) + induced_endo_action(a, y));
    GradedElement u = random_elem(s, 5, 1, 4);
    GradedElement w = random_elem(s, 5, 3, 4);
    CHECK(induced_endo_action(a, wedge(u, w)) ==
          wedge(induced_endo_action(a, u), induced_endo_action(a, w)));
    // on the top form the action is multiplication by det
    GradedElement vol(5, 5);
    vol.add({1, 2, 3, 4, 5}, rat(1));
    CHECK(induced_endo_action(a, vol) == vol * a.det());
  }
}

TEST_CASE("derivation action obeys the Leibniz rule", "[exterior]") {
  Sampler s(11);
  for (int trial = 0; trial < 10; ++trial) {
    Mat a = s.matrix(5, 5);
    Mat b = s.matrix(5, 5);
    GradedElement x = random_elem(s, 5, 2, 4);
    GradedElement u = random_elem(s, 5, 2, 4);
    GradedElement w = random_elem(s, 5, 2, 4);
    CHECK(derivation_action(a, wedge(u, w)) ==
          wedge(derivation_action(a, u), w) + wedge(u, derivation_action(a, w)));
    CHECK(derivation_action(a + b, x) == derivation_action(a, x) + derivation_action(b, x));
    // commutators act as commutators
    CHECK(derivation_action(a * b - b * a, x) ==
          derivation_action(a, derivation_action(b, x)) -
              derivation_action(b, derivation_action(a, x)));
    // on the top form the derivation is multiplication by the trace
    GradedElement vol(5, 5);
    vol.add({1, 2, 3, 4, 5}, rat(1));
    CHECK(derivation_action(a, vol) == vol * a.trace());
  }
}

TEST_CASE("model nilpotent acts as frozen on low degrees", "[exterior]") {
  Mat lam = lambda_n(1);
  GradedElement e12(4, 2);
  e12.add({1, 2}, rat(1));

  GradedElement ind(4, 2);
  ind.add({1, 2}, rat(1));
  ind.add({2, 3}, rat(1));
  ind.add({1, 4}, rat(1));
  ind.add({3, 4}, rat(-1));
  CHECK(induced_endo_action(lam, e12) == ind);

  GradedElement der(4, 2);
  der.add({1, 3}, rat(1));
  der.add({2, 4}, rat(-1));
  CHECK(derivation_action(lam, e12) == der);
}

TEST_CASE("wedge powers recover the pfaffian", "[exterior]") {
  Sampler s(23);
  for (int k : {4, 6}) {
    for (int trial = 0; trial < 8; ++trial) {
      Mat a = s.antisymmetric(k);
      GradedElement theta = two_vector_from_matrix(a);
      CHECK(coefficient_matrix(theta) == a);
      GradedElement p = theta;
      Rational factorial = 1;
      for (int m = 2; m <= k / 2; ++m) {
        p = wedge(p, theta);
        factorial *= m;
      }
      std::vector<int> full;
      for (int i = 1; i <= k; ++i) full.push_back(i);
      Rational pf = pfaffian(a);
      CHECK(p.coeff(full) == factorial * pf);
      CHECK(pf * pf == a.det());
      CHECK(is_nondegenerate_on(theta, Mat::identity(k)) == (a.det() != 0));
    }
  }
}

TEST_CASE("normalized top power of the model two-form", "[exterior]") {
  // the abstract shape: u1^u3 + u2^u4 in a 4-dimensional space
  GradedElement theta(4, 2);
  theta.add({1, 3}, rat(1));
  theta.add({2, 4}, rat(1));
  GradedElement vol(4, 4);
  vol.add({1, 2, 3, 4}, rat(1));
  CHECK(theta_power_xi(theta, 2) == vol);

  // the model form at n = 1, written out
  Mat coeff1 = s_matrix(1) * lambda_n(1).transpose();
  GradedElement t1 = two_vector_from_matrix(coeff1);
  GradedElement expect1(4, 2);
  expect1.add({1, 2}, rat(1));
  expect1.add({1, 4}, rat(1));
  expect1.add({2, 3}, rat(1));
  expect1.add({3, 4}, rat(-1));
  CHECK(t1 == expect1);

  // for every n the normalized power reproduces the xi top form
  for (int n = 1; n <= 3; ++n) {
    Mat coeff = s_matrix(n) * lambda_n(n).transpose();
    GradedElement theta_model = two_vector_from_matrix(coeff);
    CHECK(theta_power_xi(theta_model, n) == columns_wedge(xi_model(n)));
  }

  CHECK_THROWS_AS(theta_power_xi(vol, 2), std::invalid_argument);
  CHECK_THROWS_AS(theta_power_xi(theta, 0), std::invalid_argument);
}

TEST_CASE("coefficient matrix conversions", "[exterior]") {
  Sampler s(31);
  for (int trial = 0; trial < 10; ++trial) {
    Mat a = s.antisymmetric(6);
    CHECK(coefficient_matrix(two_vector_from_matrix(a)) == a);
    GradedElement t = random_elem(s, 6, 2, 5);
    CHECK(two_vector_from_matrix(coefficient_matrix(t)) == t);
  }
  Mat bad(3, 3);
  bad.at(0, 1) = rat(1);
  CHECK_THROWS_AS(two_vector_from_matrix(bad), std::invalid_argument);
  GradedElement one(3, 1);
  one.add({2}, rat(1));
  CHECK_THROWS_AS(coefficient_matrix(one), std::invalid_argument);
}

TEST_CASE("nondegeneracy on a subspace", "[exterior]") {
  GradedElement split(4, 2);
  split.add({1, 2}, rat(1));
  split.add({3, 4}, rat(1));
  CHECK(is_nondegenerate_on(split, Mat::identity(4)));

  GradedElement single(4, 2);
  single.add({1, 2}, rat(5, 3));
  CHECK_FALSE(is_nondegenerate_on(single, Mat::identity(4)));
  Mat l12 = Mat::identity(4).block(0, 0, 4, 2);
  CHECK(is_nondegenerate_on(single, l12));

  Mat l34 = Mat::identity(4).block(0, 2, 4, 2);
  CHECK_THROWS_WITH(is_nondegenerate_on(single, l34), ContainsSubstring("not contained"));
  Mat l1 = Mat::identity(4).block(0, 0, 4, 1);
  CHECK_THROWS_WITH(is_nondegenerate_on(single, l1), ContainsSubstring("even dimension"));
  Mat dep = Mat::hcat(l12, l12);
  CHECK_THROWS_WITH(is_nondegenerate_on(single, dep), ContainsSubstring("dependent"));
}
