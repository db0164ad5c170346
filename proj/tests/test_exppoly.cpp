#include <catch2/catch_amalgamated.hpp>

#include "nnt/exppoly.hpp"
#include "nnt/exterior.hpp"

using namespace nnt;
using Catch::Matchers::ContainsSubstring;

namespace {

ExpPoly x(int i) { return ExpPoly::variable(2, i); }

ExpPoly expo(const Rational& a, const Rational& b) {
  return ExpPoly::exponential(2, {a, b});
}

}  // namespace

TEST_CASE("constants adapt their variable count", "[exppoly]") {
  ExpPoly zero;
  CHECK(zero.is_zero());
  CHECK(zero.vars() == 0);
  CHECK(ExpPoly(rat(3, 2)).is_constant());
  CHECK((ExpPoly(2) + ExpPoly(rat(-2))).is_zero());
  ExpPoly f = x(1) + ExpPoly(1);
  CHECK(f.vars() == 2);
  CHECK(f - x(1) == ExpPoly(1));
  CHECK(ExpPoly(1) == ExpPoly::constant(2, 1));
  CHECK(zero * f == ExpPoly());
  CHECK((f * ExpPoly(rat(0))).is_zero());
  CHECK(ExpPoly(rat(5)).constant_value() == 5);
  CHECK_THROWS_WITH(f + ExpPoly::variable(3, 1), ContainsSubstring("variable counts"));
}

TEST_CASE("ring identities hold exactly", "[exppoly]") {
  ExpPoly f = x(1) + x(2), g = x(1) - x(2);
  CHECK(f * g == x(1) * x(1) - x(2) * x(2));
  ExpPoly e = expo(1, 0);
  CHECK(e * e == expo(2, 0));
  CHECK(e * expo(-1, 0) == ExpPoly::constant(2, 1));
  // linear independence of distinct exponentials: no hidden collapse
  CHECK_FALSE((e - expo(0, 1)).is_zero());
  CHECK((x(1) * e - e * x(1)).is_zero());
  ExpPoly h = (f + e) * (f + e);
  CHECK(h == f * f + f * e * Rational(2) + e * e);
}

TEST_CASE("partial derivatives follow the calculus rules", "[exppoly]") {
  ExpPoly f = x(1) * x(1) * expo(2, -1);
  CHECK(f.partial(1) == x(1) * expo(2, -1) * Rational(2) + f * Rational(2));
  CHECK(f.partial(2) == -f);
  CHECK(f.partial(1).partial(2) == f.partial(2).partial(1));
  CHECK(ExpPoly(7).partial(1).is_zero());
  // Leibniz on a product
  ExpPoly g = x(2) + expo(0, 3);
  CHECK((f * g).partial(2) == f.partial(2) * g + f * g.partial(2));
  CHECK_THROWS_WITH(f.partial(3), ContainsSubstring("direction"));
  CHECK_THROWS_WITH(f.partial(0), ContainsSubstring("direction"));
}

TEST_CASE("evaluation certificates group by exponent", "[exppoly]") {
  ExpPoly f = x(1) * x(1) * expo(2, 0) + expo(2, 0) * Rational(3) - expo(0, 1);
  auto cert = f.eval_certificate({rat(1, 2), rat(-1)});
  REQUIRE(cert.size() == 2);
  CHECK(cert.at(rat(1)) == rat(13, 4));
  CHECK(cert.at(rat(-1)) == rat(-1));
  // cancellation inside one exponent group disappears entirely
  ExpPoly g = x(1) * expo(1, 1) - expo(1, 1) * rat(1, 2);
  CHECK(g.eval_certificate({rat(1, 2), rat(0)}).empty());
  CHECK(ExpPoly().eval_certificate({}).empty());
  CHECK_THROWS_WITH(f.eval_certificate({rat(1)}), ContainsSubstring("evaluation point"));
}

TEST_CASE("display is readable and deterministic", "[exppoly]") {
  CHECK(ExpPoly().to_string() == "0");
  CHECK(ExpPoly(rat(-3, 2)).to_string() == "-3/2");
  CHECK((x(1) * x(1) * Rational(2) - x(2)).to_string() == "-x2 + 2*x1^2");
  CHECK((expo(1, -2) * x(1)).to_string() == "x1*exp(x1 - 2*x2)");
  CHECK(expo(rat(-1, 2), 0).to_string() == "exp(-1/2*x1)");
}

TEST_CASE("the ring plugs into the exterior algebra", "[exppoly]") {
  AltElem<ExpPoly> w(2, 1);
  w.add({1}, x(1));
  w.add({2}, expo(1, 0));
  CHECK(wedge(w, w).is_zero());
  AltElem<ExpPoly> v(2, 1);
  v.add({1}, ExpPoly(1));
  AltElem<ExpPoly> wv = wedge(w, v);
  CHECK(wv.coeff({1, 2}) == -expo(1, 0));
  CHECK((wedge(w, v) + wedge(v, w)).is_zero());
  CHECK((w * rat(2) - w - w).is_zero());
}
