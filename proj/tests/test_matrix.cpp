#include <catch2/catch_amalgamated.hpp>

#include "nnt/matrix.hpp"

using namespace nnt;

TEST_CASE("rational parsing and canonical form", "[matrix]") {
  CHECK(rat_parse("3/4") == rat(3, 4));
  CHECK(rat_parse("-6/4") == rat(-3, 2));      // reduced
  CHECK(rat_parse("4/2") == rat(2));           // integral
  CHECK(rat_str(rat(-3, 2)) == "-3/2");
  CHECK(rat_str(rat(5)) == "5");
  CHECK(rat(2, -4) == rat(-1, 2));             // denominator normalized positive
  CHECK_THROWS_AS(rat_parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(rat_parse("a"), std::invalid_argument);
  CHECK_THROWS_AS(rat_parse("1/"), std::invalid_argument);
  CHECK_THROWS_AS(rat_parse(""), std::invalid_argument);
  CHECK_THROWS_AS(rat(1, 0), std::invalid_argument);
}

TEST_CASE("matrix arithmetic basics", "[matrix]") {
  Mat a = Mat::from_rows({{1, 2}, {3, 4}});
  Mat b = Mat::from_rows({{0, 1}, {1, 0}});
  CHECK(a * b == Mat::from_rows({{2, 1}, {4, 3}}));
  CHECK(a + b - b == a);
  CHECK((a * rat(1, 2)) * rat(2) == a);
  CHECK(a.transpose().transpose() == a);
  CHECK(Mat::identity(2) * a == a);
  CHECK((-a) + a == Mat(2, 2));
  CHECK_THROWS_AS(a * Mat(3, 3), std::invalid_argument);
  CHECK_THROWS_AS(a + Mat(3, 3), std::invalid_argument);
}

TEST_CASE("determinant, rank, inverse", "[matrix]") {
  Mat a = Mat::from_rows({{2, 1, 0}, {0, 3, 1}, {1, 0, 1}});
  CHECK(a.det() == rat(7));
  CHECK(a.rank() == 3);
  CHECK(a * a.inverse() == Mat::identity(3));
  CHECK(a.inverse() * a == Mat::identity(3));

  Mat sing = Mat::from_rows({{1, 2}, {2, 4}});
  CHECK(sing.det() == 0);
  CHECK(sing.rank() == 1);
  CHECK_THROWS_AS(sing.inverse(), std::domain_error);

  // det is multiplicative on a fractional example
  Mat c(2, 2);
  c.at(0, 0) = rat(1, 2);
  c.at(0, 1) = rat(1, 3);
  c.at(1, 0) = rat(1, 5);
  c.at(1, 1) = rat(1, 7);
  CHECK((a.det() * 0 + c.det()) == rat(1, 14) - rat(1, 15));
}

TEST_CASE("solve and kernels", "[matrix]") {
  Mat a = Mat::from_rows({{1, 2, 3}, {2, 4, 6}});
  Mat k = a.kernel_basis();
  CHECK(k.cols() == 2);
  CHECK((a * k).is_zero());

  Mat rhs(2, 1);
  rhs.at(0, 0) = 1;
  rhs.at(1, 0) = 2;
  auto x = Mat::solve(a, rhs);
  REQUIRE(x.has_value());
  CHECK(a * *x == rhs);

  Mat bad_rhs(2, 1);
  bad_rhs.at(0, 0) = 1;
  bad_rhs.at(1, 0) = 3;  // inconsistent with the duplicated row
  CHECK_FALSE(Mat::solve(a, bad_rhs).has_value());
}

TEST_CASE("column space and span predicates", "[matrix]") {
  Mat a = Mat::from_rows({{1, 0, 1}, {0, 1, 1}, {0, 0, 0}});
  Mat basis = a.column_space_basis();
  CHECK(basis.cols() == 2);
  CHECK(spans_equal(basis, a.block(0, 0, 3, 2)));
  Mat outside(3, 1);
  outside.at(2, 0) = 1;
  CHECK_FALSE(span_contains(basis, outside));
  CHECK(span_contains(basis, a));
}

TEST_CASE("blocks compose and extract", "[matrix]") {
  Mat a = Mat::from_rows({{1, 2, 3, 4}, {5, 6, 7, 8}, {9, 10, 11, 12}, {13, 14, 15, 16}});
  Mat b = a.block(1, 1, 2, 2);
  CHECK(b == Mat::from_rows({{6, 7}, {10, 11}}));
  Mat c(4, 4);
  c.set_block(1, 1, b);
  CHECK(c.at(2, 2) == 11);
  CHECK_THROWS_AS(a.block(3, 3, 2, 2), std::out_of_range);
}
