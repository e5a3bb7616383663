#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "wardlab/expression.hpp"

using namespace wardlab;

TEST_CASE("literals, variable, arithmetic") {
  CHECK(Expression::parse("3")(0.0) == 3.0);
  CHECK(Expression::parse("x")(4.5) == 4.5);
  CHECK(Expression::parse("n")(4.5) == 4.5);
  CHECK(Expression::parse("x+5")(2.0) == 7.0);
  CHECK(Expression::parse("2*x")(3.0) == 6.0);
  CHECK(Expression::parse("1 - 2 - 3")(0.0) == -4.0);  // left associative
  CHECK(Expression::parse("8/4/2")(0.0) == 1.0);
  CHECK(Expression::parse("2 + 3 * 4")(0.0) == 14.0);
  CHECK(Expression::parse("(2 + 3) * 4")(0.0) == 20.0);
  CHECK(Expression::parse("-x")(2.0) == -2.0);
  CHECK(Expression::parse("--x")(2.0) == 2.0);
}

TEST_CASE("powers") {
  CHECK(Expression::parse("x^2")(3.0) == 9.0);
  CHECK(Expression::parse("2^3^2")(0.0) == 512.0);  // right associative
  CHECK(Expression::parse("pow(x,3)")(2.0) == 8.0);
  CHECK(Expression::parse("-x^2")(2.0) == -4.0);
}

TEST_CASE("named functions") {
  CHECK(Expression::parse("sqrt(x)")(9.0) == 3.0);
  CHECK(Expression::parse("log(x)")(1000.0) == Catch::Approx(3.0));
  CHECK(Expression::parse("ln(x)")(std::exp(2.0)) == Catch::Approx(2.0));
  CHECK(Expression::parse("cos(0)")(0.0) == 1.0);
  CHECK(Expression::parse("abs(x)")(-4.0) == 4.0);
  CHECK(Expression::parse("cos(6*ln(n+1))")(0.0) == 1.0);
  CHECK(Expression::parse("cos(pi)")(0.0) == Catch::Approx(-1.0));
  CHECK(Expression::parse("ln(e)")(0.0) == Catch::Approx(1.0));
}

TEST_CASE("step indicator") {
  const Expression s = Expression::parse("step(0)");
  CHECK(s(-0.1) == 0.0);
  CHECK(s(0.0) == 1.0);
  CHECK(s(3.0) == 1.0);
  CHECK(Expression::parse("step(2)")(1.9) == 0.0);
  CHECK(Expression::parse("step(1+1)")(2.0) == 1.0);
  CHECK_THROWS_AS(Expression::parse("step(x)"), ContractError);
}

TEST_CASE("piecewise") {
  // value -1 below 0, x on [0,1), 1 from 1 on
  const Expression p = Expression::parse("piecewise(0, -1, 1, x, 1)");
  CHECK(p(-5.0) == -1.0);
  CHECK(p(0.5) == 0.5);
  CHECK(p(2.0) == 1.0);
  CHECK_THROWS_AS(Expression::parse("piecewise(1, x, 0, x, 3)"), ContractError);
  CHECK_THROWS_AS(Expression::parse("piecewise(1, x)"), ContractError);
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(Expression::parse(""), ContractError);
  CHECK_THROWS_AS(Expression::parse("x +"), ContractError);
  CHECK_THROWS_AS(Expression::parse("x 5"), ContractError);
  CHECK_THROWS_AS(Expression::parse("foo(x)"), ContractError);
  CHECK_THROWS_AS(Expression::parse("y"), ContractError);
  CHECK_THROWS_AS(Expression::parse("(x"), ContractError);
  CHECK_THROWS_AS(Expression::parse("pow(x)"), ContractError);
}
