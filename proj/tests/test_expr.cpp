#include <cmath>
#include <numbers>

#include "doctest.h"
#include "whitney/expr.hpp"

using namespace whitney;

TEST_CASE("expressions evaluate") {
  const Expression e = Expression::parse("x*x + 2*y - sin(pi/2)", {"x", "y"});
  CHECK(e(3.0, 1.0) == doctest::Approx(10.0));
  CHECK(Expression::parse("atan2(1, 1)", {})(0.0) == doctest::Approx(std::numbers::pi / 4));
  CHECK(Expression::parse("-(-x)", {"x"})(2.5) == doctest::Approx(2.5));
  CHECK(Expression::parse("2 - 3 - 4", {})(0.0) == doctest::Approx(-5.0));
  CHECK(Expression::parse("8 / 4 / 2", {})(0.0) == doctest::Approx(1.0));
  CHECK(Expression::parse("1e-3 * 2.5E2", {})(0.0) == doctest::Approx(0.25));
  CHECK(Expression::parse("sqrt(exp(0)) + cos(0)", {})(0.0) == doctest::Approx(2.0));
  CHECK(Expression::parse("3 + 4", {"x"}).is_constant());
  CHECK_FALSE(Expression::parse("x - x + 1", {"x"}).evaluate(std::vector<double>{5.0}) != 1.0);
}

TEST_CASE("syntax errors carry positions") {
  try {
    Expression::parse("x +", {"x", "y"});
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 3);
    CHECK_FALSE(e.expected().empty());
  }
  CHECK_THROWS_AS(Expression::parse("foo(x)", {"x"}), ParseError);
  CHECK_THROWS_AS(Expression::parse("z", {"x", "y"}), ParseError);
  CHECK_THROWS_AS(Expression::parse("atan2(x)", {"x"}), ParseError);
  CHECK_THROWS_AS(Expression::parse("(x", {"x"}), ParseError);
  CHECK_THROWS_AS(Expression::parse("x y", {"x", "y"}), ParseError);
  CHECK_THROWS_AS(Expression::parse("", {"x"}), ParseError);
}

TEST_CASE("derivatives match central differences") {
  const char* texts[] = {"sin(x)*cos(y)", "x*x*y - 3*y", "exp(x/2)/(1 + y*y)", "sqrt(x*x + y*y)", "atan2(y, x)",
                         "cos(2*pi*x) + x*sin(y)"};
  for (const char* text : texts) {
    const Expression e = Expression::parse(text, {"x", "y"});
    const Expression dx = e.derivative(0), dy = e.derivative(1);
    for (double x : {0.3, 1.1, -0.7}) {
      for (double y : {0.4, -1.3}) {
        const double h = 1e-6;
        CHECK(dx(x, y) == doctest::Approx((e(x + h, y) - e(x - h, y)) / (2 * h)).epsilon(1e-6));
        CHECK(dy(x, y) == doctest::Approx((e(x, y + h) - e(x, y - h)) / (2 * h)).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("printed expressions parse back to the same function") {
  const Expression e = Expression::parse("-x*(y - 2)/(1 + exp(-x))", {"x", "y"});
  const Expression back = Expression::parse(e.to_string(), {"x", "y"});
  for (double x : {-1.0, 0.5, 2.0}) CHECK(back(x, 0.25) == doctest::Approx(e(x, 0.25)));
}
