#include <doctest.h>

#include <cmath>

#include "algspray/expr.hpp"

using namespace algspray;

namespace {
double ev(const ExprPtr& e, std::vector<double> x, std::vector<double> y) {
  auto sp = JetSpace::get(static_cast<int>(x.size() + y.size()), 0);
  return e->eval(x, y, sp, 0).value();
}
}  // namespace

TEST_CASE("parser handles precedence and unary minus") {
  auto e = parse_expr("-x1^2 + 2*y1*x2", 2, 1);
  CHECK(ev(e, {3.0, 5.0}, {7.0}) == doctest::Approx(-9.0 + 70.0));
  // ^ binds tighter than unary minus and *
  CHECK(ev(parse_expr("2*x1^3", 1, 0), {2.0}, {}) == doctest::Approx(16.0));
  CHECK(ev(parse_expr("-x1^2", 1, 0), {3.0}, {}) == doctest::Approx(-9.0));
  CHECK(ev(parse_expr("(1 - x1)/(1 + x1)", 1, 0), {0.5}, {}) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("elementary functions evaluate") {
  auto e = parse_expr("sin(x1)*cos(x1) + exp(y1) - log(1 + y1^2) + sqrt(4)", 1, 1);
  const double x = 0.3, y = -0.8;
  double want = std::sin(x) * std::cos(x) + std::exp(y) - std::log(1 + y * y) + 2.0;
  CHECK(ev(e, {x}, {y}) == doctest::Approx(want).epsilon(1e-14));
  CHECK(ev(parse_expr("sinh(x1) + cosh(x1) + tan(x1)", 1, 0), {0.2}, {}) ==
        doctest::Approx(std::sinh(0.2) + std::cosh(0.2) + std::tan(0.2)).epsilon(1e-14));
}

TEST_CASE("variable indices are validated against the declared dimensions") {
  CHECK_THROWS_AS(parse_expr("x3", 2, 2), ParseError);
  CHECK_THROWS_AS(parse_expr("y3", 2, 2), ParseError);
  CHECK_THROWS_AS(parse_expr("x1", 0, 2), ParseError);
  CHECK_NOTHROW(parse_expr("y2", 0, 2));
}

TEST_CASE("malformed input reports the offset") {
  for (const char* bad : {"", "x1 +", "2 ** 3", "sin()", "foo(x1)", "x1 ^ y1", "(x1", "x1 x2"}) {
    try {
      parse_expr(bad, 2, 2);
      FAIL("expected ParseError for: ", bad);
    } catch (const ParseError& e) {
      CHECK(e.offset() <= std::string(bad).size());
    }
  }
}

TEST_CASE("printing is canonical and reparseable") {
  auto e = parse_expr("-x1^2*(y1 + 2/y2) - sin(x2)", 2, 2);
  std::string p = e->print();
  auto e2 = parse_expr(p, 2, 2);
  CHECK(e2->print() == p);
  CHECK(ev(e, {0.4, 1.1}, {2.0, 0.7}) == doctest::Approx(ev(e2, {0.4, 1.1}, {2.0, 0.7})));
}

TEST_CASE("uses_y reflects fiber dependence") {
  CHECK(parse_expr("x1 + 1", 2, 2)->uses_y() == false);
  CHECK(parse_expr("x1*y2", 2, 2)->uses_y() == true);
}
