#include <cmath>

#include <doctest.h>

#include "diracedge/common.hpp"
#include "diracedge/expression.hpp"

using diracedge::Expression;

TEST_SUITE("expression") {

TEST_CASE("evaluates the documented grammar against std math") {
  struct Case {
    const char* text;
    double x1, x2, xi1, xi2;
    double expect;
  };
  const Case cases[] = {
      {"tanh(x2)", 0.0, 0.7, 0.0, 0.0, std::tanh(0.7)},
      {"x1^2+3*xi1*x2", 1.5, -2.0, 0.25, 0.0, 1.5 * 1.5 + 3.0 * 0.25 * -2.0},
      {"-0.5*x2", 0.0, 1.2, 0.0, 0.0, -0.6},
      {"exp(-(x1-1)^2)", 0.3, 0.0, 0.0, 0.0, std::exp(-0.49)},
      {"2+3*4^0.5", 0.0, 0.0, 0.0, 0.0, 8.0},
      {"sin(x1)*cos(xi2)", 0.4, 0.0, 0.0, -1.1,
       std::sin(0.4) * std::cos(-1.1)},
      {"2^3^x1", 2.0, 0.0, 0.0, 0.0, 512.0},  // right associative
      {"x1/x2/xi1", 8.0, 2.0, 2.0, 0.0, 2.0},  // left associative
      {"--x1", 3.0, 0.0, 0.0, 0.0, 3.0},
  };
  for (const Case& c : cases) {
    CAPTURE(c.text);
    Expression e = Expression::parse(c.text);
    CHECK(e(c.x1, c.x2, c.xi1, c.xi2) == doctest::Approx(c.expect).epsilon(1e-14));
  }
}

TEST_CASE("coordinates are ordered (x1, x2, xi1, xi2)") {
  Expression e = Expression::parse("x1 + 10*x2 + 100*xi1 + 1000*xi2");
  CHECK(e(1.0, 2.0, 3.0, 4.0) == doctest::Approx(4321.0));
}

TEST_CASE("rejects malformed input with a character position") {
  const char* bad[] = {"x1+*x2", "foo(x1)", "(x1", "", "x3", "1..2"};
  for (const char* text : bad) {
    CAPTURE(text);
    CHECK_THROWS_AS((void)Expression::parse(text), diracedge::invalid_input);
  }
  try {
    (void)Expression::parse("x1+*x2");
    FAIL("expected invalid_input");
  } catch (const diracedge::invalid_input& e) {
    // The diagnostic names a position inside the string.
    CHECK(std::string(e.what()).find("position") != std::string::npos);
  }
}

}  // TEST_SUITE
