#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gen.hpp"
#include "sint/errors.hpp"
#include "sint/quad.hpp"

using namespace sint;

TEST(Integrate, Fixtures) {
  const QuadResult r = integrate(parse("1/x"), 1, 2);
  EXPECT_NEAR(r.value, std::log(2.0), 1e-9);
  EXPECT_GE(r.abs_error_estimate, 0.0);
  EXPECT_GT(r.evaluations, 0u);
  EXPECT_NEAR(integrate(parse("ln(x)"), 0, 1).value, -1.0, 1e-9);
  EXPECT_THROW(integrate(parse("1/x"), 0, 1), DivergenceSuspected);
}

TEST(Integrate, DivergenceCarriesPartialValue) {
  try {
    integrate(parse("1/x"), 0, 1);
  } catch (const DivergenceSuspected& e) {
    EXPECT_GT(e.partial_value(), 10.0);
  }
}

TEST(Integrate, OpenRuleNeverTouchesEndpoints) {
  std::vector<double> seen;
  const ScalarFn f = [&seen](double x) -> EvalResult {
    seen.push_back(x);
    return x * x;
  };
  EXPECT_NEAR(integrate(f, 0, 3).value, 9.0, 1e-12);
  for (double x : seen) {
    EXPECT_GT(x, 0.0);
    EXPECT_LT(x, 3.0);
  }
}

TEST(Integrate, RejectsBadArguments) {
  EXPECT_THROW(integrate(parse("x"), 2, 1), InputError);
  EXPECT_THROW(integrate(parse("x"), 0, INFINITY), InputError);
  EXPECT_THROW(integrate(parse("x"), 0, 1, 0.0), InputError);
  EXPECT_THROW(integrate(parse("ln(x-1)"), 0, 2), EvaluationError);
}

TEST(LnCumulative, Fixtures) {
  EXPECT_NEAR(ln_cumulative(parse("x/2"), 5).value, 5 * (std::log(2.5) - 1), 1e-9);
  EXPECT_NEAR(ln_cumulative(parse("1"), 3.7).value, 0.0, 1e-12);
  EXPECT_THROW(ln_cumulative(parse("exp(1/x)"), 1), DivergenceSuspected);
}

TEST(Cumulative, IntegrableSingularities) {
  const QuadOptions o;
  EXPECT_NEAR(cumulative(as_function(parse("x^(-0.5)")), 4, o).value, 4.0, 1e-8);
  EXPECT_NEAR(cumulative(as_function(parse("ln(x)^2")), 1, o).value, 2.0, 1e-9);
  EXPECT_THROW(cumulative(as_function(parse("x^(-1.5)")), 1, o), DivergenceSuspected);
}

TEST(Property, AntiderivativeFamily) {
  testgen::Rng rng(17);
  for (int t = 0; t < 40; ++t) {
    const double c = rng.uniform(0.2, 8);
    const Expr f = Expr::var() / Expr::constant(c);
    for (double x : {0.5, 1.0, 2.0, 5.0}) {
      ASSERT_NEAR(ln_cumulative(f, x).value, x * (std::log(x / c) - 1), 1e-9) << c << " " << x;
    }
  }
}

TEST(Property, Linearity) {
  testgen::Rng rng(23);
  for (int t = 0; t < 100; ++t) {
    const double a = rng.uniform(0, 2);
    const double b = a + rng.uniform(0.1, 3);
    const Expr f = exp(rng.uniform(-1, 1) * Expr::var());
    const Expr g = pow(Expr::var() + 1.0, rng.uniform(-2, 3));
    const double tol = 1e-9;
    ASSERT_NEAR(integrate(f + g, a, b, tol).value, integrate(f, a, b, tol).value + integrate(g, a, b, tol).value,
                2 * tol);
  }
}

TEST(Property, TighterToleranceDoesNotHurt) {
  struct Case {
    const char* f;
    double a;
    double b;
    double exact;
  };
  const Case cases[] = {{"1/x", 1, 2, std::log(2.0)},
                        {"exp(x)", 0, 1, std::numbers::e - 1},
                        {"x^0.5", 0, 1, 2.0 / 3.0},
                        {"1/(1+x^2)", 0, 1, std::numbers::pi / 4}};
  for (const Case& c : cases) {
    double prev = INFINITY;
    for (double tol : {1e-4, 1e-6, 1e-8, 1e-10}) {
      const double err = std::abs(integrate(parse(c.f), c.a, c.b, tol).value - c.exact);
      ASSERT_LE(err, tol) << c.f;
      ASSERT_LE(err, std::max(prev, 1e-14)) << c.f << " tol " << tol;
      prev = err;
    }
  }
}

TEST(RunningIntegral, MatchesDirectQuadrature) {
  RunningIntegral running(ln_of(as_function(parse("x/2 + 0.1"))), 5, 64);
  testgen::Rng rng(29);
  for (int t = 0; t < 50; ++t) {
    const double x = rng.uniform(0, 5);
    const double direct = x == 0 ? 0 : integrate(parse("ln(x/2 + 0.1)"), 0, x, 1e-12).value;
    ASSERT_NEAR(running(x), direct, 1e-9) << x;
  }
  EXPECT_EQ(running(0.0), 0.0);
}
