#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gen.hpp"
#include "sint/errors.hpp"
#include "sint/levelset.hpp"

using namespace sint;

namespace {

LevelSetOptions with_shape(Shape s) {
  LevelSetOptions o;
  o.declared_shape = s;
  return o;
}

}  // namespace

TEST(LevelSet, LinearIsRightAnchored) {
  const Expr f = parse("x/(2*exp(1))");
  for (double alpha : {0.0, 0.1, 0.5, 0.9}) {
    const IntervalUnion u = level_set(f, {0, 5}, alpha);
    ASSERT_EQ(u.size(), 1u) << alpha;
    EXPECT_NEAR(u.pieces()[0].lo, 2 * std::numbers::e * alpha, 1e-11);
    EXPECT_EQ(u.pieces()[0].hi, 5.0);
  }
  EXPECT_TRUE(level_set(f, {0, 5}, 1.0).empty());
}

TEST(LevelSet, ConstantCoversDomain) {
  EXPECT_EQ(level_set(parse("3"), {1, 4}, 3.0), normalize({{1, 4}}));
  EXPECT_EQ(level_set(parse("3"), {1, 4}, 0.5), normalize({{1, 4}}));
  EXPECT_TRUE(level_set(parse("3"), {1, 4}, 3.5).empty());
}

TEST(LevelSet, SingularLeftEndpoint) {
  // exp(1/x) >= 2 ⇔ x <= 1/ln 2, undefined at 0.
  for (Shape s : {Shape::unknown, Shape::nonincreasing}) {
    const IntervalUnion u = level_set(parse("exp(1/x)"), {0, 5}, 2.0, with_shape(s));
    ASSERT_EQ(u.size(), 1u);
    EXPECT_EQ(u.pieces()[0].lo, 0.0);
    EXPECT_NEAR(u.pieces()[0].hi, 1 / std::log(2.0), 1e-11);
  }
}

TEST(LevelSet, SeveralComponents) {
  // sin-free oscillation: (x-1)^2 (x-3)^2 >= 0.5 on [0, 4]
  const Expr f = parse("(x-1)^2*(x-3)^2");
  const IntervalUnion u = level_set(f, {0, 4}, 0.5);
  ASSERT_EQ(u.size(), 3u);
  const auto g = [](double x) { return (x - 1) * (x - 1) * (x - 3) * (x - 3) - 0.5; };
  EXPECT_NEAR(u.pieces()[0].hi, testgen::bisect(g, 0, 1), 1e-11);
  EXPECT_NEAR(u.pieces()[1].lo, testgen::bisect(g, 1, 2), 1e-11);
  EXPECT_NEAR(u.pieces()[1].hi, testgen::bisect(g, 2, 3), 1e-11);
  EXPECT_NEAR(u.pieces()[2].lo, testgen::bisect(g, 3, 4), 1e-11);
}

TEST(LevelSet, OutOfDomainOnPositiveMeasureIsAnError) {
  EXPECT_THROW(level_set(parse("ln(x-1)"), {0, 2}, 0.0), EvaluationError);
  EXPECT_THROW(level_set(parse("x"), {0, 1}, -1.0), InputError);
  LevelSetOptions bad;
  bad.scan_points = 1;
  EXPECT_THROW(level_set(parse("x"), {0, 1}, 0.5, bad), InputError);
  EXPECT_THROW(level_set(parse("x"), {0, INFINITY}, 0.5), InputError);
}

TEST(LevelSet, DeclaredShapeAgreesWithScan) {
  testgen::Rng rng(11);
  for (int t = 0; t < 100; ++t) {
    const double a = rng.uniform(0.1, 3);
    const double p = rng.uniform(0.5, 3);
    const Expr f = a * pow(Expr::var(), p);
    const double alpha = rng.uniform(0, a * std::pow(5.0, p));
    const IntervalUnion scan = level_set(f, {0, 5}, alpha);
    const IntervalUnion mono = level_set(f, {0, 5}, alpha, with_shape(Shape::nondecreasing));
    ASSERT_EQ(mono.size(), 1u);
    ASSERT_EQ(scan.size(), 1u);
    EXPECT_NEAR(scan.pieces()[0].lo, mono.pieces()[0].lo, 2e-12);
    EXPECT_NEAR(mono.pieces()[0].lo, std::pow(alpha / a, 1 / p), 1e-11);
  }
}

TEST(Property, PointsInSetSatisfyLevelAndGridPointsAboveAreCovered) {
  testgen::Rng rng(5);
  LevelSetOptions opts;
  for (int t = 0; t < 50; ++t) {
    const double c1 = rng.uniform(0.5, 4.5);
    const double c2 = rng.uniform(0.5, 4.5);
    const Expr f = parse("exp(-(x-" + std::to_string(c1) + ")^2) + 0.5*exp(-4*(x-" + std::to_string(c2) + ")^2)");
    const double alpha = rng.uniform(0.05, 1.2);
    const IntervalUnion u = level_set(f, {0, 5}, alpha, opts);
    for (const Interval& p : u.pieces()) {
      for (int k = 0; k <= 20; ++k) {
        const double x = p.lo + p.length() * k / 20;
        ASSERT_GE(evaluate(f, x).value(), alpha - opts.root_tol * 10) << x;
      }
    }
    const double step = 5.0 / (opts.scan_points - 1);
    for (std::size_t i = 0; i < opts.scan_points; ++i) {
      const double x = i * step;
      if (evaluate(f, x).value() < alpha + opts.root_tol) continue;
      bool covered = false;
      for (const Interval& p : u.pieces()) covered = covered || p.contains(x);
      ASSERT_TRUE(covered) << x;
    }
  }
}

TEST(Property, Nested) {
  testgen::Rng rng(8);
  for (int t = 0; t < 60; ++t) {
    const Expr f = parse("(x-" + std::to_string(rng.uniform(0, 5)) + ")^2 + " + std::to_string(rng.uniform(0, 1)));
    SampledFunction s(as_function(f), {0, 5});
    double a1 = rng.uniform(0, 10);
    double a2 = rng.uniform(0, 10);
    if (a1 > a2) std::swap(a1, a2);
    const IntervalUnion big = s.level_set(a1);
    const IntervalUnion small = s.level_set(a2);
    ASSERT_TRUE(is_subset(small, big, 1e-12));
    ASSERT_LE(small.total_length(), big.total_length() + 1e-12);
    ASSERT_NEAR(s.level_length(a1, 5.0), big.total_length(), 1e-12);
  }
}

TEST(Property, LengthMatchesCounting) {
  testgen::Rng rng(21);
  for (int t = 0; t < 30; ++t) {
    const std::string c = std::to_string(rng.uniform(0.5, 4.5));
    const Expr e = parse("exp(-(x-" + c + ")^2)");
    const auto fe = [cc = std::stod(c)](double x) { return std::exp(-(x - cc) * (x - cc)); };
    const double alpha = rng.uniform(0.01, 0.99);
    SampledFunction s(as_function(e), {0, 5});
    ASSERT_NEAR(s.level_length(alpha, 5.0), testgen::count_measure(fe, 0, 5, alpha, 200000), 1e-4);
    const double upto = rng.uniform(0, 5);
    ASSERT_NEAR(s.level_length(alpha, upto), testgen::count_measure(fe, 0, upto, alpha, 200000), 1e-4);
  }
}
