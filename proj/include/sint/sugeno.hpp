#pragma once

#include <cstddef>
#include <functional>
#include <map>

#include "sint/expr.hpp"
#include "sint/levelset.hpp"
#include "sint/measure.hpp"

namespace sint {

struct SugenoOptions {
  double tol = 1e-8;
  double alpha_cap = 1e6;
  /// Quadrature tolerance for density measures.
  double measure_tol = 1e-9;
  LevelSetOptions level;

  void validate() const;
};

/// Sugeno integral with its fixed-point certificate: the true value lies in
/// [alpha_star, alpha_star + bracket_width] where F(alpha_star) ≥ alpha_star
/// and F(alpha_star + bracket_width) < alpha_star + bracket_width.
struct SugenoValue {
  double value = 0.0;
  double alpha_star = 0.0;
  double F_at_lower = 0.0;
  double F_at_upper = 0.0;
  std::size_t evaluations = 0;
  double bracket_width = 0.0;
  double alpha_max = 0.0;
};

/// The distribution function F(α) = μ(A ∩ {f ≥ α}) of one integrand,
/// reusing a single grid sampling across α queries.
class Distribution {
 public:
  Distribution(ScalarFn f, Interval domain, MeasureSpec m, const SugenoOptions& opts = {});

  double operator()(double alpha);
  /// min(μ(A), padded sampled sup f), with +∞ replaced by the cap.
  double alpha_max();
  std::size_t function_evaluations() const noexcept { return sampled_.evaluations(); }

 private:
  SampledFunction sampled_;
  MeasureSpec measure_;
  SugenoOptions opts_;
};

/// sup{α ∈ [lo, hi] : F(α) ≥ α} by bisection on the monotone predicate,
/// assuming F nonincreasing. The bracket is checked and widened toward
/// [0, hi_limit] when the predicate disagrees with it.
SugenoValue solve_fixed_point(const std::function<double(double)>& F, double lo, double hi, double tol,
                              double hi_limit);

double distribution(const Expr& f, Interval domain, const MeasureSpec& m, double alpha,
                    const LevelSetOptions& opts = {}, double measure_tol = 1e-9);

SugenoValue sugeno_integral(const ScalarFn& f, Interval domain, const MeasureSpec& m,
                            const SugenoOptions& opts = {});
SugenoValue sugeno_integral(const Expr& f, Interval domain, const MeasureSpec& m,
                            const SugenoOptions& opts = {});

/// Brute force: max over α_j = j·α_max/grid_n (j = 1..grid_n) of min(α_j, F(α_j)).
/// A lower bound within α_max/grid_n (plus level-set error) of the true value.
double sugeno_oracle(const Expr& f, Interval domain, const MeasureSpec& m, std::size_t grid_n,
                     const SugenoOptions& opts = {});

/// x ↦ Sugeno integral of g over [0, x] with Lebesgue measure, for many x in
/// [0, hi]. One grid sampling of g is shared by all queries; each query is
/// bracketed by the 1-Lipschitz, nondecreasing dependence on x.
class RunningSugeno {
 public:
  RunningSugeno(ScalarFn g, double hi, const SugenoOptions& opts = {});

  double operator()(double x);
  std::size_t evaluations() const noexcept { return sampled_.evaluations(); }

 private:
  SampledFunction sampled_;
  SugenoOptions opts_;
  std::map<double, double> memo_;
};

}  // namespace sint
