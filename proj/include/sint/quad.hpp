#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "sint/expr.hpp"

namespace sint {

struct QuadResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  std::size_t evaluations = 0;
};

struct QuadOptions {
  double tol = 1e-9;
  std::size_t max_subdivisions = 2000;
  /// Geometric panels toward a singular left endpoint before giving up.
  std::size_t max_panels = 200;
};

/// ∫_a^b f by globally adaptive 7/15-point Gauss–Kronrod. The rule is open,
/// so a and b are never evaluated. Throws DivergenceSuspected when the
/// subdivision budget runs out and EvaluationError when a node is
/// out-of-domain.
QuadResult integrate(const ScalarFn& f, double a, double b, const QuadOptions& opts = {});
QuadResult integrate(const Expr& f, double a, double b, double tol = 1e-9);

/// ∫_0^x g with geometric refinement toward 0 (panels [x/2^(k+1), x/2^k]).
/// Tolerates integrable singularities at 0 such as ln t or t^(-1/2).
QuadResult cumulative(const ScalarFn& g, double x, const QuadOptions& opts = {});

/// ∫_0^x ln f(t) dt.
QuadResult ln_cumulative(const Expr& f, double x, double tol = 1e-9);

/// x ↦ ∫_0^x g for many x in [0, hi]. Prefix sums over an evenly spaced grid
/// are built lazily; off-grid queries add one short panel to the nearest
/// grid point below.
class RunningIntegral {
 public:
  RunningIntegral(ScalarFn g, double hi, std::size_t grid_points, const QuadOptions& opts = {});

  double operator()(double x);
  std::size_t evaluations() const noexcept { return evaluations_; }

 private:
  double prefix(std::size_t k);

  ScalarFn g_;
  double hi_;
  double step_;
  std::size_t points_;
  QuadOptions opts_;
  QuadOptions panel_opts_;
  std::vector<double> prefix_;
  std::map<double, double> memo_;
  std::size_t evaluations_ = 0;
};

}  // namespace sint
