#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "sint/expr.hpp"
#include "sint/measure.hpp"

namespace sint {

enum class Shape { unknown, nondecreasing, nonincreasing };

std::string_view to_string(Shape s);

struct LevelSetOptions {
  std::size_t scan_points = 4096;
  double root_tol = 1e-12;
  Shape declared_shape = Shape::unknown;

  void validate() const;
};

/// A function sampled once on an evenly spaced grid over a finite domain,
/// answering α-level-set queries {x : f(x) ≥ α} repeatedly.
///
/// Unknown shapes: runs of grid points with f ≥ α become intervals whose
/// interior boundaries are bracketed down to root_tol. Declared monotone
/// shapes skip the scan and refine a single boundary. Grid points where f is
/// out of domain are nudged into the open neighbourhood; failure there is an
/// EvaluationError. Refinement points that are out of domain count as below
/// the level.
class SampledFunction {
 public:
  SampledFunction(ScalarFn f, Interval domain, LevelSetOptions opts = {});

  IntervalUnion level_set(double alpha);
  /// Level set restricted to [domain.lo, upto], upto ≤ domain.hi.
  IntervalUnion level_set(double alpha, double upto);
  /// Lebesgue measure of level_set(alpha, upto) without building the union.
  double level_length(double alpha, double upto);

  /// Largest sampled value; +∞ when the function blows up on the grid.
  double sampled_max();
  /// Largest sampled value over grid points in [domain.lo, upto].
  double sampled_max(double upto);

  const Interval& domain() const noexcept { return domain_; }
  const LevelSetOptions& options() const noexcept { return opts_; }
  std::size_t evaluations() const noexcept { return evaluations_; }

 private:
  struct Point {
    double x;
    double value;
  };

  void ensure_grid();
  double probe(double x, int side);
  double excess(double x, double alpha);
  double boundary(double below, double above_x, double alpha);
  template <class Sink>
  void scan(double alpha, double upto, Sink&& sink);
  template <class Sink>
  void monotone(double alpha, double upto, Sink&& sink);

  ScalarFn f_;
  Interval domain_;
  LevelSetOptions opts_;
  double step_ = 0.0;
  std::vector<double> grid_;
  std::vector<double> prefix_max_;
  std::vector<double> block_min_;
  std::vector<double> block_max_;
  std::optional<Point> last_end_;
  std::size_t evaluations_ = 0;
};

IntervalUnion level_set(const Expr& f, Interval domain, double alpha, const LevelSetOptions& opts = {});

}  // namespace sint
