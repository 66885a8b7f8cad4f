#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "sint/expr.hpp"

namespace sint {

/// Closed interval [lo, hi] ⊂ [0, ∞]. hi = +∞ is allowed for domains only.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const noexcept { return hi - lo; }
  bool contains(double x) const noexcept { return lo <= x && x <= hi; }

  /// Throws InputError unless 0 ≤ lo ≤ hi and lo is finite.
  void validate() const;

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Finite union of disjoint intervals, sorted by lo, with prev.hi < next.lo.
class IntervalUnion {
 public:
  IntervalUnion() = default;

  std::span<const Interval> pieces() const noexcept { return pieces_; }
  bool empty() const noexcept { return pieces_.empty(); }
  std::size_t size() const noexcept { return pieces_.size(); }

  /// Lebesgue measure.
  double total_length() const noexcept;

  friend bool operator==(const IntervalUnion&, const IntervalUnion&) = default;
  friend IntervalUnion normalize(std::vector<Interval> raw);

 private:
  std::vector<Interval> pieces_;
};

/// Sorts, merges overlapping and touching pieces.
IntervalUnion normalize(std::vector<Interval> raw);
IntervalUnion intersect(const IntervalUnion& u, const Interval& d);
/// u ⊆ v, comparing endpoints with an absolute slack.
bool is_subset(const IntervalUnion& u, const IntervalUnion& v, double slack = 0.0);

struct UniformWeight {};
struct ReciprocalWeight {};
struct DensityWeight {
  Expr density;
};

/// Monotone measure μ(E) = ∫_E w(t) dt for a weight density w.
class MeasureSpec {
 public:
  using Weight = std::variant<UniformWeight, ReciprocalWeight, DensityWeight>;

  MeasureSpec() = default;
  explicit MeasureSpec(Weight w) : weight_(std::move(w)) {}

  static MeasureSpec uniform() { return MeasureSpec(UniformWeight{}); }
  static MeasureSpec reciprocal() { return MeasureSpec(ReciprocalWeight{}); }
  static MeasureSpec density(Expr w) { return MeasureSpec(DensityWeight{std::move(w)}); }

  /// Accepts `uniform`, `reciprocal` or `density:<expr>`.
  static MeasureSpec parse(std::string_view text);
  std::string to_string() const;

  const Weight& weight() const noexcept { return weight_; }
  bool is_uniform() const noexcept { return std::holds_alternative<UniformWeight>(weight_); }

 private:
  Weight weight_{UniformWeight{}};
};

/// μ(u). May be +∞. `tol` is the relative quadrature tolerance for densities.
double measure(const MeasureSpec& m, const IntervalUnion& u, double tol = 1e-9);
double measure(const MeasureSpec& m, const Interval& d, double tol = 1e-9);

}  // namespace sint
