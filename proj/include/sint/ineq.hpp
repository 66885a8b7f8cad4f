#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sint/expr.hpp"
#include "sint/measure.hpp"
#include "sint/sugeno.hpp"

namespace sint {

enum class IneqId { pk1, pk2, gpk1, gpk2, hk, jensen_probe };

std::string_view to_string(IneqId id);
IneqId parse_ineq_id(std::string_view text);

enum class InnerIntegral { riemann, sugeno };

std::string_view to_string(InnerIntegral inner);
InnerIntegral parse_inner(std::string_view text);

struct CheckConfig {
  SugenoOptions sugeno;
  double quad_tol = 1e-9;
  double violation_tol = 1e-6;
  double inverse_tol = 1e-12;
  std::size_t probe_points = 1024;

  void validate() const;
};

struct HypothesisFlag {
  std::string name;
  bool value = false;

  friend bool operator==(const HypothesisFlag&, const HypothesisFlag&) = default;
};

/// Both sides of one inequality. holds ⇔ rhs − lhs ≥ −violation_tol.
struct IneqReport {
  IneqId id = IneqId::pk1;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool holds = false;
  double violation_tol = 0.0;
  std::vector<HypothesisFlag> hypothesis_flags;
  std::string notes;
  /// Outer Sugeno integrals behind each side (rhs_integral is before any factor e).
  SugenoValue lhs_integral;
  SugenoValue rhs_integral;

  const HypothesisFlag* flag(std::string_view name) const;
};

/// Pointwise inverse of a strictly monotone expression by bracketing and
/// bisection. Monotonicity is probed on [-64, 64]; when that fails it is
/// probed on (0, 64] and the inverse is restricted to [0, ∞).
class NumericInverse {
 public:
  explicit NumericInverse(Expr bij, double tol = 1e-12);

  EvalResult operator()(double y) const;
  bool increasing() const noexcept { return increasing_; }
  bool half_line() const noexcept { return half_line_; }

 private:
  Expr bij_;
  double tol_;
  bool increasing_ = true;
  bool half_line_ = false;
};

/// SINT exp((1/x)∫_0^x ln f) dx ≤ SINT f dx on the domain, inner integral Riemann.
IneqReport pk_case1(const Expr& f, Interval domain, const CheckConfig& cfg = {});
/// SINT exp((1/x) SINT_0^x ln f) dx ≤ e·SINT f dx.
IneqReport pk_case2(const Expr& f, Interval domain, const CheckConfig& cfg = {});
/// SINT F((1/x) ∫_0^x F⁻¹(f(t)) dt) dx ≤ e·SINT f dx, inner Riemann or Sugeno.
IneqReport generalized_pk(const Expr& f, const Expr& bij, InnerIntegral inner, Interval domain,
                          const CheckConfig& cfg = {});
/// SINT φ((1/x) SINT_0^x f) dx/x ≤ e·SINT φ(f) dx/x on [a, b], a > 0.
IneqReport hardy_knopp(const Expr& f, const Expr& phi, Interval domain, const CheckConfig& cfg = {});
/// Exploratory: exp(SINT_0^x g) against SINT_0^x exp(g).
IneqReport jensen_probe(const Expr& g, double x, const CheckConfig& cfg = {});

}  // namespace sint
