#include "sint/ineq.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>

#include "sint/errors.hpp"
#include "sint/quad.hpp"

namespace sint {

namespace {

constexpr double kE = std::numbers::e;

std::string format(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void check_outer_domain(const Interval& d) {
  d.validate();
  if (!std::isfinite(d.hi) || !(d.hi > 0.0)) throw InputError("check domain needs a finite upper end b > 0");
}

/// Values of fn on an even grid over d; out-of-domain points are skipped.
std::vector<double> probe_values(const ScalarFn& fn, const Interval& d, std::size_t n) {
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = i + 1 == n ? d.hi : d.lo + d.length() * static_cast<double>(i) / static_cast<double>(n - 1);
    EvalResult r = fn(x);
    if (r) out.push_back(r.value());
  }
  return out;
}

bool nondecreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] < v[i - 1] - 1e-12 * std::max(1.0, std::abs(v[i - 1]))) return false;
  }
  return true;
}

bool all_at_least(const std::vector<double>& v, double floor) {
  return std::all_of(v.begin(), v.end(), [floor](double x) { return x >= floor; });
}

ScalarFn running_average_of(std::function<double(double)> running, Expr outer) {
  return [running = std::move(running), outer = std::move(outer)](double x) -> EvalResult {
    if (!(x > 0.0)) return DomainFault{Expr(), x, "running average undefined at 0"};
    return evaluate(outer, running(x) / x);
  };
}

void finish(IneqReport& r, const CheckConfig& cfg) {
  r.slack = r.rhs - r.lhs;
  r.violation_tol = cfg.violation_tol;
  r.holds = r.slack >= -cfg.violation_tol;
}

std::function<double(double)> share(std::shared_ptr<RunningIntegral> p) {
  return [p = std::move(p)](double x) { return (*p)(x); };
}

std::function<double(double)> share(std::shared_ptr<RunningSugeno> p) {
  return [p = std::move(p)](double x) { return (*p)(x); };
}

}  // namespace

std::string_view to_string(IneqId id) {
  switch (id) {
    case IneqId::pk1:
      return "pk1";
    case IneqId::pk2:
      return "pk2";
    case IneqId::gpk1:
      return "gpk1";
    case IneqId::gpk2:
      return "gpk2";
    case IneqId::hk:
      return "hk";
    case IneqId::jensen_probe:
      return "jensen_probe";
  }
  return "?";
}

IneqId parse_ineq_id(std::string_view text) {
  if (text == "pk1") return IneqId::pk1;
  if (text == "pk2") return IneqId::pk2;
  if (text == "gpk1") return IneqId::gpk1;
  if (text == "gpk2") return IneqId::gpk2;
  if (text == "hk") return IneqId::hk;
  if (text == "jensen" || text == "jensen_probe") return IneqId::jensen_probe;
  throw InputError("unknown inequality id '" + std::string(text) + "'");
}

std::string_view to_string(InnerIntegral inner) { return inner == InnerIntegral::riemann ? "riemann" : "sugeno"; }

InnerIntegral parse_inner(std::string_view text) {
  if (text == "riemann") return InnerIntegral::riemann;
  if (text == "sugeno") return InnerIntegral::sugeno;
  throw InputError("inner integral must be riemann or sugeno");
}

void CheckConfig::validate() const {
  sugeno.validate();
  if (!(quad_tol > 0.0)) throw InputError("quadrature tolerance must be positive");
  if (!(violation_tol >= 0.0)) throw InputError("violation tolerance must be nonnegative");
  if (!(inverse_tol > 0.0)) throw InputError("inverse tolerance must be positive");
  if (probe_points < 3) throw InputError("probe grid needs at least 3 points");
}

const HypothesisFlag* IneqReport::flag(std::string_view name) const {
  auto it = std::find_if(hypothesis_flags.begin(), hypothesis_flags.end(),
                         [name](const HypothesisFlag& f) { return f.name == name; });
  return it == hypothesis_flags.end() ? nullptr : &*it;
}

// ---------------------------------------------------------------------------

NumericInverse::NumericInverse(Expr bij, double tol) : bij_(std::move(bij)), tol_(tol) {
  if (!(tol > 0.0)) throw InputError("inverse tolerance must be positive");
  auto strictly_monotone = [this](double from, double to, std::size_t n, bool allow_gaps, bool& inc) {
    std::vector<double> vals;
    for (std::size_t i = 0; i < n; ++i) {
      const double u = from + (to - from) * static_cast<double>(i) / static_cast<double>(n - 1);
      EvalResult r = evaluate(bij_, u);
      if (!r || !std::isfinite(r.value())) {
        if (allow_gaps && i == 0) continue;
        return false;
      }
      vals.push_back(r.value());
    }
    if (vals.size() < 2) return false;
    inc = vals.back() > vals.front();
    for (std::size_t i = 1; i < vals.size(); ++i) {
      if (inc ? !(vals[i] > vals[i - 1]) : !(vals[i] < vals[i - 1])) return false;
    }
    return true;
  };
  if (strictly_monotone(-64.0, 64.0, 2049, false, increasing_)) return;
  if (strictly_monotone(0.0, 64.0, 1025, true, increasing_)) {
    half_line_ = true;
    return;
  }
  throw InvalidBijection("bijection " + print_canonical(bij_) + " is not strictly monotone on the probed range");
}

EvalResult NumericInverse::operator()(double y) const {
  if (std::isnan(y)) return DomainFault{bij_, y, "inverse of NaN"};
  const double sign = increasing_ ? 1.0 : -1.0;
  // G is increasing in u and vanishes at the preimage of y.
  auto G = [&](double u, bool& ok) {
    EvalResult r = evaluate(bij_, u);
    ok = r.ok();
    return ok ? sign * (r.value() - y) : 0.0;
  };
  bool ok = true;
  double lo = half_line_ ? 0.5 : -1.0;
  double hi = 1.0;
  while (G(hi, ok) < 0.0) {
    if (!ok || hi > 0x1p80) return DomainFault{bij_, y, "no preimage above"};
    hi *= 2.0;
  }
  if (!ok) return DomainFault{bij_, y, "bijection undefined while bracketing"};
  while (G(lo, ok) > 0.0 || !ok) {
    if (half_line_) {
      if (lo < 1e-300) {
        if (G(0.0, ok) <= 0.0 && ok) {
          lo = 0.0;
          break;
        }
        return DomainFault{bij_, y, "no preimage below"};
      }
      lo *= 0.5;
    } else {
      if (!ok || lo < -0x1p80) return DomainFault{bij_, y, "no preimage below"};
      lo *= 2.0;
    }
  }
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < 400; ++it) {
    mid = 0.5 * (lo + hi);
    if (hi - lo <= tol_ * std::max(1.0, std::abs(mid)) || mid <= lo || mid >= hi) break;
    const double g = G(mid, ok);
    if (!ok) return DomainFault{bij_, y, "bijection undefined while bisecting"};
    if (g < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return mid;
}

// ---------------------------------------------------------------------------

IneqReport pk_case1(const Expr& f, Interval domain, const CheckConfig& cfg) {
  cfg.validate();
  check_outer_domain(domain);
  const ScalarFn fn = as_function(f);
  QuadOptions q;
  q.tol = cfg.quad_tol;
  auto running = std::make_shared<RunningIntegral>(ln_of(fn), domain.hi, cfg.sugeno.level.scan_points, q);
  const ScalarFn g = running_average_of(share(running), exp(Expr::var()));

  IneqReport r;
  r.id = IneqId::pk1;
  r.lhs_integral = sugeno_integral(g, domain, MeasureSpec::uniform(), cfg.sugeno);
  r.rhs_integral = sugeno_integral(fn, domain, MeasureSpec::uniform(), cfg.sugeno);
  r.lhs = r.lhs_integral.value;
  r.rhs = r.rhs_integral.value;

  const auto values = probe_values(fn, domain, cfg.probe_points);
  r.hypothesis_flags = {{"f_nondecreasing", nondecreasing(values)}, {"f_nonnegative", all_at_least(values, 0.0)}};
  r.notes =
      "inner integral: Riemann, running average of ln f; checked without a factor e on the right "
      "(the factor-e form is weaker and follows from this one)";
  finish(r, cfg);
  return r;
}

IneqReport pk_case2(const Expr& f, Interval domain, const CheckConfig& cfg) {
  cfg.validate();
  check_outer_domain(domain);
  const ScalarFn fn = as_function(f);
  auto running = std::make_shared<RunningSugeno>(ln_of(fn), domain.hi, cfg.sugeno);
  const ScalarFn g = running_average_of(share(running), exp(Expr::var()));

  IneqReport r;
  r.id = IneqId::pk2;
  r.lhs_integral = sugeno_integral(g, domain, MeasureSpec::uniform(), cfg.sugeno);
  r.rhs_integral = sugeno_integral(fn, domain, MeasureSpec::uniform(), cfg.sugeno);
  r.lhs = r.lhs_integral.value;
  r.rhs = kE * r.rhs_integral.value;

  const auto values = probe_values(fn, Interval{0.0, domain.hi}, cfg.probe_points);
  const bool inner_ok = all_at_least(values, 1.0);
  r.hypothesis_flags = {{"f_nonnegative", all_at_least(values, 0.0)}, {"inner_integrand_nonnegative", inner_ok}};
  r.notes = "inner integral: Sugeno of ln f over [0, x]; q = e * SINT f = " + format(r.rhs);
  if (!inner_ok) {
    r.notes +=
        "; ln f < 0 somewhere, so the inner Sugeno integral is applied outside its nonnegative domain "
        "(negative values lie below every level)";
  }
  finish(r, cfg);
  return r;
}

IneqReport generalized_pk(const Expr& f, const Expr& bij, InnerIntegral inner, Interval domain,
                          const CheckConfig& cfg) {
  cfg.validate();
  check_outer_domain(domain);
  const ScalarFn fn = as_function(f);
  auto inverse = std::make_shared<NumericInverse>(bij, cfg.inverse_tol);
  ScalarFn inner_integrand = [fn, inverse](double t) -> EvalResult {
    EvalResult v = fn(t);
    if (!v) return v;
    return (*inverse)(v.value());
  };

  std::function<double(double)> running;
  if (inner == InnerIntegral::riemann) {
    QuadOptions q;
    q.tol = cfg.quad_tol;
    running = share(std::make_shared<RunningIntegral>(inner_integrand, domain.hi, cfg.sugeno.level.scan_points, q));
  } else {
    running = share(std::make_shared<RunningSugeno>(inner_integrand, domain.hi, cfg.sugeno));
  }
  const ScalarFn g = running_average_of(std::move(running), bij);

  IneqReport r;
  r.id = inner == InnerIntegral::riemann ? IneqId::gpk1 : IneqId::gpk2;
  r.lhs_integral = sugeno_integral(g, domain, MeasureSpec::uniform(), cfg.sugeno);
  r.rhs_integral = sugeno_integral(fn, domain, MeasureSpec::uniform(), cfg.sugeno);
  r.lhs = r.lhs_integral.value;
  r.rhs = kE * r.rhs_integral.value;

  const auto f_values = probe_values(fn, Interval{0.0, domain.hi}, cfg.probe_points);
  const auto u_values = probe_values(inner_integrand, Interval{0.0, domain.hi}, cfg.probe_points);
  r.hypothesis_flags = {{"bijection_strictly_monotone", true}, {"f_nonnegative", all_at_least(f_values, 0.0)}};
  if (inner == InnerIntegral::riemann) {
    r.hypothesis_flags.push_back({"f_nondecreasing", nondecreasing(f_values)});
  } else {
    r.hypothesis_flags.push_back({"inner_integrand_nonnegative", all_at_least(u_values, 0.0)});
  }
  r.notes = std::string("inner integral: ") + std::string(to_string(inner)) + " of the numeric inverse of " +
            print_canonical(bij) + " applied to f, integrated in t (dt)";
  if (inverse->half_line()) r.notes += "; inverse restricted to [0, inf)";
  finish(r, cfg);
  return r;
}

IneqReport hardy_knopp(const Expr& f, const Expr& phi, Interval domain, const CheckConfig& cfg) {
  cfg.validate();
  check_outer_domain(domain);
  if (!(domain.lo > 0.0)) throw InputError("hardy_knopp needs a > 0: the dx/x weight is infinite at 0");
  const ScalarFn fn = as_function(f);
  auto running = std::make_shared<RunningSugeno>(fn, domain.hi, cfg.sugeno);
  const ScalarFn g = running_average_of(share(running), phi);

  IneqReport r;
  r.id = IneqId::hk;
  r.lhs_integral = sugeno_integral(g, domain, MeasureSpec::reciprocal(), cfg.sugeno);
  r.rhs_integral = sugeno_integral(compose(phi, fn), domain, MeasureSpec::reciprocal(), cfg.sugeno);
  r.lhs = r.lhs_integral.value;
  r.rhs = kE * r.rhs_integral.value;

  // φ's hypotheses are probed on the range of f over [0, b].
  const auto f_values = probe_values(fn, Interval{0.0, domain.hi}, cfg.probe_points);
  bool positive = true;
  bool convex = true;
  if (!f_values.empty()) {
    const auto [mn, mx] = std::minmax_element(f_values.begin(), f_values.end());
    const double lo = *mn;
    const double hi = std::min(*mx, cfg.sugeno.alpha_cap);
    const ScalarFn ph = as_function(phi);
    const std::size_t n = 257;
    std::vector<double> u(n), v(n);
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
      EvalResult pr = ph(u[i]);
      if (!pr) {
        positive = convex = false;
        break;
      }
      v[i] = pr.value();
      if (!(v[i] > 0.0)) positive = false;
    }
    if (convex && hi > lo) {
      for (std::size_t i = 1; i + 1 < n; ++i) {
        const double chord = 0.5 * (v[i - 1] + v[i + 1]);
        if (v[i] > chord + 1e-12 * std::max(1.0, std::abs(chord))) convex = false;
      }
      const double mid = 0.5 * (v.front() + v.back());
      if (v[n / 2] > mid + 1e-12 * std::max(1.0, std::abs(mid))) convex = false;
    }
  }
  r.hypothesis_flags = {{"a_positive", true}, {"phi_positive", positive}, {"phi_convex", convex}};
  r.notes = "outer measure dx/x on [" + format(domain.lo) + ", " + format(domain.hi) +
            "]; inner integral: Sugeno of f over [0, x] with Lebesgue measure";
  finish(r, cfg);
  return r;
}

IneqReport jensen_probe(const Expr& g, double x, const CheckConfig& cfg) {
  cfg.validate();
  const Interval domain{0.0, x};
  check_outer_domain(domain);
  const ScalarFn fn = as_function(g);

  IneqReport r;
  r.id = IneqId::jensen_probe;
  r.lhs_integral = sugeno_integral(fn, domain, MeasureSpec::uniform(), cfg.sugeno);
  r.rhs_integral = sugeno_integral(compose(exp(Expr::var()), fn), domain, MeasureSpec::uniform(), cfg.sugeno);
  r.lhs = std::exp(r.lhs_integral.value);
  r.rhs = r.rhs_integral.value;

  const auto values = probe_values(fn, domain, cfg.probe_points);
  r.hypothesis_flags = {{"g_nonnegative", all_at_least(values, 0.0)}};
  r.notes = "exploratory: exp(SINT_0^x g) vs SINT_0^x exp(g); a violation is recorded as data";
  finish(r, cfg);
  return r;
}

}  // namespace sint
