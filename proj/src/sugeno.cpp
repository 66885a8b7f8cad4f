#include "sint/sugeno.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sint/errors.hpp"

namespace sint {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Grid maxima can miss a peak between samples by O(step²·f''); pad slightly.
double padded(double sup) { return sup + 1e-6 * std::max(1.0, std::abs(sup)); }

}  // namespace

void SugenoOptions::validate() const {
  if (!(tol > 0.0)) throw InputError("Sugeno tolerance must be positive");
  if (!(alpha_cap > 0.0)) throw InputError("alpha cap must be positive");
  if (!(measure_tol > 0.0)) throw InputError("measure tolerance must be positive");
  level.validate();
}

SugenoValue solve_fixed_point(const std::function<double(double)>& F, double lo, double hi, double tol,
                              double hi_limit) {
  SugenoValue out;
  auto eval = [&](double a) {
    ++out.evaluations;
    return F(a);
  };
  lo = std::max(0.0, lo);
  hi = std::min(hi, hi_limit);
  if (hi < lo) lo = hi;

  double f_lo = eval(lo);
  if (f_lo < lo) {
    // Bracket was too optimistic; 0 always satisfies F(0) ≥ 0.
    hi = lo;
    lo = 0.0;
    f_lo = eval(lo);
  }
  double f_hi = eval(hi);
  if (f_hi >= hi && hi < hi_limit) {
    lo = hi;
    f_lo = f_hi;
    hi = hi_limit;
    f_hi = eval(hi);
  }
  if (f_hi >= hi) {
    out.value = out.alpha_star = hi;
    out.F_at_lower = out.F_at_upper = f_hi;
    out.bracket_width = 0.0;
    out.alpha_max = hi_limit;
    return out;
  }

  const double span = std::max(hi - lo, tol);
  const auto max_iter = static_cast<int>(std::ceil(std::log2(span / tol))) + 8;
  for (int it = 0; it < max_iter && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = eval(mid);
    if (f_mid >= mid) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
  }
  out.alpha_star = lo;
  out.value = 0.5 * (lo + hi);
  out.F_at_lower = f_lo;
  out.F_at_upper = f_hi;
  out.bracket_width = hi - lo;
  out.alpha_max = hi_limit;
  return out;
}

Distribution::Distribution(ScalarFn f, Interval domain, MeasureSpec m, const SugenoOptions& opts)
    : sampled_(std::move(f), domain, opts.level), measure_(std::move(m)), opts_(opts) {}

double Distribution::operator()(double alpha) {
  if (measure_.is_uniform()) return sampled_.level_length(alpha, sampled_.domain().hi);
  return measure(measure_, sampled_.level_set(alpha), opts_.measure_tol);
}

double Distribution::alpha_max() {
  const double mu = measure(measure_, sampled_.domain(), opts_.measure_tol);
  const double sup = sampled_.sampled_max();
  if (!(sup > 0.0) || mu == 0.0) return 0.0;
  const double from_measure = mu > opts_.alpha_cap ? kInf : mu;
  const double from_sup = sup > opts_.alpha_cap ? kInf : padded(sup);
  if (std::isinf(from_measure) && std::isinf(from_sup)) {
    throw CapReached("both the domain measure and the integrand bound exceed the alpha cap " +
                     std::to_string(opts_.alpha_cap));
  }
  return std::min(from_measure, from_sup);
}

double distribution(const Expr& f, Interval domain, const MeasureSpec& m, double alpha,
                    const LevelSetOptions& opts, double measure_tol) {
  if (!(alpha >= 0.0)) throw InputError("level must be nonnegative");
  SugenoOptions so;
  so.level = opts;
  so.measure_tol = measure_tol;
  Distribution d(as_function(f), domain, m, so);
  return d(alpha);
}

SugenoValue sugeno_integral(const ScalarFn& f, Interval domain, const MeasureSpec& m,
                            const SugenoOptions& opts) {
  opts.validate();
  Distribution d(f, domain, m, opts);
  const double amax = d.alpha_max();
  SugenoValue v = solve_fixed_point(std::ref(d), 0.0, amax, opts.tol, amax);
  v.evaluations = std::max<std::size_t>(1, d.function_evaluations());
  return v;
}

SugenoValue sugeno_integral(const Expr& f, Interval domain, const MeasureSpec& m,
                            const SugenoOptions& opts) {
  return sugeno_integral(as_function(f), domain, m, opts);
}

double sugeno_oracle(const Expr& f, Interval domain, const MeasureSpec& m, std::size_t grid_n,
                     const SugenoOptions& opts) {
  if (grid_n < 2) throw InputError("oracle grid needs at least 2 points");
  opts.validate();
  Distribution d(as_function(f), domain, m, opts);
  const double amax = d.alpha_max();
  double best = 0.0;
  for (std::size_t j = 1; j <= grid_n; ++j) {
    const double alpha = amax * static_cast<double>(j) / static_cast<double>(grid_n);
    const double fa = d(alpha);
    best = std::max(best, std::min(alpha, fa));
    // F is nonincreasing, so no later α can beat best once F(α) ≤ best.
    if (fa <= best) break;
  }
  return best;
}

RunningSugeno::RunningSugeno(ScalarFn g, double hi, const SugenoOptions& opts)
    : sampled_(std::move(g), Interval{0.0, hi}, opts.level), opts_(opts) {
  opts_.validate();
}

double RunningSugeno::operator()(double x) {
  const double hi_dom = sampled_.domain().hi;
  if (!(x >= 0.0) || x > hi_dom * (1.0 + 1e-12)) throw InputError("running Sugeno integral queried outside [0, hi]");
  x = std::min(x, hi_dom);
  if (x == 0.0) return 0.0;
  if (auto it = memo_.find(x); it != memo_.end()) return it->second;

  const double sup = sampled_.sampled_max(x);
  if (!(sup > 0.0)) {
    memo_.emplace(x, 0.0);
    return 0.0;
  }
  const double limit = std::isfinite(sup) ? std::min(x, padded(sup)) : x;
  const double slack = opts_.tol;
  double lo = 0.0;
  double hi = limit;
  auto above = memo_.lower_bound(x);
  if (above != memo_.end()) {
    hi = std::min(hi, above->second + slack);
    lo = std::max(lo, above->second - (above->first - x) - slack);
  }
  if (above != memo_.begin()) {
    auto below = std::prev(above);
    lo = std::max(lo, below->second - slack);
    hi = std::min(hi, below->second + (x - below->first) + slack);
  }
  lo = std::min(lo, hi);

  auto F = [this, x](double alpha) { return sampled_.level_length(alpha, x); };
  const SugenoValue v = solve_fixed_point(F, lo, hi, opts_.tol, limit);
  memo_.emplace(x, v.value);
  return v.value;
}

}  // namespace sint
