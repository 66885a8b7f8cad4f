#include "sint/quad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>

#include "sint/errors.hpp"

namespace sint {

namespace {

// Gauss–Kronrod 7/15 abscissae on [-1, 1] (nonnegative half) and weights.
constexpr std::array<double, 8> kNodes{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrod{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for kNodes[1], kNodes[3], kNodes[5], kNodes[7].
constexpr std::array<double, 4> kGauss{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double error = 0.0;
  double abs_value = 0.0;
};

struct ByError {
  bool operator()(const Segment& l, const Segment& r) const { return l.error < r.error; }
};

double sample(const ScalarFn& f, double x) {
  EvalResult r = f(x);
  if (!r) throw EvaluationError(std::string("integrand out of domain: ") + std::string(r.fault().reason), x);
  return r.value();
}

Segment gauss_kronrod(const ScalarFn& f, double a, double b, std::size_t& evals) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = sample(f, center);
  double kronrod = fc * kKronrod[7];
  double gauss = fc * kGauss[3];
  double abs_sum = std::abs(fc) * kKronrod[7];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kNodes[j];
    const double f1 = sample(f, center - dx);
    const double f2 = sample(f, center + dx);
    kronrod += kKronrod[j] * (f1 + f2);
    abs_sum += kKronrod[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) gauss += kGauss[j / 2] * (f1 + f2);
  }
  evals += 15;
  Segment s;
  s.a = a;
  s.b = b;
  s.value = kronrod * half;
  s.error = std::abs((kronrod - gauss) * half);
  s.abs_value = abs_sum * std::abs(half);
  return s;
}

}  // namespace

QuadResult integrate(const ScalarFn& f, double a, double b, const QuadOptions& opts) {
  if (!(opts.tol > 0.0)) throw InputError("quadrature tolerance must be positive");
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    throw InputError("integration needs finite a < b");
  }
  QuadResult out;
  std::priority_queue<Segment, std::vector<Segment>, ByError> heap;
  heap.push(gauss_kronrod(f, a, b, out.evaluations));

  auto totals = [&heap] {
    // The priority_queue hides its container; copy-walk is fine at this size.
    auto copy = heap;
    double v = 0.0, e = 0.0, av = 0.0;
    while (!copy.empty()) {
      v += copy.top().value;
      e += copy.top().error;
      av += copy.top().abs_value;
      copy.pop();
    }
    return std::array<double, 3>{v, e, av};
  };

  double value = heap.top().value;
  double error = heap.top().error;
  double abs_value = heap.top().abs_value;
  constexpr double kRoundoff = 50.0 * std::numeric_limits<double>::epsilon();
  for (;;) {
    if (!std::isfinite(value) || !std::isfinite(error)) {
      throw DivergenceSuspected("integral is not finite", value);
    }
    const double target = std::max(opts.tol, kRoundoff * abs_value);
    if (error <= target) break;
    if (heap.size() >= opts.max_subdivisions) {
      throw DivergenceSuspected("quadrature did not converge within the subdivision budget", value);
    }
    Segment worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b)) {
      throw DivergenceSuspected("quadrature subdivision reached machine resolution", value);
    }
    heap.pop();
    Segment left = gauss_kronrod(f, worst.a, mid, out.evaluations);
    Segment right = gauss_kronrod(f, mid, worst.b, out.evaluations);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    abs_value += left.abs_value + right.abs_value - worst.abs_value;
    heap.push(left);
    heap.push(right);
    // Incremental sums drift; resynchronise when close to stopping.
    if (error <= 2.0 * target || heap.size() % 64 == 0) {
      const auto t = totals();
      value = t[0];
      error = t[1];
      abs_value = t[2];
    }
  }
  out.value = value;
  out.abs_error_estimate = error;
  return out;
}

QuadResult integrate(const Expr& f, double a, double b, double tol) {
  QuadOptions opts;
  opts.tol = tol;
  return integrate(as_function(f), a, b, opts);
}

QuadResult cumulative(const ScalarFn& g, double x, const QuadOptions& opts) {
  if (!(x > 0.0) || !std::isfinite(x)) throw InputError("cumulative integral needs finite x > 0");
  QuadOptions panel = opts;
  panel.tol = opts.tol / 256.0;

  QuadResult out;
  double previous = 0.0;
  int calm = 0;
  double hi = x;
  for (std::size_t k = 0; k < opts.max_panels; ++k) {
    const double lo = 0.5 * hi;
    if (!(lo > 0.0)) break;
    QuadResult p = integrate(g, lo, hi, panel);
    out.value += p.value;
    out.abs_error_estimate += p.abs_error_estimate;
    out.evaluations += p.evaluations;
    if (!std::isfinite(out.value)) throw DivergenceSuspected("running integral is not finite", out.value);
    if (k >= 2) {
      const double a = std::abs(p.value);
      const double ratio = previous == 0.0 ? (a == 0.0 ? 0.0 : 1.0) : a / std::abs(previous);
      const double tail = ratio < 1.0 ? a * ratio / (1.0 - ratio) : std::numeric_limits<double>::infinity();
      if (ratio <= 0.9 && tail <= opts.tol / 8.0) {
        if (++calm >= 2) {
          out.abs_error_estimate += tail;
          return out;
        }
      } else {
        calm = 0;
      }
    }
    previous = p.value;
    hi = lo;
  }
  throw DivergenceSuspected("refinement toward 0 did not converge", out.value);
}

QuadResult ln_cumulative(const Expr& f, double x, double tol) {
  QuadOptions opts;
  opts.tol = tol;
  return cumulative(ln_of(as_function(f)), x, opts);
}

RunningIntegral::RunningIntegral(ScalarFn g, double hi, std::size_t grid_points, const QuadOptions& opts)
    : g_(std::move(g)), hi_(hi), points_(grid_points), opts_(opts), panel_opts_(opts) {
  if (!(hi > 0.0) || !std::isfinite(hi)) throw InputError("running integral needs finite hi > 0");
  if (grid_points < 2) throw InputError("running integral needs at least 2 grid points");
  step_ = hi / static_cast<double>(grid_points - 1);
  panel_opts_.tol = opts.tol / static_cast<double>(grid_points);
  prefix_.push_back(0.0);
}

double RunningIntegral::prefix(std::size_t k) {
  while (prefix_.size() <= k) {
    const std::size_t j = prefix_.size();
    const double b = static_cast<double>(j) * step_;
    QuadResult piece = j == 1 ? cumulative(g_, b, opts_)
                              : integrate(g_, static_cast<double>(j - 1) * step_, b, panel_opts_);
    evaluations_ += piece.evaluations;
    prefix_.push_back(prefix_.back() + piece.value);
  }
  return prefix_[k];
}

double RunningIntegral::operator()(double x) {
  if (!(x >= 0.0) || x > hi_ * (1.0 + 1e-12)) throw InputError("running integral queried outside [0, hi]");
  if (x == 0.0) return 0.0;
  if (auto it = memo_.find(x); it != memo_.end()) return it->second;
  const auto k = std::min(points_ - 1, static_cast<std::size_t>(std::floor(x / step_)));
  const double xk = static_cast<double>(k) * step_;
  double v;
  if (k == 0) {
    QuadResult r = cumulative(g_, x, opts_);
    evaluations_ += r.evaluations;
    v = r.value;
  } else {
    v = prefix(k);
    if (x > xk) {
      QuadResult r = integrate(g_, xk, x, panel_opts_);
      evaluations_ += r.evaluations;
      v += r.value;
    } else if (x < xk) {
      QuadResult r = integrate(g_, x, xk, panel_opts_);
      evaluations_ += r.evaluations;
      v -= r.value;
    }
  }
  memo_.emplace(x, v);
  return v;
}

}  // namespace sint
