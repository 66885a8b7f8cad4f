#include "sint/levelset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sint/errors.hpp"

namespace sint {

namespace {
constexpr std::size_t kBlock = 64;
}

std::string_view to_string(Shape s) {
  switch (s) {
    case Shape::nondecreasing:
      return "nondecreasing";
    case Shape::nonincreasing:
      return "nonincreasing";
    default:
      return "unknown";
  }
}

void LevelSetOptions::validate() const {
  if (scan_points < 2) throw InputError("scan_points must be at least 2");
  if (!(root_tol > 0.0)) throw InputError("root_tol must be positive");
}

SampledFunction::SampledFunction(ScalarFn f, Interval domain, LevelSetOptions opts)
    : f_(std::move(f)), domain_(domain), opts_(opts) {
  opts_.validate();
  domain_.validate();
  if (!std::isfinite(domain_.hi)) throw InputError("level sets need a finite domain");
  step_ = domain_.length() / static_cast<double>(opts_.scan_points - 1);
}

double SampledFunction::probe(double x, int side) {
  ++evaluations_;
  EvalResult r = f_(x);
  if (r) return r.value();
  // Single points carry no measure: look just beside x before giving up.
  const double base = step_ > 0.0 ? step_ : std::max(1.0, std::abs(x)) * 1e-9;
  for (double scale : {1e-6, 1e-3}) {
    const double d = base * scale;
    for (int s : {+1, -1}) {
      if (side != 0 && s != side) continue;
      const double y = x + s * d;
      if (y < domain_.lo || y > domain_.hi) continue;
      ++evaluations_;
      EvalResult q = f_(y);
      if (q) return q.value();
    }
  }
  throw EvaluationError("function out of domain on a set of positive measure (" +
                            std::string(r.fault().reason) + ")",
                        x);
}

void SampledFunction::ensure_grid() {
  if (!grid_.empty()) return;
  const std::size_t n = opts_.scan_points;
  grid_.resize(n);
  prefix_max_.resize(n);
  double running = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double x = i + 1 == n ? domain_.hi : domain_.lo + static_cast<double>(i) * step_;
    const int side = i == 0 ? +1 : (i + 1 == n ? -1 : 0);
    grid_[i] = probe(x, side);
    running = std::max(running, grid_[i]);
    prefix_max_[i] = running;
  }
  const std::size_t blocks = (n + kBlock - 1) / kBlock;
  block_min_.assign(blocks, std::numeric_limits<double>::infinity());
  block_max_.assign(blocks, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i) {
    block_min_[i / kBlock] = std::min(block_min_[i / kBlock], grid_[i]);
    block_max_[i / kBlock] = std::max(block_max_[i / kBlock], grid_[i]);
  }
}

double SampledFunction::excess(double x, double alpha) {
  ++evaluations_;
  EvalResult r = f_(x);
  if (!r) return -std::numeric_limits<double>::infinity();
  return r.value() - alpha;
}

// Illinois regula falsi on f − α, keeping a bracket [a below, b above].
// Falls back to bisection on non-finite values or slow shrinking, and steps
// at least root_tol/2 inside so a converged estimate closes the bracket.
double SampledFunction::boundary(double below, double above_x, double alpha) {
  const double tol = opts_.root_tol;
  double a = below;
  double b = above_x;
  if (std::abs(b - a) <= tol) return b;
  double fa = excess(a, alpha);
  double fb = excess(b, alpha);
  if (!(fa < 0.0)) fa = -std::numeric_limits<double>::infinity();
  int kept = 0;  // +1: a kept last step, -1: b kept
  double last_width = std::abs(b - a);
  for (int it = 0; it < 256 && std::abs(b - a) > tol; ++it) {
    const double width = std::abs(b - a);
    double m = 0.5 * (a + b);
    const bool finite = std::isfinite(fa) && std::isfinite(fb) && fb >= 0.0 && fb - fa > 0.0;
    if (finite && (it % 4 != 3 || width < 0.5 * last_width)) {
      m = a + (b - a) * (-fa / (fb - fa));
      const double guard = 0.5 * tol;
      const double lo = std::min(a, b) + guard;
      const double hi = std::max(a, b) - guard;
      m = lo < hi ? std::clamp(m, lo, hi) : 0.5 * (a + b);
    }
    if (it % 4 == 3) last_width = width;
    if (m == a || m == b) break;
    const double fm = excess(m, alpha);
    if (fm >= 0.0) {
      b = m;
      fb = fm;
      if (kept == +1) fa *= 0.5;
      kept = +1;
    } else {
      a = m;
      fa = fm;
      if (kept == -1) fb *= 0.5;
      kept = -1;
    }
  }
  return b;
}

template <class Sink>
void SampledFunction::scan(double alpha, double upto, Sink&& sink) {
  ensure_grid();
  const double lo = domain_.lo;
  const std::size_t n = grid_.size();
  std::size_t last = n - 1;
  if (upto < domain_.hi) {
    last = step_ > 0.0 ? static_cast<std::size_t>(std::floor((upto - lo) / step_)) : 0;
    last = std::min(last, n - 1);
    while (last > 0 && lo + static_cast<double>(last) * step_ > upto) --last;
  }
  auto grid_x = [&](std::size_t i) { return i + 1 == n ? domain_.hi : lo + static_cast<double>(i) * step_; };

  // Optional tail point at `upto` when it falls strictly between grid points.
  bool tail = grid_x(last) < upto;
  double tail_value = 0.0;
  if (tail) {
    if (!last_end_ || last_end_->x != upto) last_end_ = Point{upto, probe(upto, -1)};
    tail_value = last_end_->value;
  }

  bool in_run = false;
  double run_lo = lo;
  double prev_x = lo;
  auto visit = [&](std::size_t i, double x, double v) {
    const bool up = v >= alpha;
    if (up && !in_run) {
      run_lo = i == 0 ? lo : boundary(prev_x, x, alpha);
      in_run = true;
    } else if (!up && in_run) {
      sink(run_lo, boundary(x, prev_x, alpha));
      in_run = false;
    }
    prev_x = x;
  };
  for (std::size_t i = 0; i <= last;) {
    // A whole block on the current side of α cannot open or close a run.
    if (i % kBlock == 0 && i + kBlock - 1 <= last) {
      const std::size_t b = i / kBlock;
      if ((in_run && block_min_[b] >= alpha) || (!in_run && i > 0 && block_max_[b] < alpha)) {
        i += kBlock;
        prev_x = grid_x(i - 1);
        continue;
      }
    }
    visit(i, grid_x(i), grid_[i]);
    ++i;
  }
  if (tail) visit(last + 1, upto, tail_value);
  if (in_run) sink(run_lo, upto);
}

template <class Sink>
void SampledFunction::monotone(double alpha, double upto, Sink&& sink) {
  const double lo = domain_.lo;
  if (!last_end_ || last_end_->x != upto) last_end_ = Point{upto, probe(upto, -1)};
  if (grid_.empty()) grid_.push_back(probe(lo, +1));
  const double v_lo = grid_.front();
  const double v_hi = last_end_->value;
  if (opts_.declared_shape == Shape::nondecreasing) {
    if (v_hi < alpha) return;
    sink(v_lo >= alpha ? lo : boundary(lo, upto, alpha), upto);
  } else {
    if (v_lo < alpha) return;
    sink(lo, v_hi >= alpha ? upto : boundary(upto, lo, alpha));
  }
}

IntervalUnion SampledFunction::level_set(double alpha) { return level_set(alpha, domain_.hi); }

IntervalUnion SampledFunction::level_set(double alpha, double upto) {
  upto = std::clamp(upto, domain_.lo, domain_.hi);
  std::vector<Interval> pieces;
  auto sink = [&pieces](double a, double b) { pieces.push_back({a, b}); };
  if (opts_.declared_shape == Shape::unknown) {
    scan(alpha, upto, sink);
  } else {
    monotone(alpha, upto, sink);
  }
  return normalize(std::move(pieces));
}

double SampledFunction::level_length(double alpha, double upto) {
  upto = std::clamp(upto, domain_.lo, domain_.hi);
  double total = 0.0;
  auto sink = [&total](double a, double b) { total += b - a; };
  if (opts_.declared_shape == Shape::unknown) {
    scan(alpha, upto, sink);
  } else {
    monotone(alpha, upto, sink);
  }
  return total;
}

double SampledFunction::sampled_max() { return sampled_max(domain_.hi); }

double SampledFunction::sampled_max(double upto) {
  upto = std::clamp(upto, domain_.lo, domain_.hi);
  if (opts_.declared_shape == Shape::nondecreasing) return probe(upto, -1);
  if (opts_.declared_shape == Shape::nonincreasing) return probe(domain_.lo, +1);
  ensure_grid();
  std::size_t last = grid_.size() - 1;
  if (upto < domain_.hi && step_ > 0.0) {
    last = std::min(last, static_cast<std::size_t>(std::floor((upto - domain_.lo) / step_)));
  }
  double m = prefix_max_[last];
  if (upto < domain_.hi) {
    if (!last_end_ || last_end_->x != upto) last_end_ = Point{upto, probe(upto, -1)};
    m = std::max(m, last_end_->value);
  }
  return m;
}

IntervalUnion level_set(const Expr& f, Interval domain, double alpha, const LevelSetOptions& opts) {
  if (!(alpha >= 0.0)) throw InputError("level must be nonnegative");
  SampledFunction s(as_function(f), domain, opts);
  return s.level_set(alpha);
}

}  // namespace sint
