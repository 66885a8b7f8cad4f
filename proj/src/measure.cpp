#include "sint/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sint/errors.hpp"
#include "sint/quad.hpp"

namespace sint {

void Interval::validate() const {
  if (std::isnan(lo) || std::isnan(hi)) throw InputError("interval endpoint is NaN");
  if (!std::isfinite(lo)) throw InputError("interval lower endpoint must be finite");
  if (lo < 0.0) throw InputError("interval must lie in [0, inf)");
  if (hi < lo) throw InputError("interval has hi < lo");
}

double IntervalUnion::total_length() const noexcept {
  double s = 0.0;
  for (const Interval& p : pieces_) s += p.length();
  return s;
}

IntervalUnion normalize(std::vector<Interval> raw) {
  for (const Interval& i : raw) i.validate();
  std::sort(raw.begin(), raw.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi); });
  IntervalUnion out;
  for (const Interval& i : raw) {
    if (!out.pieces_.empty() && i.lo <= out.pieces_.back().hi) {
      out.pieces_.back().hi = std::max(out.pieces_.back().hi, i.hi);
    } else {
      out.pieces_.push_back(i);
    }
  }
  return out;
}

IntervalUnion intersect(const IntervalUnion& u, const Interval& d) {
  std::vector<Interval> raw;
  raw.reserve(u.size());
  for (const Interval& p : u.pieces()) {
    const double lo = std::max(p.lo, d.lo);
    const double hi = std::min(p.hi, d.hi);
    if (lo <= hi) raw.push_back({lo, hi});
  }
  return normalize(std::move(raw));
}

bool is_subset(const IntervalUnion& u, const IntervalUnion& v, double slack) {
  for (const Interval& p : u.pieces()) {
    const bool covered = std::any_of(v.pieces().begin(), v.pieces().end(), [&](const Interval& q) {
      return q.lo - slack <= p.lo && p.hi <= q.hi + slack;
    });
    if (!covered) return false;
  }
  return true;
}

MeasureSpec MeasureSpec::parse(std::string_view text) {
  if (text == "uniform") return uniform();
  if (text == "reciprocal") return reciprocal();
  constexpr std::string_view prefix = "density:";
  if (text.substr(0, prefix.size()) == prefix) return density(sint::parse(text.substr(prefix.size())));
  throw InputError("unknown measure '" + std::string(text) + "' (expected uniform, reciprocal or density:<expr>)");
}

std::string MeasureSpec::to_string() const {
  struct Visitor {
    std::string operator()(const UniformWeight&) const { return "uniform"; }
    std::string operator()(const ReciprocalWeight&) const { return "reciprocal"; }
    std::string operator()(const DensityWeight& d) const { return "density:" + print_canonical(d.density); }
  };
  return std::visit(Visitor{}, weight_);
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double reciprocal_piece(const Interval& p) {
  if (p.hi == p.lo) return 0.0;
  if (p.lo == 0.0 || std::isinf(p.hi)) return kInf;
  return std::log(p.hi / p.lo);
}

double density_piece(const Expr& w, const Interval& p, double tol) {
  if (p.hi == p.lo) return 0.0;
  if (std::isinf(p.hi)) throw InputError("density measures need finite intervals");
  ScalarFn checked = [&w](double t) -> EvalResult {
    EvalResult r = evaluate(w, t);
    if (r && r.value() < 0.0) {
      throw InvalidMeasure("density " + print_canonical(w) + " is negative at t = " + std::to_string(t));
    }
    return r;
  };
  // Scale the absolute target by a midpoint probe to get a relative tolerance.
  const EvalResult mid = evaluate(w, 0.5 * (p.lo + p.hi));
  const double scale = mid ? std::max(1.0, std::abs(mid.value()) * p.length()) : 1.0;
  QuadOptions opts;
  opts.tol = tol * scale;
  return integrate(checked, p.lo, p.hi, opts).value;
}

}  // namespace

double measure(const MeasureSpec& m, const IntervalUnion& u, double tol) {
  double total = 0.0;
  for (const Interval& p : u.pieces()) {
    if (std::holds_alternative<UniformWeight>(m.weight())) {
      total += p.length();
    } else if (std::holds_alternative<ReciprocalWeight>(m.weight())) {
      total += reciprocal_piece(p);
    } else {
      total += density_piece(std::get<DensityWeight>(m.weight()).density, p, tol);
    }
  }
  return total;
}

double measure(const MeasureSpec& m, const Interval& d, double tol) {
  d.validate();
  return measure(m, normalize({d}), tol);
}

}  // namespace sint
