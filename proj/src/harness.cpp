#include "sint/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "sint/errors.hpp"

namespace sint {

namespace {

// mt19937_64 is fully specified by the standard; the distributions are not,
// so uniforms are derived by hand to keep sweeps bit-identical everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double in(const ParamRange& r) { return r.lo + (r.hi - r.lo) * unit(); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(unit() * static_cast<double>(n)); }

 private:
  std::mt19937_64 engine_;
};

const std::map<std::string, ParamRange>& default_ranges() {
  static const std::map<std::string, ParamRange> ranges{
      {"a", {0.1, 3.0}},  {"c", {0.0, 2.0}},  {"p", {0.5, 3.0}}, {"s", {1.0, 3.0}},
      {"m", {0.05, 2.0}}, {"d", {-0.5, 1.5}}, {"k", {0.05, 0.95}},
  };
  return ranges;
}

Expr relu_at(double knot) {
  const Expr shifted = Expr::var() - Expr::constant(knot);
  return (shifted + pow(pow(shifted, 2.0), 0.5)) / Expr::constant(2.0);
}

Expr draw_base(Family family, const FamilySpec& spec, Rng& rng) {
  const Expr x = Expr::var();
  switch (family) {
    case Family::affine_increasing: {
      const double a = rng.in(spec.range("a"));
      const double c = rng.in(spec.range("c"));
      return a * x + c;
    }
    case Family::power_increasing: {
      const double a = rng.in(spec.range("a"));
      const double p = rng.in(spec.range("p"));
      const double c = rng.in(spec.range("c"));
      return a * pow(x, p) + c;
    }
    case Family::exp_increasing: {
      // exp(a·x) grows fast; the default slope range is narrower than for a·x.
      const ParamRange r = spec.ranges.count("a") ? spec.range("a") : ParamRange{0.05, 1.0};
      return exp(rng.in(r) * x);
    }
    case Family::piecewise_linear_increasing: {
      const double c = rng.in(spec.range("c"));
      const double m = rng.in(spec.range("m"));
      Expr e = m * x + c;
      std::vector<double> knots(spec.knots);
      for (double& k : knots) {
        k = spec.probe_domain.lo + spec.probe_domain.length() * rng.in(spec.range("k"));
      }
      std::sort(knots.begin(), knots.end());
      for (double k : knots) {
        const double d = rng.in(spec.range("d"));
        e = e + d * relu_at(k);
      }
      return e;
    }
    case Family::shifted:
      break;
  }
  throw InputError("shifted is not a base family");
}

bool shape_ok(const Expr& e, const FamilySpec& spec) {
  constexpr std::size_t n = 1024;
  double prev = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double x = spec.probe_domain.lo + spec.probe_domain.length() * static_cast<double>(i) / (n - 1);
    EvalResult r = evaluate(e, x);
    if (!r || !std::isfinite(r.value())) return false;
    const double v = r.value();
    if (v < 0.0) return false;
    if (v < prev - 1e-12 * std::max(1.0, std::abs(prev))) return false;
    if (spec.family == Family::shifted && v < 1.0) return false;
    prev = v;
  }
  return true;
}

Expr draw_phi(Rng& rng) {
  switch (rng.index(3)) {
    case 0:
      return exp(Expr::var());
    case 1:
      return pow(Expr::var(), 2.0);
    default:
      return pow(Expr::var(), rng.in({1.5, 4.0}));
  }
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::string_view to_string(Family f) {
  switch (f) {
    case Family::affine_increasing:
      return "affine_increasing";
    case Family::power_increasing:
      return "power_increasing";
    case Family::exp_increasing:
      return "exp_increasing";
    case Family::shifted:
      return "shifted";
    case Family::piecewise_linear_increasing:
      return "piecewise_linear_increasing";
  }
  return "?";
}

Family parse_family(std::string_view text) {
  for (Family f : {Family::affine_increasing, Family::power_increasing, Family::exp_increasing, Family::shifted,
                   Family::piecewise_linear_increasing}) {
    if (text == to_string(f)) return f;
  }
  throw InputError("unknown family '" + std::string(text) + "'");
}

ParamRange FamilySpec::range(const std::string& name) const {
  if (auto it = ranges.find(name); it != ranges.end()) return it->second;
  return default_ranges().at(name);
}

std::vector<Expr> generate(const FamilySpec& spec) {
  for (const auto& [name, r] : spec.ranges) {
    if (!default_ranges().count(name)) throw InputError("unknown family parameter '" + name + "'");
    if (!(r.lo <= r.hi) || !std::isfinite(r.lo) || !std::isfinite(r.hi)) {
      throw InputError("invalid range for parameter '" + name + "'");
    }
  }
  if (spec.family == Family::shifted && spec.range("s").lo < 1.0) {
    throw InputError("shifted family needs s >= 1");
  }
  spec.probe_domain.validate();

  Rng rng(spec.seed);
  std::vector<Expr> out;
  out.reserve(spec.count);
  const std::size_t budget = 100 * std::max<std::size_t>(spec.count, 1);
  for (std::size_t draws = 0; out.size() < spec.count; ++draws) {
    if (draws >= budget) throw InputError("rejection budget exhausted while generating " + std::string(to_string(spec.family)));
    Expr e;
    if (spec.family == Family::shifted) {
      constexpr Family bases[] = {Family::affine_increasing, Family::power_increasing, Family::exp_increasing,
                                  Family::piecewise_linear_increasing};
      const Family base = bases[rng.index(4)];
      e = draw_base(base, spec, rng) + rng.in(spec.range("s"));
    } else {
      e = draw_base(spec.family, spec, rng);
    }
    if (shape_ok(e, spec)) out.push_back(std::move(e));
  }
  return out;
}

SweepReport sweep(IneqId id, const FamilySpec& spec, Interval domain, const CheckConfig& cfg, std::size_t jobs) {
  cfg.validate();
  domain.validate();
  if (!std::isfinite(domain.hi) || !(domain.hi > domain.lo)) throw InputError("sweep domain must be finite with a < b");
  if (id == IneqId::hk && !(domain.lo > 0.0)) throw InputError("hk sweeps need a domain with a > 0");
  if (id == IneqId::gpk1 || id == IneqId::gpk2) throw InputError("sweeps support pk1, pk2, hk and jensen");

  FamilySpec members = spec;
  members.probe_domain = Interval{0.0, domain.hi};
  const std::vector<Expr> fs = generate(members);

  std::vector<TrialRecord> records(fs.size());
  Rng extra(spec.seed ^ 0x9E3779B97F4A7C15ULL);
  for (std::size_t i = 0; i < fs.size(); ++i) {
    TrialInputs& in = records[i].inputs;
    in.id = id;
    in.f = fs[i];
    in.domain = domain;
    if (id == IneqId::hk) {
      in.phi = draw_phi(extra);
      double u = extra.unit();
      double v = extra.unit();
      if (u > v) std::swap(u, v);
      v = std::max(v, u + 1e-3);
      in.domain = Interval{domain.lo + domain.length() * u, std::min(domain.hi, domain.lo + domain.length() * v)};
    }
  }

  auto run_trial = [&](TrialRecord& rec) {
    const TrialInputs& in = rec.inputs;
    try {
      switch (id) {
        case IneqId::pk1:
          rec.report = pk_case1(in.f, in.domain, cfg);
          break;
        case IneqId::pk2:
          rec.report = pk_case2(in.f, in.domain, cfg);
          break;
        case IneqId::hk:
          rec.report = hardy_knopp(in.f, *in.phi, in.domain, cfg);
          break;
        case IneqId::jensen_probe:
          rec.report = jensen_probe(in.f, in.domain.hi, cfg);
          break;
        default:
          break;
      }
    } catch (const std::exception& e) {
      rec.error = e.what();
    }
  };

  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, std::max<std::size_t>(records.size(), 1));
  if (jobs <= 1) {
    for (TrialRecord& rec : records) run_trial(rec);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < jobs; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < records.size(); i = next++) run_trial(records[i]);
      });
    }
  }

  SweepReport out;
  out.id = id;
  out.seed = spec.seed;
  out.trials = records.size();
  out.min_slack = std::numeric_limits<double>::infinity();
  for (const TrialRecord& rec : records) {
    if (!rec.report) {
      ++out.errors;
      continue;
    }
    if (!rec.report->holds) ++out.violations;
    if (rec.report->slack < out.min_slack) {
      out.min_slack = rec.report->slack;
      out.worst_case = rec.inputs;
    }
  }
  out.records = std::move(records);
  return out;
}

double root_a_log_a_eq_1() {
  double lo = 1.0;
  double hi = std::numbers::e;
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    (mid * std::log(mid) < 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<PublishedExample> paper_examples(const CheckConfig& cfg) {
  constexpr double e = std::numbers::e;
  std::vector<PublishedExample> out;

  PublishedExample linear;
  linear.name = "pk1: f = x/2 on [0, 5]";
  linear.report = pk_case1(parse("x/2"), Interval{0.0, 5.0}, cfg);
  linear.exact_lhs = 5.0 / (1.0 + 2.0 * e);
  linear.exact_rhs = 5.0 / 3.0;
  linear.printed_lhs = 0.781;
  linear.printed_rhs = 1.6;
  linear.audit = "left side: exact 5/(1+2e) = " + fmt(linear.exact_lhs) + ", published decimal 0.781, computed " +
                 fmt(linear.report.lhs) + "; right side: exact 5/3 = " + fmt(linear.exact_rhs) +
                 ", published decimal 1.6, computed " + fmt(linear.report.rhs) +
                 ". The fractions are correct; both printed decimals are rounding slips.";
  out.push_back(std::move(linear));

  PublishedExample reciprocal;
  const double root = root_a_log_a_eq_1();
  reciprocal.name = "pk2: f = exp(1/x) on [0, 5]";
  reciprocal.report = pk_case2(parse("exp(1/x)"), Interval{0.0, 5.0}, cfg);
  reciprocal.exact_lhs = root;
  reciprocal.exact_rhs = e * root;
  reciprocal.printed_lhs = e;
  reciprocal.printed_rhs = e * e;
  reciprocal.audit =
      "published: SINT_0^5 exp(1/x) dx = e, giving e <= e*e. The distribution function is "
      "F(a) = min(5, 1/ln a), which meets the diagonal at the root of a*ln(a) = 1, " +
      fmt(root) + ", not e = " + fmt(e) + ". Computed lhs " + fmt(reciprocal.report.lhs) + ", rhs " +
      fmt(reciprocal.report.rhs) + " (= e * " + fmt(root) + "). The inequality still holds.";
  out.push_back(std::move(reciprocal));
  return out;
}

}  // namespace sint
