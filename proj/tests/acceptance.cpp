// Acceptance gate. Prints one PASS/FAIL line per criterion and exits nonzero
// if any criterion fails. Reference values come from closed forms or from
// bisection written here, never from the library's own helpers.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gen.hpp"
#include "sint/cli.hpp"
#include "sint/harness.hpp"
#include "sint/ineq.hpp"
#include "sint/quad.hpp"
#include "sint/sugeno.hpp"

using namespace sint;

namespace {

constexpr double kE = std::numbers::e;

// Pinned tolerances.
constexpr double kTolFixture = 1e-6;
constexpr double kTolQuad = 1e-7;
constexpr double kTolConstant = 1e-8;
constexpr double kTolHkLhs = 1e-5;
constexpr double kTolHkRhs = 1e-8;
constexpr double kTolStability = 1e-6;
constexpr double kTolOracleAbs = 2e-8;
constexpr double kOracleGrid = 1e5;
constexpr double kViolationTol = 1e-6;
constexpr double kMaxSecondsFixture = 1.0;
constexpr double kMaxSecondsPk1Sweep = 120.0;

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... v) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, v...);
  return buf;
}

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

double root_alog_a() {
  return testgen::bisect([](double a) { return a * std::log(a) - 1; }, 1, 3);
}

double root_a_eq_minus_lnln_a() {
  return testgen::bisect([](double a) { return a + std::log(std::log(a)); }, 1.0001, 3);
}

Outcome c1() {
  const auto t0 = std::chrono::steady_clock::now();
  const CliRun r = cli({"integrate", "sugeno", "--f", "x/(2*exp(1))", "--domain", "0", "5"});
  const double secs = seconds_since(t0);
  if (r.code != 0) return {false, "exit " + std::to_string(r.code) + ": " + r.err};
  const auto j = nlohmann::json::parse(r.out);
  const double value = j["result"]["value"].get<double>();
  const double exact = 5 / (1 + 2 * kE);
  bool notes_ok = false;
  for (const auto& n : j["notes"]) {
    const std::string s = n.get<std::string>();
    notes_ok = notes_ok || (s.find("0.781") != std::string::npos && s.find("5/(1+2e)") != std::string::npos);
  }
  const double err = std::abs(value - exact);
  return {err <= kTolFixture && secs < kMaxSecondsFixture && notes_ok,
          fmt("value %.10f, exact %.10f, |err| %.2e, %.3f s, notes cite 0.781 and exact: %s", value, exact, err, secs,
              notes_ok ? "yes" : "no")};
}

Outcome c2() {
  const double v = sugeno_integral(parse("x/2"), {0, 5}, MeasureSpec::uniform()).value;
  const double err = std::abs(v - 5.0 / 3.0);
  return {err <= kTolFixture, fmt("value %.10f, |err| vs 5/3 %.2e", v, err)};
}

Outcome c3() {
  double worst = 0;
  for (double x : {0.5, 1.0, 2.0, 5.0}) {
    const double v = ln_cumulative(parse("x/2"), x).value;
    worst = std::max(worst, std::abs(v - x * (std::log(x / 2) - 1)));
  }
  return {worst <= kTolQuad, fmt("max |err| %.2e over x in {0.5,1,2,5}", worst)};
}

Outcome c4() {
  const double root = root_alog_a();
  const double v = sugeno_integral(parse("exp(1/x)"), {0, 5}, MeasureSpec::uniform()).value;
  const IneqReport r = pk_case2(parse("exp(1/x)"), {0, 5});
  const CliRun ex = cli({"paper-examples"});
  bool documented = false;
  if (ex.code == 0) {
    const auto j = nlohmann::json::parse(ex.out);
    for (const auto& item : j["result"]) {
      if (item["name"].get<std::string>().find("exp(1/x)") == std::string::npos) continue;
      documented = item["printed_lhs"].get<double>() == kE &&
                   std::abs(item["report"]["lhs"].get<double>() - root) <= kTolFixture &&
                   item["audit"].get<std::string>().find("not e") != std::string::npos;
    }
  }
  const bool ok = std::abs(v - root) <= kTolFixture && r.holds && std::abs(r.lhs - root) <= kTolFixture &&
                  std::abs(r.rhs - kE * root) <= kTolFixture && documented;
  return {ok, fmt("SINT %.10f vs root %.10f; pk2 lhs %.8f rhs %.8f (e*root %.8f) holds %d; claimed e documented: %s",
                  v, root, r.lhs, r.rhs, kE * root, r.holds, documented ? "yes" : "no")};
}

Outcome c5() {
  testgen::Rng rng(0xC0457A47);
  double worst = 0;
  for (int t = 0; t < 50; ++t) {
    const double k = rng.uniform(0, 10);
    const double a = rng.uniform(0, 10);
    const double b = a + rng.uniform(0, 10);
    const double v = sugeno_integral(Expr::constant(k), {a, b}, MeasureSpec::uniform()).value;
    worst = std::max(worst, std::abs(v - std::min(k, b - a)));
  }
  return {worst <= kTolConstant, fmt("50 cases, max |err| %.2e", worst)};
}

struct Instance {
  Expr f;
  Interval domain;
  MeasureSpec m;
};

Instance random_instance(testgen::Rng& rng) {
  const Expr x = Expr::var();
  Instance in;
  const double lo = rng.unit() < 0.5 ? 0.0 : rng.uniform(0.05, 2);
  in.domain = {lo, lo + rng.uniform(0.5, 6)};
  switch (rng.below(5)) {
    case 0:
      in.f = rng.uniform(0.1, 3) * pow(x, rng.uniform(0.3, 3)) + rng.uniform(0, 1);
      break;
    case 1:
      in.f = rng.uniform(0.5, 4) * exp(-rng.uniform(0.2, 3) * pow(x + (-rng.uniform(0, 6)), 2.0));
      break;
    case 2:
      in.f = Expr::constant(rng.uniform(0.5, 5)) / (x + rng.uniform(0.05, 2));
      break;
    case 3:
      in.f = exp(Expr::constant(rng.uniform(0.1, 2)) / (x + rng.uniform(0.1, 1)));
      break;
    default:
      in.f = rng.uniform(0.5, 3) * ln(x + rng.uniform(1.1, 3));
      break;
  }
  const int m = rng.below(3);
  if (m == 1 && lo > 0) {
    in.m = MeasureSpec::reciprocal();
  } else if (m == 2) {
    in.m = MeasureSpec::density(parse("1 + x/2"));
  }
  return in;
}

Outcome c6() {
  testgen::Rng rng(0x0AC1E);
  double worst_ratio = 0;
  std::string worst;
  int failures = 0;
  for (int t = 0; t < 100; ++t) {
    const Instance in = random_instance(rng);
    const SugenoValue v = sugeno_integral(in.f, in.domain, in.m);
    const double oracle = sugeno_oracle(in.f, in.domain, in.m, static_cast<std::size_t>(kOracleGrid));
    const double bound = v.alpha_max / kOracleGrid + kTolOracleAbs;
    const double diff = std::abs(v.value - oracle);
    if (diff > bound) ++failures;
    if (diff / bound > worst_ratio) {
      worst_ratio = diff / bound;
      worst = print_canonical(in.f) + " on [" + std::to_string(in.domain.lo) + ", " + std::to_string(in.domain.hi) +
              "] " + in.m.to_string();
    }
  }
  return {failures == 0, fmt("100 instances, %d outside bound, worst |diff|/bound %.3f (%s)", failures, worst_ratio,
                             worst.c_str())};
}

CheckConfig acceptance_cfg() {
  CheckConfig cfg;
  cfg.violation_tol = kViolationTol;
  return cfg;
}

Outcome c7() {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t trials = 0, violations = 0, errors = 0;
  double min_slack = INFINITY;
  const Family families[] = {Family::affine_increasing, Family::power_increasing, Family::exp_increasing,
                             Family::piecewise_linear_increasing, Family::shifted};
  std::uint64_t seed = 3100;
  for (Family f : families) {
    FamilySpec spec;
    spec.family = f;
    spec.count = 100;
    spec.seed = seed++;
    const SweepReport r = sweep(IneqId::pk1, spec, {0, 5}, acceptance_cfg(), 0);
    trials += r.trials;
    violations += r.violations;
    errors += r.errors;
    min_slack = std::min(min_slack, r.min_slack);
  }
  const double secs = seconds_since(t0);
  return {violations == 0 && errors == 0 && trials == 500 && secs < kMaxSecondsPk1Sweep,
          fmt("%zu trials over 5 increasing families, %zu violations, %zu errors, min slack %.3e, %.1f s", trials,
              violations, errors, min_slack, secs)};
}

Outcome c8() {
  FamilySpec spec;
  spec.family = Family::shifted;
  spec.count = 500;
  spec.seed = 3300;
  const SweepReport r = sweep(IneqId::pk2, spec, {0, 5}, acceptance_cfg(), 0);
  return {r.violations == 0 && r.errors == 0 && r.trials == 500,
          fmt("%zu trials (shifted, f >= 1), %zu violations, %zu errors, min slack %.3e", r.trials, r.violations,
              r.errors, r.min_slack)};
}

Outcome c9() {
  FamilySpec spec;
  spec.family = Family::shifted;
  spec.count = 300;
  spec.seed = 3700;
  const SweepReport r = sweep(IneqId::hk, spec, {0.1, 10}, acceptance_cfg(), 0);
  const double root = root_a_eq_minus_lnln_a();
  const IneqReport fx = hardy_knopp(parse("1"), parse("exp(x)"), {1, kE * kE});
  const double lhs_err = std::abs(fx.lhs - root);
  const double rhs_err = std::abs(fx.rhs - 2 * kE);
  return {r.violations == 0 && r.errors == 0 && r.trials == 300 && lhs_err <= kTolHkLhs && rhs_err <= kTolHkRhs,
          fmt("%zu trials, %zu violations, %zu errors, min slack %.3e; fixture lhs %.8f (root %.8f), rhs %.10f (2e)",
              r.trials, r.violations, r.errors, r.min_slack, fx.lhs, root, fx.rhs)};
}

struct Fixtures {
  double c1, c2, c3, c4_sint, c4_lhs, c4_rhs, c9_lhs, c9_rhs;
};

Fixtures fixtures(const CheckConfig& cfg) {
  const MeasureSpec u = MeasureSpec::uniform();
  Fixtures f{};
  f.c1 = sugeno_integral(parse("x/(2*exp(1))"), {0, 5}, u, cfg.sugeno).value;
  f.c2 = sugeno_integral(parse("x/2"), {0, 5}, u, cfg.sugeno).value;
  f.c3 = ln_cumulative(parse("x/2"), 5, cfg.quad_tol).value;
  f.c4_sint = sugeno_integral(parse("exp(1/x)"), {0, 5}, u, cfg.sugeno).value;
  const IneqReport p = pk_case2(parse("exp(1/x)"), {0, 5}, cfg);
  f.c4_lhs = p.lhs;
  f.c4_rhs = p.rhs;
  const IneqReport h = hardy_knopp(parse("1"), parse("exp(x)"), {1, kE * kE}, cfg);
  f.c9_lhs = h.lhs;
  f.c9_rhs = h.rhs;
  return f;
}

Outcome c10() {
  const CheckConfig base;
  CheckConfig fine = base;
  fine.sugeno.level.scan_points *= 2;
  fine.sugeno.level.root_tol /= 2;
  fine.sugeno.tol /= 2;
  fine.sugeno.measure_tol /= 2;
  fine.quad_tol /= 2;
  fine.inverse_tol /= 2;
  const Fixtures a = fixtures(base);
  const Fixtures b = fixtures(fine);
  const double diffs[] = {std::abs(a.c1 - b.c1),         std::abs(a.c2 - b.c2),         std::abs(a.c3 - b.c3),
                          std::abs(a.c4_sint - b.c4_sint), std::abs(a.c4_lhs - b.c4_lhs), std::abs(a.c4_rhs - b.c4_rhs),
                          std::abs(a.c9_lhs - b.c9_lhs),   std::abs(a.c9_rhs - b.c9_rhs)};
  double worst = 0;
  for (double d : diffs) worst = std::max(worst, d);
  return {worst < kTolStability, fmt("8 fixture values, max change %.2e", worst)};
}

Outcome c11() {
  const std::vector<std::string> args = {"sweep", "pk2", "--family", "shifted", "--trials", "40", "--seed", "1111"};
  const CliRun a = cli(args);
  const CliRun b = cli(args);
  const bool ok = a.code == 0 && b.code == 0 && a.out == b.out && !a.out.empty();
  return {ok, fmt("two runs, %zu bytes each, identical: %s", a.out.size(), a.out == b.out ? "yes" : "no")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"x/(2e) on [0,5] via CLI equals 5/(1+2e), < 1 s, notes cite 0.781", c1},
      {"SINT x/2 on [0,5] equals 5/3", c2},
      {"ln-cumulative of t/2 matches x(ln(x/2) - 1)", c3},
      {"SINT exp(1/x) on [0,5] equals root of a ln a = 1; pk2 fixture", c4},
      {"constant rule on 50 random cases", c5},
      {"fixed point vs grid oracle on 100 random instances", c6},
      {"pk1 sweep, 500 trials, increasing families", c7},
      {"pk2 sweep, 500 trials, shifted family", c8},
      {"hk sweep, 300 trials, and exp/f=1 fixture on [1, e^2]", c9},
      {"fixtures stable under finer resolution", c10},
      {"sweep JSON bit-identical across runs", c11},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s  %2zu  %s  [%s] (%.1f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
