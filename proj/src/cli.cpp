#include "sint/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "sint/errors.hpp"
#include "sint/harness.hpp"
#include "sint/ineq.hpp"
#include "sint/quad.hpp"
#include "sint/report.hpp"
#include "sint/sugeno.hpp"

namespace sint::cli {

namespace {

using report::Json;
using report::number;

constexpr const char* kGrammar = R"(usage:
  sint integrate sugeno  --f EXPR --domain A B [--measure M] [--tol T]
  sint integrate riemann --f EXPR --domain A B [--tol T]
  sint check {pk1|pk2|gpk|hk|jensen} --f EXPR [--phi EXPR] [--bij EXPR]
             [--inner riemann|sugeno] --domain A B
  sint sweep {pk1|pk2|hk|jensen} --family NAME --trials N --seed S
             [--domain A B] [--jobs J]
  sint paper-examples
  sint emit-plot --f EXPR --domain A B [--measure M] --out PATH

  EXPR     expression in x: + - * / ^, exp(), ln(), decimal literals
  M        uniform | reciprocal | density:EXPR
  NAME     affine_increasing | power_increasing | exp_increasing | shifted |
           piecewise_linear_increasing
  common   --format json|csv  --out PATH  and the tolerance flags listed by
           `sint <command> --help`
exit status: 0 ok/holds, 1 violated, 2 input error, 3 numerical failure
)";

std::string shortest(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

struct Settings {
  std::string f;
  std::string phi;
  std::string bij;
  std::string inner = "riemann";
  std::string measure = "uniform";
  std::string shape = "unknown";
  std::vector<double> domain;
  std::string format = "json";
  std::string out_path;
  CheckConfig cfg;
  double riemann_tol = 1e-9;

  std::string ineq;
  std::string family;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::size_t knots = 3;
  std::vector<std::string> ranges;
  std::size_t jobs = std::max(1u, std::thread::hardware_concurrency());
  std::size_t plot_points = 512;
};

Interval domain_of(const Settings& s) {
  if (s.domain.size() != 2) throw InputError("--domain takes exactly two numbers A B");
  Interval d{s.domain[0], s.domain[1]};
  d.validate();
  return d;
}

Shape parse_shape(const std::string& s) {
  if (s == "unknown") return Shape::unknown;
  if (s == "nondecreasing") return Shape::nondecreasing;
  if (s == "nonincreasing") return Shape::nonincreasing;
  throw InputError("unknown shape '" + s + "'");
}

/// Parses an expression flag, pointing at the offending character on error.
Expr parse_flag(const std::string& flag, const std::string& text) {
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw InputError(std::string("--") + flag + ": " + e.what() + "\n  " + text + "\n  " +
                     std::string(e.offset(), ' ') + "^");
  }
}

void add_format_flags(CLI::App* app, Settings& s) {
  app->add_option("--format", s.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app->add_option("--out", s.out_path, "Write the report to PATH instead of stdout");
}

void add_sugeno_flags(CLI::App* app, Settings& s) {
  SugenoOptions& o = s.cfg.sugeno;
  app->add_option("--tol", o.tol, "Fixed-point bracket tolerance")->capture_default_str();
  app->add_option("--alpha-cap", o.alpha_cap, "Largest level searched when f or the measure is unbounded")
      ->capture_default_str();
  app->add_option("--measure-tol", o.measure_tol, "Quadrature tolerance for density measures")
      ->capture_default_str();
  app->add_option("--scan-points", o.level.scan_points, "Grid points for level-set scans")->capture_default_str();
  app->add_option("--root-tol", o.level.root_tol, "Level-set boundary tolerance")->capture_default_str();
}

void add_check_flags(CLI::App* app, Settings& s) {
  add_sugeno_flags(app, s);
  app->add_option("--quad-tol", s.cfg.quad_tol, "Tolerance for inner Riemann integrals")->capture_default_str();
  app->add_option("--violation-tol", s.cfg.violation_tol, "A trial holds when rhs - lhs >= -violation_tol")
      ->capture_default_str();
  app->add_option("--inverse-tol", s.cfg.inverse_tol, "Relative tolerance of numeric inverses")
      ->capture_default_str();
  app->add_option("--probe-points", s.cfg.probe_points, "Grid points for hypothesis probes")
      ->capture_default_str();
}

void add_domain(CLI::App* app, Settings& s, bool required) {
  auto* opt = app->add_option("--domain", s.domain, "Interval endpoints A B")->expected(2);
  if (required) opt->required();
}

// Worked examples with exact values and the decimals printed for them, so a
// matching `integrate sugeno` run can annotate its result.
struct KnownValue {
  const char* f;
  double lo;
  double hi;
  double exact;
  const char* exact_form;
  const char* printed;
};

std::vector<std::string> known_value_notes(const Expr& f, const Interval& d, const MeasureSpec& m, double value) {
  const double e = std::numbers::e;
  const KnownValue table[] = {
      {"x/(2*exp(1))", 0.0, 5.0, 5.0 / (1.0 + 2.0 * e), "5/(1+2e)", "0.781"},
      {"x/2", 0.0, 5.0, 5.0 / 3.0, "5/3", "1.6"},
      {"exp(1/x)", 0.0, 5.0, root_a_log_a_eq_1(), "root of a*ln(a) = 1", "e"},
  };
  std::vector<std::string> notes;
  if (!m.is_uniform()) return notes;
  for (const KnownValue& k : table) {
    if (!(parse(k.f) == f) || d.lo != k.lo || d.hi != k.hi) continue;
    notes.push_back(std::string("exact value ") + k.exact_form + " = " + shortest(k.exact) +
                    "; the published worked example prints " + k.printed + "; computed " + shortest(value) +
                    " differs from the exact value by " + shortest(std::abs(value - k.exact)));
  }
  return notes;
}

Json base_config(const Settings& s) {
  Json c;
  c["format"] = s.format;
  if (!s.out_path.empty()) c["out"] = s.out_path;
  return c;
}

struct Emitted {
  Json result;
  std::vector<std::string> notes;
  std::string csv;
  int code = ok;
};

Emitted cmd_integrate_sugeno(const Settings& s, Json& config) {
  const Expr f = parse_flag("f", s.f);
  const Interval d = domain_of(s);
  const MeasureSpec m = MeasureSpec::parse(s.measure);
  SugenoOptions opts = s.cfg.sugeno;
  opts.level.declared_shape = parse_shape(s.shape);
  opts.validate();
  config["f"] = print_canonical(f);
  config["domain"] = report::to_json(d);
  config["measure"] = m.to_string();
  config["sugeno"] = report::to_json(opts);

  const SugenoValue v = sugeno_integral(f, d, m, opts);
  Emitted e;
  e.result = report::to_json(v);
  e.notes = known_value_notes(f, d, m, v.value);
  e.csv = "value,alpha_star,F_at_lower,F_at_upper,bracket_width,alpha_max,evaluations\n" + shortest(v.value) + "," +
          shortest(v.alpha_star) + "," + shortest(v.F_at_lower) + "," + shortest(v.F_at_upper) + "," +
          shortest(v.bracket_width) + "," + shortest(v.alpha_max) + "," + std::to_string(v.evaluations) + "\n";
  return e;
}

Emitted cmd_integrate_riemann(const Settings& s, Json& config) {
  const Expr f = parse_flag("f", s.f);
  const Interval d = domain_of(s);
  if (!(s.riemann_tol > 0.0)) throw InputError("--tol must be positive");
  config["f"] = print_canonical(f);
  config["domain"] = report::to_json(d);
  config["tol"] = number(s.riemann_tol);
  QuadOptions q;
  q.tol = s.riemann_tol;
  const QuadResult r = d.lo == 0.0 ? cumulative(as_function(f), d.hi, q) : integrate(as_function(f), d.lo, d.hi, q);
  Emitted e;
  e.result = report::to_json(r);
  e.csv = "value,abs_error_estimate,evaluations\n" + shortest(r.value) + "," + shortest(r.abs_error_estimate) + "," +
          std::to_string(r.evaluations) + "\n";
  return e;
}

std::string ineq_csv_header() { return "id,lhs,rhs,slack,holds\n"; }

std::string ineq_csv_row(const IneqReport& r) {
  return std::string(to_string(r.id)) + "," + shortest(r.lhs) + "," + shortest(r.rhs) + "," + shortest(r.slack) + "," +
         (r.holds ? "true" : "false") + "\n";
}

Emitted cmd_check(const Settings& s, Json& config) {
  s.cfg.validate();
  const Expr f = parse_flag("f", s.f);
  const Interval d = domain_of(s);
  config["inequality"] = s.ineq;
  config["f"] = print_canonical(f);
  config["domain"] = report::to_json(d);
  IneqReport r;
  if (s.ineq == "pk1") {
    r = pk_case1(f, d, s.cfg);
  } else if (s.ineq == "pk2") {
    r = pk_case2(f, d, s.cfg);
  } else if (s.ineq == "gpk") {
    if (s.bij.empty()) throw InputError("check gpk needs --bij");
    const Expr bij = parse_flag("bij", s.bij);
    const InnerIntegral inner = parse_inner(s.inner);
    config["bij"] = print_canonical(bij);
    config["inner"] = std::string(to_string(inner));
    r = generalized_pk(f, bij, inner, d, s.cfg);
  } else if (s.ineq == "hk") {
    if (s.phi.empty()) throw InputError("check hk needs --phi");
    const Expr phi = parse_flag("phi", s.phi);
    config["phi"] = print_canonical(phi);
    r = hardy_knopp(f, phi, d, s.cfg);
  } else {
    if (d.lo != 0.0) throw InputError("check jensen integrates over [0, B]; pass --domain 0 B");
    r = jensen_probe(f, d.hi, s.cfg);
  }
  config["check"] = report::to_json(s.cfg);
  Emitted e;
  e.result = report::to_json(r);
  e.csv = ineq_csv_header() + ineq_csv_row(r);
  e.code = r.holds ? ok : violated;
  return e;
}

FamilySpec family_spec(const Settings& s) {
  FamilySpec spec;
  spec.family = parse_family(s.family);
  spec.count = s.trials;
  spec.seed = s.seed;
  spec.knots = s.knots;
  for (const std::string& r : s.ranges) {
    // NAME=LO:HI
    const auto eq = r.find('=');
    const auto colon = r.find(':', eq == std::string::npos ? 0 : eq);
    if (eq == std::string::npos || colon == std::string::npos) throw InputError("--range expects NAME=LO:HI, got '" + r + "'");
    ParamRange pr;
    const std::string lo = r.substr(eq + 1, colon - eq - 1);
    const std::string hi = r.substr(colon + 1);
    auto [p1, e1] = std::from_chars(lo.data(), lo.data() + lo.size(), pr.lo);
    auto [p2, e2] = std::from_chars(hi.data(), hi.data() + hi.size(), pr.hi);
    if (e1 != std::errc() || e2 != std::errc() || p1 != lo.data() + lo.size() || p2 != hi.data() + hi.size()) {
      throw InputError("--range expects NAME=LO:HI, got '" + r + "'");
    }
    spec.ranges[r.substr(0, eq)] = pr;
  }
  return spec;
}

Emitted cmd_sweep(const Settings& s, Json& config) {
  s.cfg.validate();
  if (s.trials == 0) throw InputError("--trials must be positive");
  const Interval d = s.domain.empty() ? Interval{0.0, 5.0} : domain_of(s);
  const FamilySpec spec = family_spec(s);
  const IneqId id = parse_ineq_id(s.ineq);
  config["inequality"] = s.ineq;
  config["family"] = std::string(to_string(spec.family));
  Json ranges = Json::object();
  for (const char* name : {"a", "c", "p", "s", "m", "d", "k"}) {
    ranges[name] = Json::array({number(spec.range(name).lo), number(spec.range(name).hi)});
  }
  config["ranges"] = ranges;
  config["knots"] = spec.knots;
  config["trials"] = spec.count;
  config["seed"] = spec.seed;
  config["domain"] = report::to_json(d);
  config["check"] = report::to_json(s.cfg);

  const SweepReport r = sweep(id, spec, d, s.cfg, s.jobs);
  Emitted e;
  e.result = report::to_json(r);
  std::ostringstream csv;
  csv << "index,f,phi,a,b,lhs,rhs,slack,holds,error\n";
  for (std::size_t i = 0; i < r.records.size(); ++i) {
    const TrialRecord& t = r.records[i];
    csv << i << "," << print_canonical(t.inputs.f) << "," << (t.inputs.phi ? print_canonical(*t.inputs.phi) : "")
        << "," << shortest(t.inputs.domain.lo) << "," << shortest(t.inputs.domain.hi) << ",";
    if (t.report) {
      csv << shortest(t.report->lhs) << "," << shortest(t.report->rhs) << "," << shortest(t.report->slack) << ","
          << (t.report->holds ? "true" : "false") << ",\n";
    } else {
      std::string msg = t.error;
      for (char& c : msg) {
        if (c == ',' || c == '\n') c = ';';
      }
      csv << ",,,," << msg << "\n";
    }
  }
  e.csv = csv.str();
  if (r.errors > 0) e.notes.push_back(std::to_string(r.errors) + " trial(s) failed numerically; see records[].error");
  e.code = r.violations > 0 ? violated : (r.errors > 0 ? numerical_failure : ok);
  return e;
}

Emitted cmd_paper_examples(const Settings& s, Json& config) {
  s.cfg.validate();
  config["check"] = report::to_json(s.cfg);
  const std::vector<PublishedExample> examples = paper_examples(s.cfg);
  Emitted e;
  e.result = Json::array();
  e.csv = "name,lhs,rhs,exact_lhs,exact_rhs,printed_lhs,printed_rhs,holds\n";
  for (const PublishedExample& ex : examples) {
    Json j{{"name", ex.name},
           {"report", report::to_json(ex.report)},
           {"exact_lhs", number(ex.exact_lhs)},
           {"exact_rhs", number(ex.exact_rhs)},
           {"printed_lhs", number(ex.printed_lhs)},
           {"printed_rhs", number(ex.printed_rhs)},
           {"audit", ex.audit}};
    e.result.push_back(std::move(j));
    e.notes.push_back(ex.name + ": " + ex.audit);
    e.csv += "\"" + ex.name + "\"," + shortest(ex.report.lhs) + "," + shortest(ex.report.rhs) + "," +
             shortest(ex.exact_lhs) + "," + shortest(ex.exact_rhs) + "," + shortest(ex.printed_lhs) + "," +
             shortest(ex.printed_rhs) + "," + (ex.report.holds ? "true" : "false") + "\n";
    if (!ex.report.holds) e.code = violated;
  }
  return e;
}

/// Writes the plot CSV itself; the returned result summarises it.
Emitted cmd_emit_plot(const Settings& s, Json& config) {
  const Expr f = parse_flag("f", s.f);
  const Interval d = domain_of(s);
  const MeasureSpec m = MeasureSpec::parse(s.measure);
  SugenoOptions opts = s.cfg.sugeno;
  opts.level.declared_shape = parse_shape(s.shape);
  opts.validate();
  if (s.plot_points < 2) throw InputError("--points must be at least 2");
  config["f"] = print_canonical(f);
  config["domain"] = report::to_json(d);
  config["measure"] = m.to_string();
  config["points"] = s.plot_points;
  config["sugeno"] = report::to_json(opts);

  std::ofstream file(s.out_path);
  if (!file) throw InputError("cannot open '" + s.out_path + "' for writing");
  Distribution F(as_function(f), d, m, opts);
  const double top = F.alpha_max();
  file << "alpha,F_alpha,min_alpha_F\n";
  for (std::size_t j = 0; j < s.plot_points; ++j) {
    const double alpha = top * static_cast<double>(j) / static_cast<double>(s.plot_points - 1);
    const double fa = F(alpha);
    file << shortest(alpha) << "," << shortest(fa) << "," << shortest(std::min(alpha, fa)) << "\n";
  }
  if (!file) throw InputError("failed writing '" + s.out_path + "'");
  const SugenoValue v = sugeno_integral(f, d, m, opts);
  Emitted e;
  e.result = Json{{"path", s.out_path}, {"rows", s.plot_points}, {"alpha_max", number(top)}, {"value", number(v.value)}};
  e.csv = "path,rows,alpha_max,value\n" + s.out_path + "," + std::to_string(s.plot_points) + "," + shortest(top) + "," +
          shortest(v.value) + "\n";
  return e;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw InputError("cannot open '" + path + "' for writing");
  file << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app{"Sugeno integrals and Polya-Knopp / Hardy-Knopp type inequality checks", "sint"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  app.footer(kGrammar);

  CLI::App* integrate = app.add_subcommand("integrate", "Compute a single integral");
  integrate->require_subcommand(1);
  CLI::App* isugeno = integrate->add_subcommand("sugeno", "Sugeno integral over [A, B]");
  isugeno->add_option("--f", s.f, "Integrand")->required();
  add_domain(isugeno, s, true);
  isugeno->add_option("--measure", s.measure, "uniform | reciprocal | density:EXPR")->capture_default_str();
  isugeno->add_option("--shape", s.shape, "Declared monotonicity of f")
      ->check(CLI::IsMember({"unknown", "nondecreasing", "nonincreasing"}))
      ->capture_default_str();
  add_sugeno_flags(isugeno, s);
  add_format_flags(isugeno, s);

  CLI::App* iriemann = integrate->add_subcommand("riemann", "Ordinary integral over [A, B]");
  iriemann->add_option("--f", s.f, "Integrand")->required();
  add_domain(iriemann, s, true);
  iriemann->add_option("--tol", s.riemann_tol, "Quadrature tolerance")->capture_default_str();
  add_format_flags(iriemann, s);

  CLI::App* check = app.add_subcommand("check", "Check one inequality instance");
  check->add_option("inequality", s.ineq, "pk1 | pk2 | gpk | hk | jensen")
      ->required()
      ->check(CLI::IsMember({"pk1", "pk2", "gpk", "hk", "jensen"}));
  check->add_option("--f", s.f, "Integrand")->required();
  check->add_option("--phi", s.phi, "Convex kernel (hk)");
  check->add_option("--bij", s.bij, "Strictly monotone bijection (gpk)");
  check->add_option("--inner", s.inner, "Inner integral for gpk")
      ->check(CLI::IsMember({"riemann", "sugeno"}))
      ->capture_default_str();
  add_domain(check, s, true);
  add_check_flags(check, s);
  add_format_flags(check, s);

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Run one check over a seeded function family");
  sweep_cmd->add_option("inequality", s.ineq, "pk1 | pk2 | hk | jensen")
      ->required()
      ->check(CLI::IsMember({"pk1", "pk2", "hk", "jensen"}));
  sweep_cmd->add_option("--family", s.family, "Function family")->required();
  sweep_cmd->add_option("--trials", s.trials, "Number of trials")->required();
  sweep_cmd->add_option("--seed", s.seed, "64-bit seed")->required();
  sweep_cmd->add_option("--domain", s.domain, "Interval endpoints A B (default 0 5)")->expected(2);
  sweep_cmd->add_option("--knots", s.knots, "Knots for piecewise_linear_increasing")->capture_default_str();
  sweep_cmd->add_option("--range", s.ranges, "Override a parameter range, NAME=LO:HI (repeatable)");
  sweep_cmd->add_option("--jobs", s.jobs, "Worker threads")->capture_default_str();
  add_check_flags(sweep_cmd, s);
  add_format_flags(sweep_cmd, s);

  CLI::App* examples = app.add_subcommand("paper-examples", "Recompute the two published worked examples");
  add_check_flags(examples, s);
  add_format_flags(examples, s);

  CLI::App* plot = app.add_subcommand("emit-plot", "Write alpha, F(alpha), min(alpha, F(alpha)) as CSV");
  plot->add_option("--f", s.f, "Integrand")->required();
  add_domain(plot, s, true);
  plot->add_option("--measure", s.measure, "uniform | reciprocal | density:EXPR")->capture_default_str();
  plot->add_option("--shape", s.shape, "Declared monotonicity of f")
      ->check(CLI::IsMember({"unknown", "nondecreasing", "nonincreasing"}))
      ->capture_default_str();
  plot->add_option("--points", s.plot_points, "Rows in the CSV")->capture_default_str();
  plot->add_option("--out", s.out_path, "CSV path")->required();
  add_sugeno_flags(plot, s);

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.push_back("sint");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << kGrammar;
    return input_error;
  }

  std::string command;
  try {
    Json config = base_config(s);
    Emitted e;
    if (isugeno->parsed()) {
      command = "integrate sugeno";
      e = cmd_integrate_sugeno(s, config);
    } else if (iriemann->parsed()) {
      command = "integrate riemann";
      e = cmd_integrate_riemann(s, config);
    } else if (check->parsed()) {
      command = "check";
      e = cmd_check(s, config);
    } else if (sweep_cmd->parsed()) {
      command = "sweep";
      config["jobs"] = s.jobs;
      e = cmd_sweep(s, config);
    } else if (examples->parsed()) {
      command = "paper-examples";
      e = cmd_paper_examples(s, config);
    } else {
      command = "emit-plot";
      e = cmd_emit_plot(s, config);
      s.out_path.clear();  // --out names the plot file; the summary goes to stdout
    }

    if (s.format == "csv") {
      emit(e.csv, s.out_path, out);
    } else {
      Json doc{{"version", kVersion}, {"command", command}, {"config", config}, {"result", e.result},
               {"notes", e.notes}};
      emit(doc.dump(2) + "\n", s.out_path, out);
    }
    return e.code;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return numerical_failure;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return numerical_failure;
  }
}

}  // namespace sint::cli
