#include "sint/report.hpp"

#include <charconv>
#include <cmath>

namespace sint::report {

namespace {

std::string shortest(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string quote(const std::string& s) { return "\"" + s + "\""; }

}  // namespace

Json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

Json to_json(const LevelSetOptions& o) {
  return Json{{"scan_points", o.scan_points}, {"root_tol", number(o.root_tol)},
              {"declared_shape", std::string(to_string(o.declared_shape))}};
}

Json to_json(const SugenoOptions& o) {
  return Json{{"tol", number(o.tol)},
              {"alpha_cap", number(o.alpha_cap)},
              {"measure_tol", number(o.measure_tol)},
              {"level", to_json(o.level)}};
}

Json to_json(const CheckConfig& c) {
  return Json{{"sugeno", to_json(c.sugeno)},
              {"quad_tol", number(c.quad_tol)},
              {"violation_tol", number(c.violation_tol)},
              {"inverse_tol", number(c.inverse_tol)},
              {"probe_points", c.probe_points}};
}

Json to_json(const Interval& d) { return Json::array({number(d.lo), number(d.hi)}); }

Json to_json(const SugenoValue& v) {
  return Json{{"value", number(v.value)},
              {"alpha_star", number(v.alpha_star)},
              {"F_at_lower", number(v.F_at_lower)},
              {"F_at_upper", number(v.F_at_upper)},
              {"bracket_width", number(v.bracket_width)},
              {"alpha_max", number(v.alpha_max)},
              {"evaluations", v.evaluations}};
}

Json to_json(const QuadResult& q) {
  return Json{{"value", number(q.value)},
              {"abs_error_estimate", number(q.abs_error_estimate)},
              {"evaluations", q.evaluations}};
}

Json to_json(const IneqReport& r) {
  Json flags = Json::object();
  for (const HypothesisFlag& f : r.hypothesis_flags) flags[f.name] = f.value;
  return Json{{"id", std::string(to_string(r.id))},
              {"lhs", number(r.lhs)},
              {"rhs", number(r.rhs)},
              {"slack", number(r.slack)},
              {"holds", r.holds},
              {"violation_tol", number(r.violation_tol)},
              {"hypothesis_flags", flags},
              {"notes", r.notes},
              {"lhs_integral", to_json(r.lhs_integral)},
              {"rhs_integral", to_json(r.rhs_integral)}};
}

Json to_json(const TrialInputs& t) {
  const std::string f = print_canonical(t.f);
  Json j{{"id", std::string(to_string(t.id))}, {"f", f}};
  std::string replay = "check " + std::string(t.id == IneqId::jensen_probe ? "jensen" : to_string(t.id)) +
                       " --f " + quote(f);
  if (t.phi) {
    j["phi"] = print_canonical(*t.phi);
    replay += " --phi " + quote(print_canonical(*t.phi));
  }
  j["domain"] = to_json(t.domain);
  replay += " --domain " + shortest(t.domain.lo) + " " + shortest(t.domain.hi);
  j["replay"] = replay;
  return j;
}

Json to_json(const SweepReport& s) {
  Json trials = Json::array();
  for (const TrialRecord& rec : s.records) {
    Json t = to_json(rec.inputs);
    if (rec.report) {
      t["lhs"] = number(rec.report->lhs);
      t["rhs"] = number(rec.report->rhs);
      t["slack"] = number(rec.report->slack);
      t["holds"] = rec.report->holds;
    } else {
      t["error"] = rec.error;
    }
    trials.push_back(std::move(t));
  }
  return Json{{"id", std::string(to_string(s.id))},
              {"seed", s.seed},
              {"trials", s.trials},
              {"violations", s.violations},
              {"errors", s.errors},
              {"min_slack", number(s.min_slack)},
              {"worst_case", s.worst_case ? to_json(*s.worst_case) : Json()},
              {"records", std::move(trials)}};
}

}  // namespace sint::report
