#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sint/expr.hpp"
#include "sint/ineq.hpp"
#include "sint/measure.hpp"

namespace sint {

enum class Family { affine_increasing, power_increasing, exp_increasing, shifted, piecewise_linear_increasing };

std::string_view to_string(Family f);
Family parse_family(std::string_view text);

struct ParamRange {
  double lo = 0.0;
  double hi = 0.0;
};

/// Seeded closed-form function families.
///
///   affine_increasing            a·x + c
///   power_increasing             a·x^p + c
///   exp_increasing               exp(a·x)
///   piecewise_linear_increasing  c + m·x + Σ d_j·relu(x − k_j), relu(y) = (y + (y^2)^0.5)/2
///   shifted                      one of the above + s
///
/// Parameter names: a, c, p, s, m, d (slope changes), k (knot positions as a
/// fraction of the probe domain). Entries in `ranges` override the defaults.
struct FamilySpec {
  Family family = Family::affine_increasing;
  std::map<std::string, ParamRange> ranges;
  std::size_t count = 1;
  std::uint64_t seed = 0;
  std::size_t knots = 3;
  /// Members must be nondecreasing (and ≥ 1 for shifted) on 1024 points here.
  Interval probe_domain{0.0, 5.0};

  ParamRange range(const std::string& name) const;
};

/// Deterministic for a fixed spec. Throws InputError if the rejection budget
/// (100 draws per requested member) runs out.
std::vector<Expr> generate(const FamilySpec& spec);

/// Everything needed to replay one trial through `check`.
struct TrialInputs {
  IneqId id = IneqId::pk1;
  Expr f;
  std::optional<Expr> phi;
  Interval domain;
};

struct TrialRecord {
  TrialInputs inputs;
  std::optional<IneqReport> report;
  std::string error;
};

struct SweepReport {
  IneqId id = IneqId::pk1;
  std::size_t trials = 0;
  std::size_t violations = 0;
  std::size_t errors = 0;
  double min_slack = 0.0;
  std::optional<TrialInputs> worst_case;
  std::uint64_t seed = 0;
  std::vector<TrialRecord> records;
};

/// Runs one check per generated function. For hk each trial also draws
/// φ ∈ {exp, x^2, x^p with p ∈ [1.5, 4]} and a sub-interval a < b of the
/// domain. Trial errors are recorded, never thrown. `jobs` = 0 uses all
/// hardware threads; the report does not depend on it.
SweepReport sweep(IneqId id, const FamilySpec& spec, Interval domain, const CheckConfig& cfg = {},
                  std::size_t jobs = 1);

/// The two published worked examples, recomputed with an audit of the
/// printed decimals.
struct PublishedExample {
  std::string name;
  IneqReport report;
  double exact_lhs = 0.0;
  double exact_rhs = 0.0;
  double printed_lhs = 0.0;
  double printed_rhs = 0.0;
  std::string audit;
};

std::vector<PublishedExample> paper_examples(const CheckConfig& cfg = {});

/// Root of a·ln(a) = 1 by plain bisection on [1, e].
double root_a_log_a_eq_1();

}  // namespace sint
