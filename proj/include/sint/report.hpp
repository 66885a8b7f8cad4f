#pragma once

#include <json.hpp>

#include "sint/harness.hpp"
#include "sint/ineq.hpp"
#include "sint/quad.hpp"
#include "sint/sugeno.hpp"

namespace sint::report {

using Json = nlohmann::ordered_json;

/// Finite doubles as JSON numbers; ±∞ and NaN as the strings "inf", "-inf", "nan".
Json number(double v);

Json to_json(const LevelSetOptions& o);
Json to_json(const SugenoOptions& o);
Json to_json(const CheckConfig& c);
Json to_json(const Interval& d);
Json to_json(const SugenoValue& v);
Json to_json(const QuadResult& q);
Json to_json(const IneqReport& r);
Json to_json(const TrialInputs& t);
Json to_json(const SweepReport& s);

}  // namespace sint::report
