#pragma once

#include <string>

#include <json.hpp>

#include "ghnabla/fuzzy.hpp"
#include "ghnabla/nabla.hpp"
#include "ghnabla/rules.hpp"
#include "ghnabla/timescale.hpp"

namespace ghnabla::io {

using nlohmann::json;

json to_json(const FuzzyNumber& u);
// Accepts {"K", "lower", "upper"} or the shorthand {"tri": [a, b, c]} (expanded on K levels).
FuzzyNumber fuzzy_from_json(const json& j, int K = 100);

json to_json(const Piece& p);
json to_json(const TimeScale& ts);
TimeScale timescale_from_json(const json& j);

json to_json(const DerivativeResult& r);
json to_json(const rules::RuleReport& r);

// Level table with columns alpha, lower, upper.
std::string level_csv(const FuzzyNumber& u);

}  // namespace ghnabla::io
