#pragma once

// JSON forms of the model inputs:
//   alpha: {"atoms": [[value, weight], ...]}
//   rule:  {"kind": "linear", "A": 2}
//          {"kind": "polynomial", "B": 1.0, "beta": 2.0}
//          {"kind": "exponential", "C": 1.0}
//          {"kind": "double_exponential"}
//          {"kind": "explicit", "times": [0, 3, 7, 10]}

#include <json.hpp>

#include "rwcre/alpha.hpp"
#include "rwcre/cooling.hpp"

namespace rwcre {

/// Both parsers throw Error(InvalidArgument) on malformed input, besides the
/// validation errors of the constructed object.
AlphaSpec alpha_from_json(const nlohmann::json& j);
nlohmann::json to_json(const AlphaSpec& alpha);

CoolingRule rule_from_json(const nlohmann::json& j);
nlohmann::json to_json(const CoolingRule& rule);

nlohmann::json to_json(const RegimeClassification& c);

}  // namespace rwcre
