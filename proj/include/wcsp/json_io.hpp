#pragma once

#include "wcsp/core.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace wcsp {

/// Instance JSON:
///   {"q":2,"n":3,"functions":{"xor3":{"arity":3,"table":["0","1",...]}},
///    "constraints":[{"f":"xor3","scope":[0,1,2]}]}
/// Rationals are strings ("3", "1/2"); bare JSON integers are accepted on
/// input. A constraint may name a built-in function (see library::lookupBuiltin)
/// without declaring it; it is then added to the catalog.
Instance parseInstance(std::string_view text);
Instance instanceFromJson(const nlohmann::json& j);

/// Canonical form: keys in the order q, n, functions, constraints; functions
/// sorted by name; compact.
nlohmann::ordered_json toJson(const Instance& instance);
std::string serialize(const Instance& instance);

nlohmann::ordered_json toJson(const WeightFunction& f);
WeightFunction functionFromJson(const nlohmann::json& j, int domainSize, const std::string& path);

/// Reads a JSON document, turning parse errors into InputError messages that
/// carry line and column.
nlohmann::json parseJsonText(std::string_view text);

/// Rational field: JSON string or non-negative integer.
Rational rationalFromJson(const nlohmann::json& j, const std::string& path);

std::string readFile(const std::string& path);

}  // namespace wcsp
