#pragma once

// Fan documents: a JSON tree with 1-based vertex indices and rationals written
// as "p/q" strings (plain integers are accepted too).
//
//   {
//     "n": 1,
//     "m": 2,
//     "simplices": [[1], [2]],
//     "beta": [ [["1", "0", 1]], [["-1", "0", -1]] ]
//   }
//
// beta[i][j] is the triple (b, c, v) of beta_{i+1}^{j+1}.

#include <string>
#include <string_view>

#include <json.hpp>

#include "topfan/fan.hpp"

namespace topfan {

/// Throws ParseError (syntax errors carry line/column, structural errors a
/// JSON pointer to the offending field). Duplicate simplices are rejected.
TopologicalFan parse_fan(std::string_view text);

nlohmann::json fan_to_json(const TopologicalFan& fan);

/// Pretty-printed document; parse_fan(emit_fan(f)) == f.
std::string emit_fan(const TopologicalFan& fan);

/// Reads "p/q" strings or JSON integers. Throws ParseError with the given pointer.
Rational rational_from_json(const nlohmann::json& value, const std::string& pointer);

/// "1,2" or "{1,2}" (1-based) to a sorted 0-based simplex.
Simplex parse_simplex_list(std::string_view text);

}  // namespace topfan
