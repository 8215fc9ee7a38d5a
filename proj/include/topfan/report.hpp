#pragma once

// Machine-readable reports. Every report is a JSON object
//
//   { "command": ..., "inputs_digest": "fnv1a64:<hex>", "results": {...}, "witnesses": [...] }
//
// Rationals are "p/q" strings, vertices are 1-based, and floats are written
// with round-trip precision; values that would be NaN are null.

#include <string>
#include <string_view>

#include <json.hpp>

#include "topfan/acs.hpp"
#include "topfan/charts.hpp"
#include "topfan/fan.hpp"

namespace topfan {

struct Report {
  std::string command;
  std::string inputs_digest;
  nlohmann::json results = nlohmann::json::object();
  nlohmann::json witnesses = nlohmann::json::array();

  friend bool operator==(const Report&, const Report&) = default;
};

nlohmann::json report_to_json(const Report& report);
/// Throws ParseError when a required key is missing or mistyped.
Report report_from_json(const nlohmann::json& doc);

std::string render_report(const Report& report);
Report parse_report(std::string_view text);

/// FNV-1a over the raw input bytes, "fnv1a64:" followed by 16 hex digits.
std::string input_digest(std::string_view bytes);

nlohmann::json simplex_to_json(const Simplex& s);
nlohmann::json vector_to_json(const RationalVector& v);
nlohmann::json czmat_to_json(const CZMat& m);
nlohmann::json czvector_to_json(const CZVector& v);
nlohmann::json matrix_to_json(const RationalMatrix& m);
nlohmann::json matrix_to_json(const Eigen::MatrixXd& m);

nlohmann::json witness_to_json(const Witness& w, const TopologicalFan& fan);
/// {"passed": bool, "axioms": [{"axiom", "passed", "detail"}], "v_determinants": [...]}
/// The witnesses are returned separately, each tagged with its axiom.
nlohmann::json validation_to_json(const ValidationReport& report, const TopologicalFan& fan,
                                  nlohmann::json& witnesses);

nlohmann::json transition_to_json(const TransitionMap& t);
nlohmann::json certificate_to_json(const std::vector<CertificateEntry>& entries);

}  // namespace topfan
