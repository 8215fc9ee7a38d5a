#include "topfan/report.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>

#include "topfan/errors.hpp"

namespace topfan {

using nlohmann::json;

json report_to_json(const Report& report) {
  return json{{"command", report.command},
              {"inputs_digest", report.inputs_digest},
              {"results", report.results},
              {"witnesses", report.witnesses}};
}

Report report_from_json(const json& doc) {
  auto need = [&](const char* key) -> const json& {
    if (!doc.is_object() || !doc.contains(key)) throw ParseError(std::string("report missing '") + key + "'", 0, 0);
    return doc.at(key);
  };
  Report r;
  const json& command = need("command");
  const json& digest = need("inputs_digest");
  if (!command.is_string() || !digest.is_string()) throw ParseError("report header fields must be strings", 0, 0);
  r.command = command.get<std::string>();
  r.inputs_digest = digest.get<std::string>();
  r.results = need("results");
  r.witnesses = need("witnesses");
  return r;
}

std::string render_report(const Report& report) { return report_to_json(report).dump(2) + "\n"; }

Report parse_report(std::string_view text) {
  try {
    return report_from_json(json::parse(text.begin(), text.end()));
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("report syntax error: ") + e.what(), 0, 0);
  }
}

std::string input_digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json simplex_to_json(const Simplex& s) {
  json out = json::array();
  for (int v : s) out.push_back(v + 1);
  return out;
}

json vector_to_json(const RationalVector& v) {
  json out = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(to_string(v(k)));
  return out;
}

json czmat_to_json(const CZMat& m) { return json{{"b", to_string(m.b)}, {"c", to_string(m.c)}, {"v", to_string(m.v)}}; }

json czvector_to_json(const CZVector& v) {
  json out = json::array();
  for (const auto& e : v) out.push_back(czmat_to_json(e));
  return out;
}

json matrix_to_json(const RationalMatrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (std::isfinite(m(r, c))) {
        row.push_back(m(r, c));
      } else {
        row.push_back(nullptr);
      }
    }
    out.push_back(std::move(row));
  }
  return out;
}

json witness_to_json(const Witness& w, const TopologicalFan& fan) {
  const auto& simplices = fan.simplices();
  return std::visit(
      [&](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, OverlapWitness>) {
          return {{"kind", "common_interior_point"},
                  {"cones", json::array({simplex_to_json(simplices[x.first]), simplex_to_json(simplices[x.second])})},
                  {"point", vector_to_json(x.point)}};
        } else if constexpr (std::is_same_v<T, UncoveredDirection>) {
          return {{"kind", "uncovered_direction"}, {"direction", vector_to_json(x.direction)}};
        } else if constexpr (std::is_same_v<T, DegreeWitness>) {
          return {{"kind", "degree"}, {"point", vector_to_json(x.point)}, {"cones", x.cones}};
        } else if constexpr (std::is_same_v<T, WallWitness>) {
          json cofaces = json::array();
          for (auto idx : x.cofaces) cofaces.push_back(simplex_to_json(simplices[idx]));
          return {{"kind", "wall"}, {"wall", simplex_to_json(x.wall)}, {"cones", cofaces}, {"reason", x.reason}};
        } else if constexpr (std::is_same_v<T, DeterminantWitness>) {
          return {{"kind", "determinant"}, {"simplex", simplex_to_json(simplices[x.simplex])}, {"det", to_string(x.det)}};
        } else if constexpr (std::is_same_v<T, DependentGenerators>) {
          return {{"kind", "dependent_generators"}, {"simplex", simplex_to_json(simplices[x.simplex])}};
        } else if constexpr (std::is_same_v<T, DuplicateSimplex>) {
          return {{"kind", "duplicate_simplex"}, {"simplex", simplex_to_json(simplices[x.first])}};
        } else if constexpr (std::is_same_v<T, UnusedVertex>) {
          return {{"kind", "unused_vertex"}, {"vertex", x.vertex + 1}};
        } else {
          return {{"kind", "disconnected"}, {"unreachable", simplex_to_json(simplices[x.unreachable])}};
        }
      },
      w);
}

json validation_to_json(const ValidationReport& report, const TopologicalFan& fan, json& witnesses) {
  json axioms = json::array();
  for (const auto& r : report.axioms) {
    axioms.push_back({{"axiom", axiom_name(r.axiom)}, {"passed", r.passed}, {"detail", r.detail}});
    for (const auto& w : r.witnesses) {
      json entry = witness_to_json(w, fan);
      entry["axiom"] = axiom_name(r.axiom);
      witnesses.push_back(std::move(entry));
    }
  }
  json dets = json::array();
  for (const auto& d : report.v_determinants) dets.push_back(to_string(d));
  return {{"passed", report.all_passed()},
          {"seed", report.seed},
          {"axioms", std::move(axioms)},
          {"v_determinants", std::move(dets)}};
}

json transition_to_json(const TransitionMap& t) {
  json rows = json::array();
  for (const auto& row : t.exponents) {
    json r = json::array();
    for (const auto& e : row) r.push_back(czmat_to_json(e));
    rows.push_back(std::move(r));
  }
  return {{"from", simplex_to_json(t.from)},
          {"to", simplex_to_json(t.to)},
          {"exponents", std::move(rows)},
          {"holomorphic", is_holomorphic(t)}};
}

json certificate_to_json(const std::vector<CertificateEntry>& entries) {
  json out = json::array();
  for (const auto& e : entries)
    out.push_back({{"chart", simplex_to_json(e.chart)},
                   {"k", e.k + 1},
                   {"j", e.j + 1},
                   {"exponent", czmat_to_json(e.exponent)},
                   {"scalar_integer", e.scalar_integer}});
  return out;
}

}  // namespace topfan
