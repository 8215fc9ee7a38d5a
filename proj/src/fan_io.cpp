#include "topfan/fan_io.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "topfan/errors.hpp"

namespace topfan {

using nlohmann::json;

namespace {

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t k = 0; k + 1 < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

[[noreturn]] void structural(const std::string& message, const std::string& pointer) {
  throw ParseError(message, 0, 0, pointer);
}

const json& field(const json& doc, const char* key) {
  if (!doc.contains(key)) structural(std::string("missing field '") + key + "'", "/");
  return doc.at(key);
}

long integer_field(const json& value, const std::string& pointer, long lo, long hi) {
  if (!value.is_number_integer()) structural("expected an integer", pointer);
  const auto x = value.get<long long>();
  if (x < lo || x > hi) structural("integer out of range", pointer);
  return static_cast<long>(x);
}

Integer integer_from_json(const json& value, const std::string& pointer) {
  if (value.is_number_integer()) return Integer(value.get<long long>());
  if (value.is_string()) {
    try {
      return parse_integer(value.get<std::string>());
    } catch (const std::invalid_argument& e) {
      structural(e.what(), pointer);
    }
  }
  structural("expected an integer", pointer);
}

json integer_to_json(const Integer& z) {
  if (z >= std::numeric_limits<long long>::min() && z <= std::numeric_limits<long long>::max())
    return z.convert_to<long long>();
  return z.str();
}

}  // namespace

Rational rational_from_json(const json& value, const std::string& pointer) {
  if (value.is_number_integer()) return Rational(value.get<long long>());
  if (value.is_string()) {
    try {
      return parse_rational(value.get<std::string>());
    } catch (const std::invalid_argument& e) {
      structural(e.what(), pointer);
    }
  }
  structural("expected a rational as \"p/q\" or an integer", pointer);
}

TopologicalFan parse_fan(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte);
    throw ParseError("syntax error: " + std::string(e.what()), line, column);
  }
  if (!doc.is_object()) structural("document must be an object", "/");

  const int n = static_cast<int>(integer_field(field(doc, "n"), "/n", 1, 64));
  const int m = static_cast<int>(integer_field(field(doc, "m"), "/m", 1, 1 << 20));
  if (m < n) structural("m must be at least n", "/m");

  const json& simplices = field(doc, "simplices");
  if (!simplices.is_array() || simplices.empty()) structural("expected a nonempty array", "/simplices");
  std::vector<Simplex> maximal;
  std::set<Simplex> seen;
  for (std::size_t k = 0; k < simplices.size(); ++k) {
    const std::string ptr = "/simplices/" + std::to_string(k);
    const json& s = simplices[k];
    if (!s.is_array()) structural("expected an array of vertices", ptr);
    if (static_cast<int>(s.size()) != n)
      structural("simplex has " + std::to_string(s.size()) + " vertices, expected n = " + std::to_string(n), ptr);
    Simplex simplex;
    for (std::size_t v = 0; v < s.size(); ++v)
      simplex.push_back(static_cast<int>(integer_field(s[v], ptr + "/" + std::to_string(v), 1, m)) - 1);
    std::sort(simplex.begin(), simplex.end());
    if (std::adjacent_find(simplex.begin(), simplex.end()) != simplex.end()) structural("repeated vertex", ptr);
    if (!seen.insert(simplex).second) structural("duplicate simplex", ptr);
    maximal.push_back(std::move(simplex));
  }

  const json& beta_doc = field(doc, "beta");
  if (!beta_doc.is_array() || static_cast<int>(beta_doc.size()) != m)
    structural("beta must list m = " + std::to_string(m) + " vectors", "/beta");
  std::vector<CZVector> beta;
  for (int i = 0; i < m; ++i) {
    const std::string ptr = "/beta/" + std::to_string(i);
    const json& vec = beta_doc[static_cast<std::size_t>(i)];
    if (!vec.is_array() || static_cast<int>(vec.size()) != n)
      structural("beta vector must have n = " + std::to_string(n) + " entries", ptr);
    CZVector components;
    for (int j = 0; j < n; ++j) {
      const std::string eptr = ptr + "/" + std::to_string(j);
      const json& triple = vec[static_cast<std::size_t>(j)];
      if (!triple.is_array() || triple.size() != 3) structural("expected a triple [b, c, v]", eptr);
      components.emplace_back(rational_from_json(triple[0], eptr + "/0"), rational_from_json(triple[1], eptr + "/1"),
                              integer_from_json(triple[2], eptr + "/2"));
    }
    beta.push_back(std::move(components));
  }

  try {
    return TopologicalFan(n, SimplicialComplex(m, std::move(maximal)), std::move(beta));
  } catch (const StructuralError& e) {
    structural(e.what(), "/");
  }
}

json fan_to_json(const TopologicalFan& fan) {
  json simplices = json::array();
  for (const auto& s : fan.simplices()) {
    json one = json::array();
    for (int v : s) one.push_back(v + 1);
    simplices.push_back(std::move(one));
  }
  json beta = json::array();
  for (const auto& vec : fan.beta()) {
    json components = json::array();
    for (const auto& e : vec) components.push_back(json::array({to_string(e.b), to_string(e.c), integer_to_json(e.v)}));
    beta.push_back(std::move(components));
  }
  json doc;
  doc["n"] = fan.n();
  doc["m"] = fan.m();
  doc["simplices"] = std::move(simplices);
  doc["beta"] = std::move(beta);
  return doc;
}

namespace {

std::string join_compact(const json& array) {
  std::string out = "[";
  for (std::size_t k = 0; k < array.size(); ++k) {
    if (k) out += ", ";
    out += array[k].is_array() ? join_compact(array[k]) : array[k].dump();
  }
  return out + "]";
}

}  // namespace

// Field order n, m, simplices, beta; one simplex list and one fan vector per line.
std::string emit_fan(const TopologicalFan& fan) {
  const json doc = fan_to_json(fan);
  std::string out = "{\n  \"n\": " + doc["n"].dump() + ",\n  \"m\": " + doc["m"].dump() + ",\n";
  out += "  \"simplices\": " + join_compact(doc["simplices"]) + ",\n  \"beta\": [\n";
  const json& beta = doc["beta"];
  for (std::size_t i = 0; i < beta.size(); ++i) out += "    " + join_compact(beta[i]) + (i + 1 < beta.size() ? ",\n" : "\n");
  return out + "  ]\n}\n";
}

Simplex parse_simplex_list(std::string_view text) {
  std::string cleaned;
  for (char ch : text)
    if (ch != '{' && ch != '}' && ch != '[' && ch != ']' && ch != ' ') cleaned.push_back(ch);
  Simplex out;
  std::size_t start = 0;
  while (start <= cleaned.size()) {
    const std::size_t comma = std::min(cleaned.find(',', start), cleaned.size());
    const std::string token = cleaned.substr(start, comma - start);
    if (token.empty()) throw std::invalid_argument("empty vertex in simplex '" + std::string(text) + "'");
    const Integer v = parse_integer(token);
    if (v < 1 || v > std::numeric_limits<int>::max()) throw std::invalid_argument("vertex out of range");
    out.push_back(v.convert_to<int>() - 1);
    start = comma + 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace topfan
