#include "topfan/cli.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "topfan/acs.hpp"
#include "topfan/catalog.hpp"
#include "topfan/charts.hpp"
#include "topfan/errors.hpp"
#include "topfan/fan_io.hpp"
#include "topfan/report.hpp"

namespace topfan::cli {

using nlohmann::json;

namespace {

class IoError : public Error {
 public:
  using Error::Error;
};

struct LoadedFan {
  TopologicalFan fan;
  std::string digest;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// FILE, or catalog:NAME for a built-in example.
LoadedFan load_fan(const std::string& source) {
  constexpr std::string_view prefix = "catalog:";
  if (source.rfind(prefix, 0) == 0) {
    TopologicalFan fan = catalog_fan(source.substr(prefix.size()));
    std::string text = emit_fan(fan);
    return {std::move(fan), input_digest(text)};
  }
  const std::string text = read_file(source);
  return {parse_fan(text), input_digest(text)};
}

ChartPoint parse_point(const std::string& text) {
  std::vector<double> values;
  const char* p = text.data();
  const char* end = text.data() + text.size();
  while (p < end) {
    while (p < end && (*p == ' ' || *p == '(' || *p == ')')) ++p;
    double x = 0;
    const auto [next, ec] = std::from_chars(p, end, x);
    if (ec != std::errc()) throw std::invalid_argument("bad number in point '" + text + "'");
    values.push_back(x);
    p = next;
    while (p < end && (*p == ' ' || *p == ')')) ++p;
    if (p < end && *p != ',') throw std::invalid_argument("expected ',' in point '" + text + "'");
    if (p < end) ++p;
  }
  if (values.empty() || values.size() % 2 != 0)
    throw std::invalid_argument("point needs an even number of coordinates x1,y1,...");
  ChartPoint w;
  for (std::size_t k = 0; k < values.size(); k += 2) w.emplace_back(values[k], values[k + 1]);
  return w;
}

json complex_list(const ChartPoint& w) {
  json out = json::array();
  for (const auto& z : w) out.push_back(json::array({z.real(), z.imag()}));
  return out;
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

std::string fmt(const ChartPoint& w) {
  std::string out;
  for (std::size_t k = 0; k < w.size(); ++k)
    out += (k ? ", " : "") + fmt(w[k].real()) + (w[k].imag() < 0 ? " - " : " + ") + fmt(std::abs(w[k].imag())) + "i";
  return out;
}

std::string fmt_simplex(const Simplex& s) {
  std::string out = "{";
  for (std::size_t k = 0; k < s.size(); ++k) out += (k ? "," : "") + std::to_string(s[k] + 1);
  return out + "}";
}

std::string fmt_matrix(const RationalMatrix& m, const std::string& indent) {
  std::string out;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    out += indent + "[";
    for (Eigen::Index c = 0; c < m.cols(); ++c) out += (c ? ", " : "") + to_string(m(r, c));
    out += "]\n";
  }
  return out;
}

std::string fmt_matrix(const Eigen::MatrixXd& m, const std::string& indent) {
  std::string out;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    out += indent + "[";
    for (Eigen::Index c = 0; c < m.cols(); ++c) out += (c ? ", " : "") + fmt(m(r, c));
    out += "]\n";
  }
  return out;
}

std::string fmt_czmat(const CZMat& m) {
  return "[[" + to_string(m.b) + ",0],[" + to_string(m.c) + "," + to_string(m.v) + "]]";
}

struct Output {
  bool json_format = false;
  std::ostream& out;

  void emit(const Report& report, const std::string& text) const {
    if (json_format) {
      out << render_report(report);
    } else {
      out << text;
    }
  }
};

std::string validation_text(const ValidationReport& v, const TopologicalFan& fan) {
  std::ostringstream os;
  os << "fan: n=" << fan.n() << " m=" << fan.m() << " maximal simplices=" << fan.simplices().size() << "\n";
  for (const auto& r : v.axioms) {
    os << "  " << std::left << std::setw(22) << axiom_name(r.axiom) << (r.passed ? "pass" : "FAIL") << "\n";
    if (!r.detail.empty()) os << "      " << r.detail << "\n";
    for (const auto& w : r.witnesses) os << "      witness " << witness_to_json(w, fan).dump() << "\n";
  }
  os << "  orientation signs:";
  for (const auto& d : v.v_determinants) os << (d > 0 ? " +" : (d < 0 ? " -" : " 0"));
  os << "\n";
  return os.str();
}

int cmd_validate(const LoadedFan& in, std::uint64_t seed, const Output& output) {
  const ValidationReport v = validate(in.fan, seed);
  Report report{"validate", in.digest};
  report.results["validation"] = validation_to_json(v, in.fan, report.witnesses);
  output.emit(report, validation_text(v, in.fan) + (v.all_passed() ? "valid\n" : "invalid\n"));
  return v.all_passed() ? kExitOk : kExitDomain;
}

// Reports the failing axioms and returns kExitDomain when the fan is invalid.
std::optional<int> reject_invalid(const Atlas& atlas, const LoadedFan& in, const std::string& command,
                                  const Output& output) {
  if (atlas.validation().all_passed()) return std::nullopt;
  Report report{command, in.digest};
  report.results["validation"] = validation_to_json(atlas.validation(), in.fan, report.witnesses);
  report.results["error"] = "invalid fan";
  output.emit(report, validation_text(atlas.validation(), in.fan) + "error: invalid fan\n");
  return kExitDomain;
}

int cmd_classify(const LoadedFan& in, bool certificate, const Output& output) {
  const Atlas atlas(in.fan);
  if (auto code = reject_invalid(atlas, in, "classify", output)) return *code;
  const Verdict verdict = classify(atlas);
  Report report{"classify", in.digest};
  report.results["verdict"] = verdict_name(verdict);
  report.results["ordinary"] = is_ordinary(in.fan);
  std::ostringstream os;
  os << verdict_name(verdict) << "\n";
  if (certificate) {
    const auto entries = exponent_certificate(atlas);
    report.results["certificate"] = certificate_to_json(entries);
    for (const auto& e : entries)
      os << "  chart " << fmt_simplex(e.chart) << "  <alpha_" << e.k + 1 << ", beta_" << e.j + 1
         << "> = " << fmt_czmat(e.exponent) << (e.scalar_integer ? "  scalar-integer" : "  NOT scalar-integer")
         << "\n";
  }
  output.emit(report, os.str());
  return kExitOk;
}

int cmd_dual(const LoadedFan& in, const std::string& simplex_text, const Output& output) {
  const Atlas atlas(in.fan);
  const Chart& chart = atlas.chart(parse_simplex_list(simplex_text));
  Report report{"dual", in.digest};
  json duals = json::array();
  std::ostringstream os;
  os << "dual basis of chart " << fmt_simplex(chart.simplex) << "\n";
  for (std::size_t h = 0; h < chart.duals.size(); ++h) {
    duals.push_back({{"k", chart.simplex[h] + 1}, {"alpha", czvector_to_json(chart.duals[h])}});
    os << "  alpha_" << chart.simplex[h] + 1 << " =";
    for (const auto& e : chart.duals[h]) os << " " << fmt_czmat(e);
    os << "\n";
  }
  report.results["simplex"] = simplex_to_json(chart.simplex);
  report.results["duals"] = std::move(duals);
  output.emit(report, os.str());
  return kExitOk;
}

std::string transition_text(const TransitionMap& t) {
  std::ostringstream os;
  os << "transition " << fmt_simplex(t.from) << " -> " << fmt_simplex(t.to)
     << (is_holomorphic(t) ? "  (holomorphic)" : "  (not holomorphic)") << "\n";
  for (std::size_t k = 0; k < t.exponents.size(); ++k) {
    os << "  w'_" << t.to[k] + 1 << " =";
    for (std::size_t i = 0; i < t.exponents[k].size(); ++i)
      os << " w_" << t.from[i] + 1 << "^" << fmt_czmat(t.exponents[k][i]);
    os << "\n";
  }
  return os.str();
}

int cmd_transition(const LoadedFan& in, const std::string& from, const std::string& to,
                   const std::optional<std::string>& point, const Output& output) {
  const Atlas atlas(in.fan);
  const TransitionMap t = transition(atlas, parse_simplex_list(from), parse_simplex_list(to));
  Report report{"transition", in.digest};
  report.results["transition"] = transition_to_json(t);
  std::string text = transition_text(t);
  if (point) {
    const ChartPoint image = evaluate_transition(t, parse_point(*point));
    report.results["image"] = complex_list(image);
    text += "  image: " + fmt(image) + "\n";
  }
  output.emit(report, text);
  return kExitOk;
}

int cmd_acs(const LoadedFan& in, const Output& output) {
  const Atlas atlas(in.fan);
  if (auto code = reject_invalid(atlas, in, "acs", output)) return *code;
  Report report{"acs", in.digest};
  std::ostringstream os;
  const auto acs = invariant_acs(atlas);
  report.results["exists"] = acs.has_value();
  if (acs) {
    report.results["J0"] = matrix_to_json(acs->j0);
    os << "invariant almost complex structure J0 =\n" << fmt_matrix(acs->j0, "  ");
  } else {
    const auto candidates = acs_candidates(atlas);
    std::size_t other = 1;
    while (other < candidates.size() && exactly_equal<Rational>(candidates[other], candidates.front())) ++other;
    report.results["J0"] = nullptr;
    json pair = json::array();
    for (std::size_t idx : {std::size_t{0}, other}) {
      pair.push_back({{"chart", simplex_to_json(in.fan.simplices()[idx])}, {"J0", matrix_to_json(candidates[idx])}});
      os << "chart " << fmt_simplex(in.fan.simplices()[idx]) << " requires J0 =\n" << fmt_matrix(candidates[idx], "  ");
    }
    report.witnesses.push_back({{"kind", "disagreeing_charts"}, {"charts", std::move(pair)}});
    os << "no invariant almost complex structure: the charts disagree\n";
  }
  const CrossCheckReport check = theorem_cross_check(atlas);
  report.results["classification"] = verdict_name(check.verdict);
  report.results["cross_check"] = {{"equivalence_holds", check.equivalence_holds},
                                   {"stabilized_smooth", check.stabilized_smooth ? json(*check.stabilized_smooth) : json()},
                                   {"adversarial_trials", check.adversarial_trials},
                                   {"adversarial_flagged", check.adversarial_flagged},
                                   {"passed", check.passed()}};
  os << "classification: " << verdict_name(check.verdict) << "\n"
     << "equivalence (ACS exists <=> Toric): " << (check.equivalence_holds ? "pass" : "FAIL") << "\n"
     << "stabilized structures forced to J21 = 0: " << check.adversarial_flagged << "/" << check.adversarial_trials
     << " sheared structures rejected\n";
  output.emit(report, os.str());
  return check.passed() ? kExitOk : kExitDomain;
}

struct JFieldInput {
  Eigen::MatrixXd numeric;
  std::optional<RationalMatrix> exact;
};

JFieldInput read_j0(const std::string& path) {
  const std::string text = read_file(path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("J0 file: ") + e.what(), 0, 0);
  }
  if (doc.is_object() && doc.contains("J0")) doc = doc.at("J0");
  if (!doc.is_array() || doc.empty()) throw ParseError("J0 file must hold a square matrix", 0, 0, "/");
  const auto size = static_cast<Eigen::Index>(doc.size());
  JFieldInput in{Eigen::MatrixXd(size, size), RationalMatrix(size, size)};
  for (Eigen::Index r = 0; r < size; ++r) {
    const json& row = doc[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != size)
      throw ParseError("J0 must be square", 0, 0, "/" + std::to_string(r));
    for (Eigen::Index c = 0; c < size; ++c) {
      const json& x = row[static_cast<std::size_t>(c)];
      const std::string ptr = "/" + std::to_string(r) + "/" + std::to_string(c);
      if (x.is_number_float()) {
        in.numeric(r, c) = x.get<double>();
        in.exact.reset();
      } else {
        const Rational q = rational_from_json(x, ptr);
        in.numeric(r, c) = scalar_cast<double>(q);
        if (in.exact) (*in.exact)(r, c) = q;
      }
    }
  }
  return in;
}

template <typename Scalar>
json analysis_to_json(const BlockAnalysis<Scalar>& a) {
  json offending = json::array();
  for (const auto& e : a.j21_offending) {
    json value;
    if constexpr (std::is_same_v<Scalar, Rational>) {
      value = to_string(e.value);
    } else {
      value = e.value;
    }
    offending.push_back({{"row", e.row + 1}, {"col", e.col + 1}, {"value", value}});
  }
  return {{"j21_forced_zero", a.j21_forced_zero},
          {"j21_offending", std::move(offending)},
          {"top_left_commutant", a.top_left_commutant},
          {"forced_form", a.forced_form ? json(*a.forced_form) : json()},
          {"verdict", extension_name(a.verdict)}};
}

struct EvalOptions {
  std::string simplex;
  std::string point;
  std::optional<std::string> transition_to;
  bool jacobian = false;
  std::vector<std::string> jfield;
  int steps = 20;
};

int cmd_eval(const LoadedFan& in, const EvalOptions& opt, const Output& output) {
  const Atlas atlas(in.fan);
  const Simplex chart = parse_simplex_list(opt.simplex);
  const ChartPoint w = parse_point(opt.point);
  Report report{"eval", in.digest};
  std::ostringstream os;

  const OrbitPoint orbit = psi(atlas, chart, w);
  report.results["psi"] = {{"tau", orbit.tau}, {"theta", orbit.theta}};
  os << "Psi_" << fmt_simplex(chart) << "(" << fmt(w) << ")\n";
  for (std::size_t j = 0; j < orbit.tau.size(); ++j)
    os << "  tau_" << j + 1 << " = " << fmt(orbit.tau[j]) << "  theta_" << j + 1 << " = " << fmt(orbit.theta[j])
       << "\n";

  if (opt.transition_to) {
    const TransitionMap t = transition(atlas, chart, parse_simplex_list(*opt.transition_to));
    const ChartPoint image = evaluate_transition(t, w);
    report.results["transition"] = transition_to_json(t);
    report.results["transition"]["image"] = complex_list(image);
    os << transition_text(t) << "  image: " << fmt(image) << "\n";
  }
  if (opt.jacobian) {
    const Eigen::MatrixXd jac = jacobian_psi(atlas, chart, w);
    report.results["jacobian"] = matrix_to_json(jac);
    os << "jacobian B T =\n" << fmt_matrix(jac, "  ");
  }
  if (!opt.jfield.empty()) {
    if (opt.jfield.size() != 2) throw std::invalid_argument("--jfield takes ELL and J0FILE");
    const int ell = static_cast<int>(parse_integer(opt.jfield[0]).convert_to<long>());
    if (ell < 0) throw std::invalid_argument("ELL must be nonnegative");
    const JFieldInput j0 = read_j0(opt.jfield[1]);
    const OrbitACS<double> acs{ell, j0.numeric};
    const Eigen::MatrixXd value = j_field(atlas, chart, acs, w);
    const RationalMatrix b = chart_b_matrix<Rational>(in.fan, in.fan.simplices()[in.fan.require_maximal(chart)]);
    json analysis = j0.exact ? analysis_to_json(smooth_extension_analysis(OrbitACS<Rational>{ell, *j0.exact}, b))
                             : analysis_to_json(smooth_extension_analysis(acs, matrix_cast<double>(b)));
    const DivergenceReport probe = divergence_probe(atlas, chart, acs, w, opt.steps);
    report.results["jfield"] = {{"ell", ell},
                                {"value", matrix_to_json(value)},
                                {"analysis", analysis},
                                {"probe",
                                 {{"steps", opt.steps},
                                  {"slopes", matrix_to_json(probe.slopes)},
                                  {"variation", probe.variation},
                                  {"constant", probe.constant},
                                  {"blowup", probe.blowup}}}};
    os << "J_I =\n"
       << fmt_matrix(value, "  ") << "smooth extension: " << analysis["verdict"].get<std::string>() << "\n"
       << "divergence probe (" << opt.steps << " steps): " << (probe.blowup ? "blow-up detected" : "no 1/t blow-up")
       << ", variation " << fmt(probe.variation) << (probe.constant ? " (constant)" : "") << "\n"
       << "log-log slopes =\n"
       << fmt_matrix(probe.slopes, "  ");
  }
  output.emit(report, os.str());
  return kExitOk;
}

int cmd_examples(bool list, const std::optional<std::string>& emit, const std::optional<std::string>& path,
                 const Output& output) {
  if (list || !emit) {
    Report report{"examples", input_digest("")};
    report.results["names"] = catalog_names();
    std::string text;
    for (const auto& name : catalog_names()) text += name + "\n";
    output.emit(report, text);
    return kExitOk;
  }
  const std::string doc = emit_fan(catalog_fan(*emit));
  if (path) {
    std::ofstream file(*path, std::ios::binary);
    if (!file || !(file << doc)) throw IoError("cannot write '" + *path + "'");
  } else {
    output.out << doc;
  }
  return kExitOk;
}

int cmd_report(const LoadedFan& in, std::uint64_t seed, const Output& output) {
  const Atlas atlas(in.fan, seed);
  Report report{"report", in.digest};
  report.results["fan"] = fan_to_json(in.fan);
  report.results["validation"] = validation_to_json(atlas.validation(), in.fan, report.witnesses);
  report.results["ordinary"] = is_ordinary(in.fan);
  std::string text = validation_text(atlas.validation(), in.fan);
  if (!atlas.validation().all_passed()) {
    output.emit(report, text + "invalid\n");
    return kExitDomain;
  }
  const Verdict verdict = classify(atlas);
  report.results["verdict"] = verdict_name(verdict);
  report.results["certificate"] = certificate_to_json(exponent_certificate(atlas));
  const auto acs = invariant_acs(atlas);
  report.results["J0"] = acs ? matrix_to_json(acs->j0) : json();
  const CrossCheckReport check = theorem_cross_check(atlas);
  report.results["cross_check_passed"] = check.passed();
  text += std::string("verdict: ") + verdict_name(verdict) + "\n";
  text += std::string("invariant almost complex structure: ") + (acs ? "exists" : "none") + "\n";
  text += std::string("cross check: ") + (check.passed() ? "pass" : "FAIL") + "\n";
  output.emit(report, text);
  return check.passed() ? kExitOk : kExitDomain;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Topological fans, transition maps and invariant complex structures", "topfan"};
  app.require_subcommand(1);
  std::string format = "text";
  std::string fan_path;
  std::uint64_t seed = kDefaultValidationSeed;

  auto add_common = [&](CLI::App* sub, bool needs_fan) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
    if (needs_fan) sub->add_option("--fan", fan_path, "Fan document, or catalog:NAME")->required();
  };

  auto* validate_cmd = app.add_subcommand("validate", "Check the fan axioms");
  add_common(validate_cmd, true);
  validate_cmd->add_option("--seed", seed, "Seed for the completeness degree sampling");

  bool certificate = false;
  auto* classify_cmd = app.add_subcommand("classify", "Decide whether the fan is toric");
  add_common(classify_cmd, true);
  classify_cmd->add_flag("--certificate", certificate, "Print every exponent <alpha_k^K, beta_j>");

  std::string simplex;
  auto* dual_cmd = app.add_subcommand("dual", "Dual basis of a chart");
  add_common(dual_cmd, true);
  dual_cmd->add_option("--simplex", simplex, "Maximal simplex, e.g. 1,2")->required();

  std::string from, to;
  std::optional<std::string> point;
  auto* transition_cmd = app.add_subcommand("transition", "Transition map between two charts");
  add_common(transition_cmd, true);
  transition_cmd->add_option("--from", from, "Source simplex")->required();
  transition_cmd->add_option("--to", to, "Target simplex")->required();
  transition_cmd->add_option("--point", point, "Evaluate at x1,y1,...");

  auto* acs_cmd = app.add_subcommand("acs", "Invariant almost complex structure");
  add_common(acs_cmd, true);

  EvalOptions eval;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate Psi_I, transitions, B T and J_I at a point");
  add_common(eval_cmd, true);
  eval_cmd->add_option("--simplex", eval.simplex, "Chart simplex")->required();
  eval_cmd->add_option("--point", eval.point, "x1,y1,x2,y2,...")->required();
  eval_cmd->add_option("--transition", eval.transition_to, "Target simplex of a transition");
  eval_cmd->add_flag("--jacobian", eval.jacobian, "Print the Jacobian B T");
  eval_cmd->add_option("--jfield", eval.jfield, "ELL J0FILE")->expected(2);
  eval_cmd->add_option("--steps", eval.steps, "Divergence probe steps")->check(CLI::Range(2, 60));

  bool list = false;
  std::optional<std::string> emit_name, output_path;
  auto* examples_cmd = app.add_subcommand("examples", "List or emit catalog fans");
  add_common(examples_cmd, false);
  examples_cmd->add_flag("--list", list, "List catalog names");
  examples_cmd->add_option("--emit", emit_name, "Emit a catalog fan document");
  examples_cmd->add_option("--output", output_path, "Write the emitted document to a file");

  auto* report_cmd = app.add_subcommand("report", "Validation, classification and ACS in one report");
  add_common(report_cmd, true);
  report_cmd->add_option("--seed", seed, "Seed for the completeness degree sampling");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitParse;
  }

  const Output output{format == "json", out};
  try {
    if (examples_cmd->parsed()) return cmd_examples(list, emit_name, output_path, output);
    const LoadedFan in = load_fan(fan_path);
    if (validate_cmd->parsed()) return cmd_validate(in, seed, output);
    if (classify_cmd->parsed()) return cmd_classify(in, certificate, output);
    if (dual_cmd->parsed()) return cmd_dual(in, simplex, output);
    if (transition_cmd->parsed()) return cmd_transition(in, from, to, point, output);
    if (acs_cmd->parsed()) return cmd_acs(in, output);
    if (eval_cmd->parsed()) return cmd_eval(in, eval, output);
    if (report_cmd->parsed()) return cmd_report(in, seed, output);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const UnknownCatalogEntry& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitParse;
}

}  // namespace topfan::cli
