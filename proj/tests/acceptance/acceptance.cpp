// Acceptance suite: one line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "topfan/acs.hpp"
#include "topfan/catalog.hpp"
#include "topfan/charts.hpp"
#include "topfan/cli.hpp"
#include "topfan/errors.hpp"
#include "topfan/fan_io.hpp"
#include "topfan/report.hpp"

using namespace topfan;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && passed) detail = what;
    passed = passed && ok;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

ChartPoint random_point(std::mt19937_64& rng, int n) {
  ChartPoint w;
  for (int i = 0; i < n; ++i) w.push_back(oracle::random_nonzero(rng));
  return w;
}

std::vector<TopologicalFan> random_fans(std::uint64_t first_seed, int count) {
  std::vector<TopologicalFan> fans;
  for (int k = 0; k < count; ++k) {
    const std::uint64_t seed = first_seed + static_cast<std::uint64_t>(k);
    const int n = 1 + k % 2;
    const int size = n == 1 ? 2 : 3 + (k / 2) % 4;
    fans.push_back(random_fan(seed, n, size));
  }
  return fans;
}

std::vector<TopologicalFan> catalog() {
  std::vector<TopologicalFan> fans;
  for (const auto& name : catalog_corpus()) fans.push_back(catalog_fan(name));
  return fans;
}

std::string fmt(const char* format, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, x);
  return buf;
}

// 1
Outcome duality_exactness() {
  Outcome o;
  const auto start = Clock::now();
  auto fans = catalog();
  for (auto& f : random_fans(1000, 100)) fans.push_back(std::move(f));
  long pairs = 0;
  for (const auto& fan : fans) {
    const Atlas atlas(fan);
    for (std::size_t s = 0; s < fan.simplices().size(); ++s) {
      const Chart& chart = atlas.chart(s);
      const auto betas = fan.betas_of(chart.simplex);
      o.require(chart.duals == oracle::duals(betas), "duals differ from the inverse of the real matrix");
      for (std::size_t h = 0; h < betas.size(); ++h)
        for (std::size_t i = 0; i < betas.size(); ++i) {
          ++pairs;
          o.require(pairing(chart.duals[h], betas[i]) == (h == i ? CZMat::identity() : CZMat::zero()),
                    "<alpha_h, beta_i> != delta");
        }
    }
  }
  const double t = seconds_since(start);
  o.require(t < 5.0, "runtime " + fmt("%.2f s", t));
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(fans.size()) + " fans, " + std::to_string(pairs) +
              " pairings exact, " + fmt("%.2f s", t);
  return o;
}

// 2
Outcome cp1_certificate() {
  Outcome o;
  const Atlas atlas(catalog_fan("cp1"));
  const auto t = transition(atlas, {0}, {1});
  o.require(t.exponents.size() == 1 && t.exponents[0].size() == 1, "transition shape");
  o.require(t.exponents[0][0] == CZMat(Rational(-1), Rational(0), Integer(-1)), "exponent is not [[-1,0],[0,-1]]");
  std::mt19937_64 rng(2);
  double worst = 0;
  for (int k = 0; k < 10; ++k) {
    const ComplexPoint w[] = {oracle::random_nonzero(rng, 0.05, 20.0)};
    worst = std::max(worst, oracle::relative_error(evaluate_transition(t, w)[0], 1.0 / w[0]));
  }
  o.require(worst < 1e-9, "w -> 1/w error " + fmt("%.3g", worst));
  o.require(is_holomorphic(t), "not holomorphic");
  if (o.passed) o.detail = "exponent [[-1,0],[0,-1]], max error " + fmt("%.2g", worst);
  return o;
}

// 3
Outcome nontoric_certificate() {
  Outcome o;
  {
    const Atlas atlas(catalog_fan("nontoric-line"));
    const auto& v = atlas.validation();
    o.require(v.all_passed() && v.result(Axiom::Completeness).passed && v.result(Axiom::NonOverlap).passed &&
                  v.result(Axiom::Nonsingularity).passed,
              "nontoric-line does not validate");
    o.require(classify(atlas) == Verdict::NonToricTopological, "nontoric-line classified Toric");
    const auto t = transition(atlas, {0}, {1});
    o.require(t.exponents[0][0] == CZMat(Rational(-1, 2), Rational(0), Integer(-1)),
              "nontoric-line exponent is not [[-1/2,0],[0,-1]]");
  }
  {
    const Atlas atlas(catalog_fan("nontoric-surface"));
    o.require(atlas.validation().all_passed(), "nontoric-surface does not validate");
    o.require(classify(atlas) == Verdict::NonToricTopological, "nontoric-surface classified Toric");
    bool twisted = false;
    for (const auto& from : atlas.fan().simplices())
      for (const auto& to : atlas.fan().simplices())
        for (const auto& row : transition(atlas, from, to).exponents)
          for (const auto& e : row) twisted = twisted || e.c != 0;
    o.require(twisted, "no transition exponent with c != 0");
  }
  if (o.passed) o.detail = "line: [[-1/2,0],[0,-1]]; surface: exponent with c != 0";
  return o;
}

// 4
Outcome jacobian_check() {
  Outcome o;
  const auto start = Clock::now();
  const auto names = catalog_corpus();
  std::mt19937_64 rng(4);
  const double h = 1e-5;
  double worst = 0;
  for (int k = 0; k < 50; ++k) {
    const Atlas atlas(catalog_fan(names[static_cast<std::size_t>(k) % names.size()]));
    const auto& simplices = atlas.fan().simplices();
    const Simplex& chart = simplices[rng() % simplices.size()];
    const int n = atlas.fan().n();
    const ChartPoint w = random_point(rng, n);
    const Eigen::MatrixXd analytic = jacobian_psi(atlas, chart, w);
    Eigen::MatrixXd fd(2 * n, 2 * n);
    for (int i = 0; i < n; ++i)
      for (int part = 0; part < 2; ++part) {
        ChartPoint plus = w, minus = w;
        const ComplexPoint step = part == 0 ? ComplexPoint(h, 0) : ComplexPoint(0, h);
        plus[i] += step;
        minus[i] -= step;
        const OrbitPoint p = psi(atlas, chart, plus), m = psi(atlas, chart, minus);
        for (int j = 0; j < n; ++j) {
          fd(2 * j, 2 * i + part) = (p.tau[j] - m.tau[j]) / (2 * h);
          fd(2 * j + 1, 2 * i + part) = std::remainder(p.theta[j] - m.theta[j], 2 * std::numbers::pi) / (2 * h);
        }
      }
    const double rel = (fd - analytic).cwiseAbs().maxCoeff() / analytic.cwiseAbs().maxCoeff();
    worst = std::max(worst, rel);
  }
  const double t = seconds_since(start);
  o.require(worst < 1e-6, "relative error " + fmt("%.3g", worst));
  o.require(t < 5.0, "runtime " + fmt("%.2f s", t));
  if (o.passed) o.detail = "50 points, max relative error " + fmt("%.2g", worst) + ", " + fmt("%.2f s", t);
  return o;
}

// 5
Outcome cocycle_suite() {
  Outcome o;
  std::mt19937_64 rng(5);
  double worst = 0;
  long checks = 0;
  for (const auto& fan : {catalog_fan("cp2"), hirzebruch(2)}) {
    const Atlas atlas(fan);
    const auto& simplices = fan.simplices();
    for (const auto& a : simplices)
      for (const auto& b : simplices) {
        const auto ab = transition(atlas, a, b), ba = transition(atlas, b, a);
        for (int k = 0; k < 20; ++k) {
          const ChartPoint w = random_point(rng, fan.n());
          const ChartPoint wb = evaluate_transition(ab, w);
          const ChartPoint back = evaluate_transition(ba, wb);
          for (std::size_t i = 0; i < w.size(); ++i) worst = std::max(worst, oracle::relative_error(back[i], w[i]));
          for (const auto& c : simplices) {
            const ChartPoint direct = evaluate_transition(transition(atlas, a, c), w);
            const ChartPoint composed = evaluate_transition(transition(atlas, b, c), wb);
            for (std::size_t i = 0; i < w.size(); ++i)
              worst = std::max(worst, oracle::relative_error(composed[i], direct[i]));
          }
          ++checks;
        }
      }
  }
  o.require(worst < 1e-9, "max error " + fmt("%.3g", worst));
  if (o.passed) o.detail = std::to_string(checks) + " points, max error " + fmt("%.2g", worst);
  return o;
}

// 6
Outcome stable_block_divergence() {
  Outcome o;
  std::mt19937_64 rng(6);
  int blowups = 0, rejected = 0;
  const int trials = 100;
  for (int k = 0; k < trials; ++k) {
    const int n = 1 + k % 3;
    const int ell = 1 + (k / 3) % 2;
    // Ordinary charts for n = 3, random topological fans otherwise.
    const TopologicalFan fan = (n == 3 || k % 2 == 0) ? projective_space(n)
                                                      : random_fan(6000 + static_cast<std::uint64_t>(k), n, n == 1 ? 2 : 5);
    const Atlas atlas(fan);
    const Simplex& chart = fan.simplices()[rng() % fan.simplices().size()];
    const auto acs = random_stably_complex(600 + static_cast<std::uint64_t>(k), n, ell);
    o.require(squares_to_minus_identity<Rational>(acs.j0), "random J0 does not square to -Id");
    const RationalMatrix j21 = acs.j0.bottomLeftCorner(2 * ell, 2 * n);
    o.require(!(j21.array() == Rational(0)).all(), "random J0 has J21 = 0");

    const auto analysis = smooth_extension_analysis(acs, chart_b_matrix<Rational>(fan, chart));
    if (analysis.verdict == Extension::NoSmoothExtension) ++rejected;
    const auto probe =
        divergence_probe(atlas, chart, OrbitACS<double>{ell, matrix_cast<double>(acs.j0)}, random_point(rng, n), 20);
    if (probe.blowup) ++blowups;
  }
  o.require(blowups == trials, std::to_string(blowups) + "/" + std::to_string(trials) + " probes found slope -1");
  o.require(rejected == trials, std::to_string(rejected) + "/" + std::to_string(trials) + " rejected");
  if (o.passed) o.detail = "100/100 slope in [-1.1,-0.9], 100/100 NoSmoothExtension";
  return o;
}

// 7
Outcome acs_toric_equivalence() {
  Outcome o;
  const auto start = Clock::now();
  auto fans = catalog();
  for (auto& f : random_fans(7000, 200)) fans.push_back(std::move(f));
  int toric = 0, discrepancies = 0;
  for (const auto& fan : fans) {
    const Atlas atlas(fan);
    o.require(atlas.validation().all_passed(), "fan failed validation");
    const bool is_toric = classify(atlas) == Verdict::Toric;
    const bool has_acs = invariant_acs(atlas).has_value();
    toric += is_toric ? 1 : 0;
    if (is_toric != has_acs) ++discrepancies;
  }
  const double t = seconds_since(start);
  o.require(discrepancies == 0, std::to_string(discrepancies) + " discrepancies");
  o.require(t < 30.0, "runtime " + fmt("%.2f s", t));
  if (o.passed)
    o.detail = std::to_string(fans.size()) + " fans (" + std::to_string(toric) + " toric, " +
               std::to_string(fans.size() - static_cast<std::size_t>(toric)) + " non-toric), 0 discrepancies, " +
               fmt("%.2f s", t);
  return o;
}

// 8
Outcome character_adjunction() {
  Outcome o;
  std::mt19937_64 rng(8);
  double worst = 0;
  for (int k = 0; k < 100; ++k) {
    const int n = 1 + k % 3;
    CZVector alpha, beta;
    for (int j = 0; j < n; ++j) {
      alpha.push_back(oracle::random_czmat(rng));
      beta.push_back(oracle::random_czmat(rng));
    }
    const ComplexPoint h = oracle::random_nonzero(rng, 0.5, 1.5);
    const auto g = lambda_beta(beta, h);
    const ComplexPoint lhs = chi_alpha(alpha, g);
    const ComplexPoint rhs = oracle::power(h, oracle::pairing(alpha, beta));
    worst = std::max(worst, oracle::relative_error(lhs, rhs));
  }
  o.require(worst < 1e-9, "random triples: error " + fmt("%.3g", worst));

  double special = 0;
  int cases = 0;
  const ComplexPoint i(0.0, 1.0);
  for (const auto& fan : catalog()) {
    const Atlas atlas(fan);
    for (std::size_t s = 0; s < fan.simplices().size(); ++s) {
      const Chart& chart = atlas.chart(s);
      for (std::size_t h = 0; h < chart.simplex.size(); ++h) {
        const ComplexPoint value = chi_alpha(chart.duals[h], lambda_beta(fan.beta(chart.simplex[h]), i));
        special = std::max(special, std::abs(value - i));
        ++cases;
      }
    }
  }
  o.require(special < 1e-12, "special value error " + fmt("%.3g", special));
  if (o.passed)
    o.detail = "100 triples, max error " + fmt("%.2g", worst) + "; sqrt(-1) fixed in " + std::to_string(cases) +
               " cases, error " + fmt("%.2g", special);
  return o;
}

template <typename T>
const T* find_witness(const AxiomResult& r) {
  for (const auto& w : r.witnesses)
    if (const auto* p = std::get_if<T>(&w)) return p;
  return nullptr;
}

// 9
Outcome validation_soundness() {
  Outcome o;
  const auto cp2 = catalog_fan("cp2");
  for (std::size_t drop = 0; drop < cp2.simplices().size(); ++drop) {
    auto simplices = cp2.simplices();
    simplices.erase(simplices.begin() + static_cast<std::ptrdiff_t>(drop));
    const TopologicalFan fan(2, SimplicialComplex(3, simplices), cp2.beta());
    const auto report = validate(fan);
    const auto& completeness = report.result(Axiom::Completeness);
    o.require(!completeness.passed, "completeness passed after deleting a cone");
    const auto* w = find_witness<UncoveredDirection>(completeness);
    o.require(w != nullptr, "no uncovered-direction witness");
    if (!w) continue;
    for (const auto& s : fan.simplices())
      o.require(!oracle::in_closed_cone(cone_generators(fan, s), w->direction), "witness direction is covered");
  }

  // Vertex 4 repeats vertex 1, so cone {4,2} repeats cone {1,2}.
  auto beta = cp2.beta();
  beta.push_back(beta[0]);
  const TopologicalFan dup(2, SimplicialComplex(4, {{0, 1}, {0, 2}, {1, 2}, {3, 1}}), beta);
  const ValidationReport dup_report = validate(dup);
  const auto& overlap = dup_report.result(Axiom::NonOverlap);
  o.require(!overlap.passed, "non-overlap passed with a duplicated cone");
  const auto* w = find_witness<OverlapWitness>(overlap);
  o.require(w != nullptr, "no common interior point");
  if (w) {
    o.require(oracle::in_open_cone(cone_generators(dup, dup.simplices()[w->first]), w->point) &&
                  oracle::in_open_cone(cone_generators(dup, dup.simplices()[w->second]), w->point),
              "witness point is not interior to both cones");
  }
  if (o.passed) o.detail = "3/3 deletions caught with uncovered directions; overlap point verified";
  return o;
}

struct CliRun {
  int code;
  std::string out;
};

CliRun cli_run(std::vector<std::string> args) {
  args.insert(args.begin(), "topfan");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str()};
}

// 10
Outcome cli_contract() {
  Outcome o;
  const auto dir = std::filesystem::temp_directory_path() / "topfan_acceptance";
  std::filesystem::create_directories(dir);

  int reports = 0;
  for (const auto& name : catalog_corpus()) {
    const auto fan = catalog_fan(name);
    const std::string text = emit_fan(fan);
    const auto back = parse_fan(text);
    o.require(back == fan && emit_fan(back) == text, "round trip differs for " + name);

    const auto path = (dir / (name + ".json")).string();
    o.require(cli_run({"examples", "--emit", name, "--output", path}).code == cli::kExitOk, "emit failed");
    std::ifstream in(path);
    std::stringstream file;
    file << in.rdbuf();
    o.require(file.str() == text, "emitted file differs for " + name);

    for (const char* command : {"validate", "classify", "acs", "report"}) {
      const auto r = cli_run({command, "--fan", path, "--format", "json"});
      o.require(r.code == cli::kExitOk, std::string(command) + " exit " + std::to_string(r.code) + " on " + name);
      try {
        const Report report = parse_report(r.out);
        o.require(render_report(report) == r.out && report_to_json(report) == nlohmann::json::parse(r.out),
                  "report not lossless");
        ++reports;
      } catch (const std::exception& e) {
        o.require(false, std::string("report does not parse: ") + e.what());
      }
    }
  }

  // Exit codes.
  const auto bad_syntax = (dir / "bad.json").string();
  std::ofstream(bad_syntax) << "{\"n\": 1, \"m\": 2,, }";
  const auto overlap = (dir / "overlap.json").string();
  {
    auto beta = catalog_fan("cp2").beta();
    beta.push_back(beta[0]);
    std::ofstream(overlap) << emit_fan(TopologicalFan(2, SimplicialComplex(4, {{0, 1}, {0, 2}, {1, 2}, {3, 1}}), beta));
  }
  const std::vector<std::pair<std::vector<std::string>, int>> cases{
      {{"validate", "--fan", "catalog:cp2"}, cli::kExitOk},
      {{"classify", "--fan", "catalog:nontoric-line"}, cli::kExitOk},
      {{"validate", "--fan", overlap}, cli::kExitDomain},
      {{"classify", "--fan", overlap}, cli::kExitDomain},
      {{"eval", "--fan", "catalog:cp1", "--simplex", "1", "--point", "0,0", "--transition", "2"}, cli::kExitDomain},
      {{"validate", "--fan", bad_syntax}, cli::kExitParse},
      {{"validate", "--fan", (dir / "missing.json").string()}, cli::kExitParse},
      {{"validate", "--fan", "catalog:nope"}, cli::kExitParse},
      {{"transition", "--fan", "catalog:cp2"}, cli::kExitParse},
  };
  for (const auto& [args, expected] : cases) {
    const int code = cli_run(args).code;
    o.require(code == expected, args[0] + " " + args.back() + ": exit " + std::to_string(code) + ", expected " +
                                    std::to_string(expected));
  }
  std::filesystem::remove_all(dir);
  if (o.passed)
    o.detail = std::to_string(catalog_corpus().size()) + " fans round-trip, " + std::to_string(reports) +
               " reports lossless, " + std::to_string(cases.size()) + " exit codes";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"duality_exactness", duality_exactness},     {"cp1_certificate", cp1_certificate},
      {"nontoric_certificate", nontoric_certificate}, {"jacobian_check", jacobian_check},
      {"cocycle_suite", cocycle_suite},             {"stable_block_divergence", stable_block_divergence},
      {"acs_toric_equivalence", acs_toric_equivalence}, {"character_adjunction", character_adjunction},
      {"validation_soundness", validation_soundness}, {"cli_contract", cli_contract},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %d %s: %s\n", o.passed ? "PASS" : "FAIL", index, name, o.detail.c_str());
    std::fflush(stdout);
    failed += o.passed ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
