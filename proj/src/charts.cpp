#include "topfan/charts.hpp"

#include <cmath>
#include <mutex>
#include <optional>
#include <stdexcept>

#include "topfan/errors.hpp"

namespace topfan {

const char* verdict_name(Verdict v) {
  return v == Verdict::Toric ? "Toric" : "NonToricTopological";
}

struct Atlas::Memo {
  explicit Memo(std::size_t charts) : chart_once(charts), charts(charts) {}
  std::vector<std::once_flag> chart_once;
  std::vector<std::optional<Chart>> charts;
  std::once_flag validation_once;
  std::optional<ValidationReport> validation;
};

Atlas::Atlas(TopologicalFan fan, std::uint64_t validation_seed)
    : fan_(std::move(fan)), seed_(validation_seed), memo_(std::make_unique<Memo>(fan_.simplices().size())) {}

Atlas::~Atlas() = default;
Atlas::Atlas(Atlas&&) noexcept = default;
Atlas& Atlas::operator=(Atlas&&) noexcept = default;

const Chart& Atlas::chart(std::size_t index) const {
  if (index >= memo_->charts.size()) throw UnknownSimplex("chart index out of range");
  std::call_once(memo_->chart_once[index], [&] {
    const Simplex& s = fan_.simplices()[index];
    memo_->charts[index] = Chart{s, dual_basis(fan_.betas_of(s))};
  });
  return *memo_->charts[index];
}

const Chart& Atlas::chart(const Simplex& s) const { return chart(fan_.require_maximal(s)); }

const ValidationReport& Atlas::validation() const {
  std::call_once(memo_->validation_once, [&] { memo_->validation = validate(fan_, seed_); });
  return *memo_->validation;
}

void Atlas::require_valid() const {
  const auto& report = validation();
  if (report.all_passed()) return;
  std::string failing;
  for (const auto& r : report.axioms)
    if (!r.passed) failing += std::string(failing.empty() ? "" : ", ") + axiom_name(r.axiom);
  throw InvalidFan("fan fails: " + failing);
}

double wrap_angle(double theta) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(theta, two_pi);
  if (r < 0) r += two_pi;
  if (r >= two_pi) r -= two_pi;
  return r;
}

double angle_distance(double a, double b) {
  const double d = wrap_angle(a - b);
  return std::min(d, 2.0 * std::numbers::pi - d);
}

std::vector<ComplexPoint> lambda_beta(const CZVector& beta, ComplexPoint h) {
  if (h == ComplexPoint(0.0, 0.0)) throw DomainError("lambda_beta: h must be nonzero");
  std::vector<ComplexPoint> out;
  out.reserve(beta.size());
  for (const auto& entry : beta) out.push_back(cz_power(h, entry));
  return out;
}

ComplexPoint chi_alpha(const CZVector& alpha, std::span<const ComplexPoint> g) {
  if (alpha.size() != g.size()) throw DimensionMismatch("chi_alpha: length mismatch");
  ComplexPoint out(1.0, 0.0);
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (g[j] == ComplexPoint(0.0, 0.0)) throw DomainError("chi_alpha: zero component");
    out *= cz_power(g[j], alpha[j]);
  }
  return out;
}

ComplexPoint monomial(std::span<const ComplexPoint> w, std::span<const CZMat> exponents) {
  if (w.size() != exponents.size()) throw DimensionMismatch("monomial: length mismatch");
  ComplexPoint out(1.0, 0.0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (exponents[i] == CZMat::zero()) continue;
    out *= cz_power(w[i], exponents[i]);
  }
  return out;
}

ChartPoint chart_map(const Atlas& atlas, const Simplex& chart_simplex, std::span<const ComplexPoint> z) {
  const TopologicalFan& fan = atlas.fan();
  if (static_cast<int>(z.size()) != fan.m()) throw DimensionMismatch("chart_map: expected m coordinates");
  const Chart& chart = atlas.chart(chart_simplex);
  for (int j = 0; j < fan.m(); ++j) {
    const bool in_chart = std::binary_search(chart.simplex.begin(), chart.simplex.end(), j);
    if (!in_chart && z[static_cast<std::size_t>(j)] == ComplexPoint(0.0, 0.0))
      throw DomainError("chart_map: z_" + std::to_string(j + 1) + " = 0 outside the chart's simplex");
  }
  ChartPoint w;
  w.reserve(chart.duals.size());
  std::vector<CZMat> exps(static_cast<std::size_t>(fan.m()));
  for (const auto& alpha : chart.duals) {
    for (int j = 0; j < fan.m(); ++j) exps[static_cast<std::size_t>(j)] = pairing(alpha, fan.beta(j));
    w.push_back(monomial(z, exps));
  }
  return w;
}

TransitionMap transition(const Atlas& atlas, const Simplex& from, const Simplex& to) {
  const TopologicalFan& fan = atlas.fan();
  const Chart& source = atlas.chart(from);
  const Chart& target = atlas.chart(to);
  TransitionMap t{source.simplex, target.simplex, {}};
  for (const auto& alpha : target.duals) {
    std::vector<CZMat> row;
    for (int i : source.simplex) row.push_back(pairing(alpha, fan.beta(i)));
    t.exponents.push_back(std::move(row));
  }
  return t;
}

ChartPoint evaluate_transition(const TransitionMap& t, std::span<const ComplexPoint> w) {
  if (w.size() != t.from.size()) throw DimensionMismatch("evaluate_transition: point has wrong length");
  ChartPoint out;
  out.reserve(t.exponents.size());
  for (const auto& row : t.exponents) out.push_back(monomial(w, row));
  return out;
}

bool is_holomorphic(const TransitionMap& t) {
  for (const auto& row : t.exponents)
    for (const auto& e : row)
      if (!is_scalar_integer(e)) return false;
  return true;
}

std::vector<CertificateEntry> exponent_certificate(const Atlas& atlas) {
  const TopologicalFan& fan = atlas.fan();
  std::vector<CertificateEntry> out;
  for (std::size_t idx = 0; idx < fan.simplices().size(); ++idx) {
    const Chart& chart = atlas.chart(idx);
    for (std::size_t h = 0; h < chart.duals.size(); ++h)
      for (int j = 0; j < fan.m(); ++j) {
        CZMat e = pairing(chart.duals[h], fan.beta(j));
        const bool scalar = is_scalar_integer(e).has_value();
        out.push_back({chart.simplex, chart.simplex[h], j, std::move(e), scalar});
      }
  }
  return out;
}

Verdict classify(const Atlas& atlas) {
  atlas.require_valid();
  const auto& simplices = atlas.fan().simplices();
  bool all_holomorphic = true;
  for (const auto& from : simplices)
    for (const auto& to : simplices)
      if (!is_holomorphic(transition(atlas, from, to))) all_holomorphic = false;

  bool all_scalar = true;
  for (const auto& entry : exponent_certificate(atlas)) all_scalar = all_scalar && entry.scalar_integer;
  if (all_scalar != all_holomorphic)
    throw std::logic_error("classify: transition and certificate criteria disagree");
  return all_holomorphic ? Verdict::Toric : Verdict::NonToricTopological;
}

OrbitPoint orbit_coordinates(std::span<const ComplexPoint> g) {
  OrbitPoint p;
  for (const auto& gj : g) {
    if (gj == ComplexPoint(0.0, 0.0)) throw DomainError("orbit_coordinates: zero component");
    p.tau.push_back(std::log(std::abs(gj)));
    p.theta.push_back(wrap_angle(std::arg(gj)));
  }
  return p;
}

OrbitPoint psi(const Atlas& atlas, const Simplex& chart_simplex, std::span<const ComplexPoint> w) {
  const TopologicalFan& fan = atlas.fan();
  const std::size_t idx = fan.require_maximal(chart_simplex);
  const Simplex& s = fan.simplices()[idx];
  if (w.size() != s.size()) throw DimensionMismatch("psi: point has wrong length");
  const int n = fan.n();
  OrbitPoint p{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (w[i] == ComplexPoint(0.0, 0.0)) throw DomainError("psi: zero coordinate");
    const double log_r2 = std::log(std::norm(w[i]));
    const double angle = std::arg(w[i]);
    const CZVector& beta = fan.beta(s[i]);
    for (int j = 0; j < n; ++j) {
      p.tau[j] += 0.5 * scalar_cast<double>(beta[j].b) * log_r2;
      p.theta[j] += 0.5 * scalar_cast<double>(beta[j].c) * log_r2 + scalar_cast<double>(beta[j].v) * angle;
    }
  }
  for (double& theta : p.theta) theta = wrap_angle(theta);
  return p;
}

Eigen::MatrixXd t_matrix(std::span<const ComplexPoint> w) {
  const auto n = static_cast<Eigen::Index>(w.size());
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x = w[i].real();
    const double y = w[i].imag();
    const double r2 = x * x + y * y;
    if (r2 == 0.0) throw DomainError("t_matrix: zero coordinate");
    t.block<2, 2>(2 * i, 2 * i) << x / r2, y / r2, -y / r2, x / r2;
  }
  return t;
}

Eigen::MatrixXd jacobian_psi(const Atlas& atlas, const Simplex& chart_simplex, std::span<const ComplexPoint> w) {
  const TopologicalFan& fan = atlas.fan();
  const Simplex& s = fan.simplices()[fan.require_maximal(chart_simplex)];
  if (w.size() != s.size()) throw DimensionMismatch("jacobian_psi: point has wrong length");
  return chart_b_matrix<double>(fan, s) * t_matrix(w);
}

}  // namespace topfan
