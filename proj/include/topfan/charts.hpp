#pragma once

// Equivariant charts of X(Delta): one-parameter subgroups, characters, chart
// maps, transition maps, and the dense-orbit coordinates Psi_I with their
// Jacobian B T.

#include <cstdint>
#include <memory>
#include <numbers>
#include <span>
#include <vector>

#include "topfan/czalgebra.hpp"
#include "topfan/fan.hpp"

namespace topfan {

/// Numeric tolerance defaults; every check that uses one also takes an override.
inline constexpr double kExactTolerance = 1e-9;
inline constexpr double kFiniteDifferenceTolerance = 1e-6;

/// The chart phi_I: duals[h] is alpha_{I[h]}^I.
struct Chart {
  Simplex simplex;
  std::vector<CZVector> duals;
};

/// phi_K o phi_I^{-1}; exponents[k][i] = <alpha_{K[k]}^K, beta_{I[i]}>.
struct TransitionMap {
  Simplex from;
  Simplex to;
  std::vector<std::vector<CZMat>> exponents;
};

/// Coordinates (tau_j, theta_j) on (R x R/2piZ)^n, theta in [0, 2pi).
struct OrbitPoint {
  std::vector<double> tau;
  std::vector<double> theta;
};

/// (w_i)_{i in I}, w_i = x_i + i y_i.
using ChartPoint = std::vector<ComplexPoint>;

enum class Verdict { Toric, NonToricTopological };

const char* verdict_name(Verdict v);

/// A fan together with memoized per-chart dual bases and its validation
/// report. Memo slots are filled once under std::call_once, so a const Atlas
/// can be shared by concurrent readers.
class Atlas {
 public:
  explicit Atlas(TopologicalFan fan, std::uint64_t validation_seed = kDefaultValidationSeed);
  ~Atlas();
  Atlas(Atlas&&) noexcept;
  Atlas& operator=(Atlas&&) noexcept;

  const TopologicalFan& fan() const noexcept { return fan_; }
  const Chart& chart(const Simplex& s) const;
  const Chart& chart(std::size_t index) const;

  const ValidationReport& validation() const;
  /// Throws InvalidFan unless every axiom passes.
  void require_valid() const;

 private:
  struct Memo;
  TopologicalFan fan_;
  std::uint64_t seed_;
  std::unique_ptr<Memo> memo_;
};

double wrap_angle(double theta);
/// Distance on R/2piZ.
double angle_distance(double a, double b);

/// lambda_beta(h) = (h^{beta^1}, ..., h^{beta^n}).
std::vector<ComplexPoint> lambda_beta(const CZVector& beta, ComplexPoint h);

/// chi^alpha(g) = prod_j g_j^{alpha^j}.
ComplexPoint chi_alpha(const CZVector& alpha, std::span<const ComplexPoint> g);

/// prod_i w_i^{exponents[i]}; zero exponents contribute 1 whatever w_i is.
ComplexPoint monomial(std::span<const ComplexPoint> w, std::span<const CZMat> exponents);

/// phi_I([z_1, ..., z_m]). z must lie in U(I): z_j != 0 for j outside I.
ChartPoint chart_map(const Atlas& atlas, const Simplex& chart, std::span<const ComplexPoint> z);

TransitionMap transition(const Atlas& atlas, const Simplex& from, const Simplex& to);

ChartPoint evaluate_transition(const TransitionMap& t, std::span<const ComplexPoint> w);

/// Every exponent is an integer multiple of the identity.
bool is_holomorphic(const TransitionMap& t);

struct CertificateEntry {
  Simplex chart;
  int k;  // vertex of chart
  int j;  // any vertex
  CZMat exponent;
  bool scalar_integer;
};

/// <alpha_k^K, beta_j> for every maximal K, k in K and j in [m].
std::vector<CertificateEntry> exponent_certificate(const Atlas& atlas);

/// Toric iff every transition map is holomorphic. Throws InvalidFan.
Verdict classify(const Atlas& atlas);

/// Psi_I: chart coordinates to dense-orbit coordinates.
OrbitPoint psi(const Atlas& atlas, const Simplex& chart, std::span<const ComplexPoint> w);

/// psi applied to a point g of (C*)^n: (log|g_j|, arg g_j).
OrbitPoint orbit_coordinates(std::span<const ComplexPoint> g);

/// T = diag(t_i), t_i = [[x, y], [-y, x]] / (x^2 + y^2).
Eigen::MatrixXd t_matrix(std::span<const ComplexPoint> w);

/// The chart's B with (j, i) block beta_i^j.
template <typename Scalar>
Mat<Scalar> chart_b_matrix(const TopologicalFan& fan, const Simplex& chart) {
  const auto betas = fan.betas_of(chart);
  return block_matrix<Scalar>(betas);
}

/// d Psi_I = B T, rows (tau_1, theta_1, ...), columns (x_1, y_1, ...).
Eigen::MatrixXd jacobian_psi(const Atlas& atlas, const Simplex& chart, std::span<const ComplexPoint> w);

}  // namespace topfan
