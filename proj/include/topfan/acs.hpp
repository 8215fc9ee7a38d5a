#pragma once

// Invariant (stably) almost complex structures. On the dense orbit such a
// structure is a constant matrix J0 of size 2(n + ell) in the coordinates
// (tau_j, theta_j) plus ell trivial complex directions. In a chart it becomes
//   J_I = diag(BT, I)^{-1} J0 diag(BT, I)
// and smoothness at the chart origin forces the lower-left block of J0 to
// vanish and B^{-1} J11 B to commute with the torus diag(t_i).

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "topfan/charts.hpp"
#include "topfan/errors.hpp"
#include "topfan/linalg.hpp"

namespace topfan {

template <typename Scalar>
struct OrbitACS {
  int ell = 0;
  Mat<Scalar> j0;
};

/// Block diagonal of `blocks` copies of [[0, -1], [1, 0]].
template <typename Scalar>
Mat<Scalar> standard_j(Eigen::Index blocks) {
  Mat<Scalar> j = Mat<Scalar>::Zero(2 * blocks, 2 * blocks);
  for (Eigen::Index k = 0; k < blocks; ++k) {
    j(2 * k, 2 * k + 1) = Scalar(-1);
    j(2 * k + 1, 2 * k) = Scalar(1);
  }
  return j;
}

template <typename Scalar>
bool near_zero(const Scalar& x, double tol) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    (void)tol;
    return x == 0;
  } else {
    using std::abs;
    return abs(x) <= tol;
  }
}

template <typename Scalar>
bool near_equal(const Mat<Scalar>& a, const Mat<Scalar>& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c)
      if (!near_zero<Scalar>(Scalar(a(r, c) - b(r, c)), tol)) return false;
  return true;
}

template <typename Scalar>
bool squares_to_minus_identity(const Mat<Scalar>& j, double tol = kExactTolerance) {
  const Mat<Scalar> sq = j * j;
  return near_equal<Scalar>(sq, Mat<Scalar>(-Mat<Scalar>::Identity(j.rows(), j.cols())), tol);
}

/// Whether m commutes with every block-diagonal diag(t_1, ..., t_n), t_i in C*.
/// Tested against two generators per slot: the real scaling 2 and the
/// rotation by 90 degrees.
template <typename Scalar>
bool in_torus_commutant(const Mat<Scalar>& m, double tol = kExactTolerance) {
  const Eigen::Index slots = m.rows() / 2;
  for (Eigen::Index i = 0; i < slots; ++i) {
    Mat<Scalar> scale = Mat<Scalar>::Identity(m.rows(), m.cols());
    scale(2 * i, 2 * i) = Scalar(2);
    scale(2 * i + 1, 2 * i + 1) = Scalar(2);
    Mat<Scalar> rotate = Mat<Scalar>::Identity(m.rows(), m.cols());
    rotate.template block<2, 2>(2 * i, 2 * i) = standard_j<Scalar>(1);
    if (!near_equal<Scalar>(Mat<Scalar>(m * scale), Mat<Scalar>(scale * m), tol)) return false;
    if (!near_equal<Scalar>(Mat<Scalar>(m * rotate), Mat<Scalar>(rotate * m), tol)) return false;
  }
  return true;
}

enum class Extension { SmoothExtension, NoSmoothExtension };

const char* extension_name(Extension e);

template <typename Scalar>
struct MatrixEntry {
  Eigen::Index row;
  Eigen::Index col;
  Scalar value;
};

template <typename Scalar>
struct BlockAnalysis {
  bool j21_forced_zero = true;
  /// Nonzero entries of J21 B; each blows up like 1/|w| at the chart origin.
  std::vector<MatrixEntry<Scalar>> j21_offending;
  /// M = B^{-1} J11 B.
  Mat<Scalar> conjugated;
  bool top_left_commutant = false;
  /// Sign of each diagonal block of M = +-[[0, -1], [1, 0]], when forced.
  std::optional<std::vector<int>> forced_form;
  Extension verdict = Extension::NoSmoothExtension;
};

template <typename Scalar>
BlockAnalysis<Scalar> smooth_extension_analysis(const OrbitACS<Scalar>& acs, const Mat<Scalar>& b,
                                                double tol = kExactTolerance) {
  const Eigen::Index n2 = b.rows();
  const Eigen::Index l2 = 2 * acs.ell;
  if (acs.j0.rows() != n2 + l2 || acs.j0.cols() != n2 + l2)
    throw DimensionMismatch("smooth_extension_analysis: J0 size does not match 2(n + ell)");

  BlockAnalysis<Scalar> out;
  if (l2 > 0) {
    const Mat<Scalar> j21b = acs.j0.bottomLeftCorner(l2, n2) * b;
    for (Eigen::Index r = 0; r < l2; ++r)
      for (Eigen::Index c = 0; c < n2; ++c)
        if (!near_zero<Scalar>(j21b(r, c), tol)) out.j21_offending.push_back({n2 + r, c, j21b(r, c)});
    out.j21_forced_zero = out.j21_offending.empty();
  }

  Mat<Scalar> b_inv;
  if constexpr (std::is_same_v<Scalar, Rational>) {
    const auto inv = exact_inverse<Rational>(b);
    if (!inv) throw SingularRealPart("smooth_extension_analysis: B is singular");
    b_inv = *inv;
  } else {
    b_inv = b.inverse();
  }
  out.conjugated = b_inv * acs.j0.topLeftCorner(n2, n2) * b;
  out.top_left_commutant = in_torus_commutant<Scalar>(out.conjugated, tol);

  if (out.j21_forced_zero && out.top_left_commutant && squares_to_minus_identity<Scalar>(acs.j0, tol)) {
    std::vector<int> signs;
    for (Eigen::Index k = 0; k < n2 / 2; ++k) {
      const Mat<Scalar> block = out.conjugated.template block<2, 2>(2 * k, 2 * k);
      const Mat<Scalar> rot = standard_j<Scalar>(1);
      if (near_equal<Scalar>(block, rot, tol)) {
        signs.push_back(1);
      } else if (near_equal<Scalar>(block, Mat<Scalar>(-rot), tol)) {
        signs.push_back(-1);
      } else {
        signs.clear();
        break;
      }
    }
    if (static_cast<Eigen::Index>(signs.size()) == n2 / 2) out.forced_form = std::move(signs);
  }
  out.verdict = out.j21_forced_zero && out.top_left_commutant ? Extension::SmoothExtension
                                                              : Extension::NoSmoothExtension;
  return out;
}

/// J_I at chart point w.
Eigen::MatrixXd j_field(const Atlas& atlas, const Simplex& chart, const OrbitACS<double>& acs,
                        std::span<const ComplexPoint> w);

/// B_I J_std B_I^{-1} for every maximal simplex, in fan order.
std::vector<RationalMatrix> acs_candidates(const Atlas& atlas);

/// The invariant almost complex structure (ell = 0) when all charts agree
/// exactly; empty otherwise. Throws InvalidFan.
std::optional<OrbitACS<Rational>> invariant_acs(const Atlas& atlas);

struct ProbeOptions {
  double slope_low = -1.1;
  double slope_high = -0.9;
  double constancy = kFiniteDifferenceTolerance;
};

struct DivergenceReport {
  /// Log-log slope of |J_I(t ray)| per entry as t -> 0; NaN where the entry vanishes.
  Eigen::MatrixXd slopes;
  /// Largest entry change over the ray and its torus-twisted companions.
  double variation = 0.0;
  bool constant = false;
  bool blowup = false;
};

/// Evaluates j_field at t * ray for t = 2^-1, ..., 2^-steps. Constancy is
/// measured over those points and over companions whose slots are rotated by
/// distinct angles, since a real scaling alone commutes with the conjugation.
DivergenceReport divergence_probe(const Atlas& atlas, const Simplex& chart, const OrbitACS<double>& acs,
                                  std::span<const ComplexPoint> ray, int steps, const ProbeOptions& options = {});

struct CrossCheckReport {
  bool acs_exists = false;
  Verdict verdict = Verdict::Toric;
  bool equivalence_holds = false;
  /// J0 = J11 (+) J_std on the trivial summand is smooth in every chart, for ell = 1, 2.
  std::optional<bool> stabilized_smooth;
  int adversarial_trials = 0;
  int adversarial_flagged = 0;

  bool passed() const {
    return equivalence_holds && stabilized_smooth.value_or(true) && adversarial_flagged == adversarial_trials;
  }
};

CrossCheckReport theorem_cross_check(const Atlas& atlas, std::uint64_t seed = 1);

/// A random rational J0 of size 2(n + ell) with J0^2 = -Id and nonzero lower-left block.
OrbitACS<Rational> random_stably_complex(std::uint64_t seed, int n, int ell);

}  // namespace topfan
