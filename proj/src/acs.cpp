#include "topfan/acs.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "topfan/errors.hpp"

namespace topfan {

const char* extension_name(Extension e) {
  return e == Extension::SmoothExtension ? "SmoothExtension" : "NoSmoothExtension";
}

namespace {

Eigen::MatrixXd padded(const Eigen::MatrixXd& top_left, Eigen::Index trivial) {
  const Eigen::Index n2 = top_left.rows();
  Eigen::MatrixXd out = Eigen::MatrixXd::Identity(n2 + trivial, n2 + trivial);
  out.topLeftCorner(n2, n2) = top_left;
  return out;
}

template <typename Scalar>
Mat<Scalar> direct_sum(const Mat<Scalar>& a, const Mat<Scalar>& b) {
  Mat<Scalar> out = Mat<Scalar>::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

RationalMatrix random_invertible(std::mt19937_64& rng, Eigen::Index size) {
  std::uniform_int_distribution<long> entry(-2, 2);
  for (;;) {
    RationalMatrix p(size, size);
    for (Eigen::Index r = 0; r < size; ++r)
      for (Eigen::Index c = 0; c < size; ++c) p(r, c) = Rational(entry(rng) + (r == c ? 3 : 0));
    if (exact_determinant<Rational>(p) != 0) return p;
  }
}

}  // namespace

Eigen::MatrixXd j_field(const Atlas& atlas, const Simplex& chart, const OrbitACS<double>& acs,
                        std::span<const ComplexPoint> w) {
  const TopologicalFan& fan = atlas.fan();
  const Eigen::Index n2 = 2 * fan.n();
  const Eigen::Index l2 = 2 * acs.ell;
  if (acs.j0.rows() != n2 + l2 || acs.j0.cols() != n2 + l2)
    throw DimensionMismatch("j_field: J0 size does not match 2(n + ell)");
  const Eigen::MatrixXd bt = jacobian_psi(atlas, chart, w);
  const Eigen::MatrixXd frame = padded(bt, l2);
  const Eigen::MatrixXd frame_inv = padded(bt.inverse(), l2);
  return frame_inv * acs.j0 * frame;
}

std::vector<RationalMatrix> acs_candidates(const Atlas& atlas) {
  const TopologicalFan& fan = atlas.fan();
  const RationalMatrix std_j = standard_j<Rational>(fan.n());
  std::vector<RationalMatrix> out;
  for (const auto& s : fan.simplices()) {
    const RationalMatrix b = chart_b_matrix<Rational>(fan, s);
    const auto b_inv = exact_inverse<Rational>(b);
    if (!b_inv) throw SingularRealPart("acs_candidates: chart matrix B is singular");
    out.push_back(b * std_j * *b_inv);
  }
  return out;
}

std::optional<OrbitACS<Rational>> invariant_acs(const Atlas& atlas) {
  atlas.require_valid();
  const auto candidates = acs_candidates(atlas);
  for (std::size_t k = 1; k < candidates.size(); ++k)
    if (!exactly_equal<Rational>(candidates[k], candidates.front())) return std::nullopt;
  return OrbitACS<Rational>{0, candidates.front()};
}

DivergenceReport divergence_probe(const Atlas& atlas, const Simplex& chart, const OrbitACS<double>& acs,
                                  std::span<const ComplexPoint> ray, int steps, const ProbeOptions& options) {
  if (steps < 2) throw std::invalid_argument("divergence_probe: need at least two steps");
  for (const auto& w : ray)
    if (w == ComplexPoint(0.0, 0.0)) throw DomainError("divergence_probe: ray has a zero coordinate");

  std::vector<double> log_t;
  std::vector<Eigen::MatrixXd> samples;
  std::vector<Eigen::MatrixXd> twisted;
  ChartPoint p(ray.begin(), ray.end());
  ChartPoint q(ray.begin(), ray.end());
  for (int k = 1; k <= steps; ++k) {
    const double t = std::ldexp(1.0, -k);
    for (std::size_t i = 0; i < ray.size(); ++i) {
      p[i] = t * ray[i];
      q[i] = p[i] * std::polar(1.0, 0.7 * static_cast<double>(k) * static_cast<double>(i + 1));
    }
    log_t.push_back(std::log(t));
    samples.push_back(j_field(atlas, chart, acs, p));
    twisted.push_back(j_field(atlas, chart, acs, q));
  }

  DivergenceReport report;
  const Eigen::Index size = samples.front().rows();
  report.slopes = Eigen::MatrixXd::Constant(size, size, std::numeric_limits<double>::quiet_NaN());
  // Least squares over the second half of the samples, where the leading
  // power dominates.
  const std::size_t first = samples.size() / 2;
  for (Eigen::Index r = 0; r < size; ++r)
    for (Eigen::Index c = 0; c < size; ++c) {
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      bool vanishes = false;
      for (std::size_t k = first; k < samples.size(); ++k) {
        const double mag = std::abs(samples[k](r, c));
        if (mag < 1e-300) {
          vanishes = true;
          break;
        }
        const double x = log_t[k], y = std::log(mag);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
      }
      if (vanishes) continue;
      const double count = static_cast<double>(samples.size() - first);
      report.slopes(r, c) = (count * sxy - sx * sy) / (count * sxx - sx * sx);
      if (report.slopes(r, c) >= options.slope_low && report.slopes(r, c) <= options.slope_high)
        report.blowup = true;
    }

  const Eigen::MatrixXd& reference = samples.front();
  for (const auto* family : {&samples, &twisted})
    for (const auto& m : *family) report.variation = std::max(report.variation, (m - reference).cwiseAbs().maxCoeff());
  report.constant = report.variation < options.constancy;
  return report;
}

OrbitACS<Rational> random_stably_complex(std::uint64_t seed, int n, int ell) {
  std::mt19937_64 rng(seed);
  const Eigen::Index size = 2 * (n + ell);
  const RationalMatrix std_j = standard_j<Rational>(n + ell);
  for (;;) {
    const RationalMatrix p = random_invertible(rng, size);
    const RationalMatrix j0 = p * std_j * *exact_inverse<Rational>(p);
    if (ell == 0) return {0, j0};
    const RationalMatrix j21 = j0.bottomLeftCorner(2 * ell, 2 * n);
    if (!(j21.array() == Rational(0)).all()) return {ell, j0};
  }
}

CrossCheckReport theorem_cross_check(const Atlas& atlas, std::uint64_t seed) {
  CrossCheckReport report;
  report.verdict = classify(atlas);
  const auto acs = invariant_acs(atlas);
  report.acs_exists = acs.has_value();
  report.equivalence_holds = report.acs_exists == (report.verdict == Verdict::Toric);

  const TopologicalFan& fan = atlas.fan();
  const Eigen::Index n2 = 2 * fan.n();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> entry(-3, 3);

  if (acs) {
    bool smooth = true;
    for (int ell = 1; ell <= 2; ++ell) {
      const OrbitACS<Rational> stabilized{ell, direct_sum<Rational>(acs->j0, standard_j<Rational>(ell))};
      for (const auto& s : fan.simplices())
        smooth = smooth && smooth_extension_analysis(stabilized, chart_b_matrix<Rational>(fan, s)).verdict ==
                               Extension::SmoothExtension;
    }
    report.stabilized_smooth = smooth;
  }

  // Shearing the trivial summand into the tangent directions keeps J0^2 = -Id
  // but makes the lower-left block nonzero.
  const RationalMatrix j11 = acs ? acs->j0 : acs_candidates(atlas).front();
  const RationalMatrix b = chart_b_matrix<Rational>(fan, fan.simplices().front());
  for (int ell = 1; ell <= 2; ++ell)
    for (int trial = 0; trial < 4; ++trial) {
      const Eigen::Index l2 = 2 * ell;
      RationalMatrix shear = RationalMatrix::Identity(n2 + l2, n2 + l2);
      bool nonzero = false;
      while (!nonzero)
        for (Eigen::Index r = 0; r < l2; ++r)
          for (Eigen::Index c = 0; c < n2; ++c) {
            shear(n2 + r, c) = Rational(entry(rng));
            nonzero = nonzero || shear(n2 + r, c) != 0;
          }
      RationalMatrix unshear = shear;
      unshear.bottomLeftCorner(l2, n2) *= Rational(-1);
      const RationalMatrix base = direct_sum<Rational>(j11, standard_j<Rational>(ell));
      const OrbitACS<Rational> sheared{ell, unshear * base * shear};
      if (!squares_to_minus_identity<Rational>(sheared.j0)) continue;
      const RationalMatrix j21 = sheared.j0.bottomLeftCorner(l2, n2);
      if ((j21.array() == Rational(0)).all()) continue;
      ++report.adversarial_trials;
      if (smooth_extension_analysis(sheared, b).verdict == Extension::NoSmoothExtension)
        ++report.adversarial_flagged;
    }
  return report;
}

}  // namespace topfan
