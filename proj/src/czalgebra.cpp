#include "topfan/czalgebra.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "topfan/errors.hpp"
#include "topfan/linalg.hpp"

namespace topfan {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (ch < '0' || ch > '9') return false;
  return true;
}

}  // namespace

Integer parse_integer(std::string_view text) {
  std::string_view digits = text;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (!all_digits(digits)) throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  Integer z{std::string(digits)};
  return text.front() == '-' ? Integer(-z) : z;
}

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  const Integer p = parse_integer(text.substr(0, slash));
  const std::string_view den = text.substr(slash + 1);
  if (!all_digits(den)) throw std::invalid_argument("bad denominator in '" + std::string(text) + "'");
  const Integer q(std::string{den});
  if (q == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(p, q);
}

CZMat operator+(const CZMat& a, const CZMat& b) { return {a.b + b.b, a.c + b.c, a.v + b.v}; }
CZMat operator-(const CZMat& a, const CZMat& b) { return {a.b - b.b, a.c - b.c, a.v - b.v}; }
CZMat operator-(const CZMat& a) { return {-a.b, -a.c, Integer(-a.v)}; }

// [[b1,0],[c1,v1]] [[b2,0],[c2,v2]] = [[b1 b2, 0], [c1 b2 + v1 c2, v1 v2]]
CZMat cz_mul(const CZMat& x, const CZMat& y) {
  return {x.b * y.b, x.c * y.b + Rational(x.v) * y.c, x.v * y.v};
}

std::ostream& operator<<(std::ostream& os, const CZMat& m) {
  return os << "[[" << m.b << ",0],[" << m.c << "," << m.v << "]]";
}

CZMat pairing(const CZVector& alpha, const CZVector& beta) {
  if (alpha.size() != beta.size())
    throw DimensionMismatch("pairing: lengths " + std::to_string(alpha.size()) + " and " +
                            std::to_string(beta.size()));
  CZMat sum;
  for (std::size_t j = 0; j < alpha.size(); ++j) sum = sum + cz_mul(alpha[j], beta[j]);
  return sum;
}

ComplexPoint cz_power(ComplexPoint z, const CZMat& m) {
  if (z == ComplexPoint(0.0, 0.0)) {
    if (const auto gamma = is_scalar_integer(m); gamma && *gamma > 0) return {0.0, 0.0};
    throw DomainError("generalized power of 0 with exponent that is not a positive scalar integer");
  }
  const double log_r = std::log(std::abs(z));
  const double angle = std::arg(z);
  const double b = scalar_cast<double>(m.b);
  const double c = scalar_cast<double>(m.c);
  const double v = scalar_cast<double>(m.v);
  return std::polar(std::exp(b * log_r), c * log_r + v * angle);
}

std::optional<Integer> is_scalar_integer(const CZMat& m) {
  if (m.c != 0 || m.b != Rational(m.v)) return std::nullopt;
  return m.v;
}

std::vector<CZVector> dual_basis(std::span<const CZVector> betas) {
  const auto n = static_cast<Eigen::Index>(betas.size());
  for (const auto& beta : betas)
    if (static_cast<Eigen::Index>(beta.size()) != n)
      throw DimensionMismatch("dual_basis: expected " + std::to_string(n) + " components per vector");

  // After grouping coordinates the 2n x 2n matrix is [[Bb, 0], [Bc, Bv]].
  RationalMatrix bb(n, n), bc(n, n), bv(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const CZMat& entry = betas[i][j];
      bb(j, i) = entry.b;
      bc(j, i) = entry.c;
      bv(j, i) = Rational(entry.v);
    }

  const auto bb_inv = exact_inverse(bb);
  if (!bb_inv) throw SingularRealPart("dual_basis: real parts are linearly dependent");
  const Rational det_v = exact_determinant(bv);
  if (det_v != 1 && det_v != -1)
    throw NotUnimodular("dual_basis: det of integer parts is " + to_string(det_v));
  const RationalMatrix bv_inv = *exact_inverse(bv);
  const RationalMatrix lower = -(bv_inv * bc * *bb_inv);

  std::vector<CZVector> alphas(n, CZVector(n));
  for (Eigen::Index h = 0; h < n; ++h)
    for (Eigen::Index j = 0; j < n; ++j)
      alphas[h][j] = CZMat((*bb_inv)(h, j), lower(h, j), numerator(bv_inv(h, j)));
  return alphas;
}

Eigen::Matrix2d real_matrix(const CZMat& m) { return as_matrix<double>(m); }

}  // namespace topfan
