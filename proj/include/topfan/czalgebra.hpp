#pragma once

// The ring of 2x2 matrices [[b, 0], [c, v]] with b, c rational and v integer.
// An element encodes (b + i c, v) in C x Z and acts as the exponent of the
// generalized power  z^M = |z|^(b + i c) (z / |z|)^v.

#include <complex>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "topfan/rational.hpp"

namespace topfan {

using ComplexPoint = std::complex<double>;

struct CZMat {
  Rational b{0};
  Rational c{0};
  Integer v{0};

  CZMat() = default;
  CZMat(Rational b_, Rational c_, Integer v_) : b(std::move(b_)), c(std::move(c_)), v(std::move(v_)) {}

  static CZMat identity() { return {Rational(1), Rational(0), Integer(1)}; }
  static CZMat zero() { return {}; }
  /// The diagonal embedding a -> (a, a) of an integer.
  static CZMat scalar(long a) { return {Rational(a), Rational(0), Integer(a)}; }

  friend bool operator==(const CZMat&, const CZMat&) = default;
};

CZMat operator+(const CZMat& a, const CZMat& b);
CZMat operator-(const CZMat& a, const CZMat& b);
CZMat operator-(const CZMat& a);

/// 2x2 product; noncommutative.
CZMat cz_mul(const CZMat& a, const CZMat& b);
inline CZMat operator*(const CZMat& a, const CZMat& b) { return cz_mul(a, b); }

std::ostream& operator<<(std::ostream& os, const CZMat& m);

/// One fan vector beta_i = (beta_i^1, ..., beta_i^n), or a dual vector alpha.
using CZVector = std::vector<CZMat>;

/// <alpha, beta> = sum_j alpha^j beta^j, alpha on the left.
CZMat pairing(const CZVector& alpha, const CZVector& beta);

/// |z|^(b + i c) (z / |z|)^v. At z = 0 only a positive scalar-integer exponent
/// is defined (value 0); everything else throws DomainError.
ComplexPoint cz_power(ComplexPoint z, const CZMat& m);

/// gamma when m = gamma * identity with gamma an integer.
std::optional<Integer> is_scalar_integer(const CZMat& m);

/// Dual basis {alpha_h} with <alpha_h, beta_i> = delta_hi * identity.
/// Throws SingularRealPart when det(b_i^j) = 0 and NotUnimodular when |det(v_i^j)| != 1.
std::vector<CZVector> dual_basis(std::span<const CZVector> betas);

Eigen::Matrix2d real_matrix(const CZMat& m);

template <typename Scalar>
Eigen::Matrix<Scalar, 2, 2> as_matrix(const CZMat& m) {
  Eigen::Matrix<Scalar, 2, 2> out;
  out << scalar_cast<Scalar>(m.b), Scalar(0), scalar_cast<Scalar>(m.c), scalar_cast<Scalar>(m.v);
  return out;
}

/// The 2n x 2n matrix whose (j, i) 2x2 block is columns[i][j]. With columns the
/// fan vectors of a maximal simplex this is the matrix B of the chart: rows are
/// ordered (tau_1, theta_1, ...) and columns (x_1, y_1, ...).
template <typename Scalar>
Mat<Scalar> block_matrix(std::span<const CZVector> columns) {
  const auto n = static_cast<Eigen::Index>(columns.size());
  Mat<Scalar> out = Mat<Scalar>::Zero(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      out.template block<2, 2>(2 * j, 2 * i) = as_matrix<Scalar>(columns[i][j]);
  return out;
}

}  // namespace topfan
