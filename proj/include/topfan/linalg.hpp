#pragma once

// Exact dense linear algebra over a field (Rational). Eigen's decompositions
// pivot on magnitude and compare against epsilon; these routines pivot on the
// first nonzero entry and never round, so they are the ones used on exact data.

#include <optional>
#include <utility>
#include <vector>

#include "topfan/rational.hpp"

namespace topfan {

template <typename Scalar>
Scalar exact_determinant(Mat<Scalar> a) {
  const Eigen::Index n = a.rows();
  Scalar det(1);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    while (pivot < n && a(pivot, col) == 0) ++pivot;
    if (pivot == n) return Scalar(0);
    if (pivot != col) {
      a.row(pivot).swap(a.row(col));
      det = -det;
    }
    det *= a(col, col);
    for (Eigen::Index r = col + 1; r < n; ++r) {
      if (a(r, col) == 0) continue;
      const Scalar f = a(r, col) / a(col, col);
      for (Eigen::Index c = col; c < n; ++c) a(r, c) -= f * a(col, c);
    }
  }
  return det;
}

/// Integer determinant computed over the rationals; the result is integral.
inline Integer exact_determinant(const IntegerMatrix& a) {
  const Rational d = exact_determinant<Rational>(matrix_cast<Rational>(a));
  return numerator(d);
}

/// Gauss-Jordan inverse; empty when singular.
template <typename Scalar>
std::optional<Mat<Scalar>> exact_inverse(Mat<Scalar> a) {
  const Eigen::Index n = a.rows();
  Mat<Scalar> inv = Mat<Scalar>::Identity(n, n);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    while (pivot < n && a(pivot, col) == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != col) {
      a.row(pivot).swap(a.row(col));
      inv.row(pivot).swap(inv.row(col));
    }
    const Scalar p = a(col, col);
    a.row(col) /= p;
    inv.row(col) /= p;
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == col || a(r, col) == 0) continue;
      const Scalar f = a(r, col);
      a.row(r) -= f * a.row(col);
      inv.row(r) -= f * inv.row(col);
    }
  }
  return inv;
}

/// Reduced row echelon form in place; returns the pivot column of each pivot row.
template <typename Scalar>
std::vector<Eigen::Index> row_reduce(Mat<Scalar>& a) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < a.cols() && row < a.rows(); ++col) {
    Eigen::Index pivot = row;
    while (pivot < a.rows() && a(pivot, col) == 0) ++pivot;
    if (pivot == a.rows()) continue;
    if (pivot != row) a.row(pivot).swap(a.row(row));
    a.row(row) /= Scalar(a(row, col));
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, col) == 0) continue;
      const Scalar f = a(r, col);
      a.row(r) -= f * a.row(row);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <typename Scalar>
Eigen::Index exact_rank(Mat<Scalar> a) {
  return static_cast<Eigen::Index>(row_reduce(a).size());
}

/// A basis of {x : a x = 0}, one column per free variable.
template <typename Scalar>
Mat<Scalar> exact_nullspace(Mat<Scalar> a) {
  const auto pivots = row_reduce(a);
  std::vector<Eigen::Index> free;
  for (Eigen::Index c = 0, p = 0; c < a.cols(); ++c) {
    if (p < static_cast<Eigen::Index>(pivots.size()) && pivots[p] == c) {
      ++p;
    } else {
      free.push_back(c);
    }
  }
  Mat<Scalar> basis = Mat<Scalar>::Zero(a.cols(), static_cast<Eigen::Index>(free.size()));
  for (std::size_t k = 0; k < free.size(); ++k) {
    basis(free[k], k) = Scalar(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) basis(pivots[r], k) = -a(r, free[k]);
  }
  return basis;
}

template <typename Scalar>
bool exactly_equal(const Mat<Scalar>& a, const Mat<Scalar>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c)
      if (a(r, c) != b(r, c)) return false;
  return true;
}

}  // namespace topfan
