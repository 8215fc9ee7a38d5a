#pragma once

// Exact scalar types and the dense matrix aliases shared by every module.

#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

namespace topfan {

// Expression templates are disabled so the types compose cleanly with Eigen.
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RationalMatrix = Mat<Rational>;
using RationalVector = Vec<Rational>;
using IntegerMatrix = Mat<Integer>;

inline Integer numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& q) { return q.str(); }
inline std::string to_string(const Integer& z) { return z.str(); }

/// Parses "p", "-p", "p/q" (q != 0). Non-reduced input is normalized.
/// Throws std::invalid_argument on anything else, including decimals.
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

/// Scalar conversion used to move exact data onto numeric paths.
template <typename Scalar>
Scalar scalar_cast(const Rational& q) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return q;
  } else {
    return q.template convert_to<Scalar>();
  }
}

template <typename Scalar>
Scalar scalar_cast(const Integer& z) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return Rational(z);
  } else if constexpr (std::is_same_v<Scalar, Integer>) {
    return z;
  } else {
    return z.template convert_to<Scalar>();
  }
}

template <typename To, typename From>
Mat<To> matrix_cast(const Mat<From>& m) {
  Mat<To> out(m.rows(), m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) out(r, c) = scalar_cast<To>(m(r, c));
  return out;
}

}  // namespace topfan
