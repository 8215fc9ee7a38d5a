#pragma once

// Exact feasibility of small systems of linear constraints over Q with mixed
// strict, non-strict and equality relations. Equalities are eliminated by
// substitution and the remaining inequalities by Fourier-Motzkin; a feasible
// point is recovered by back substitution.

#include <optional>
#include <vector>

#include "topfan/rational.hpp"

namespace topfan {

enum class Relation { Greater, GreaterEqual, Equal };

/// coeffs . x  (rel)  rhs
struct LinearConstraint {
  RationalVector coeffs;
  Rational rhs{0};
  Relation rel = Relation::GreaterEqual;
};

/// A point satisfying every constraint exactly, or empty when none exists.
std::optional<RationalVector> find_feasible_point(const std::vector<LinearConstraint>& constraints,
                                                  Eigen::Index dims);

bool satisfies(const LinearConstraint& constraint, const RationalVector& x);

/// Whether x lies in the cone spanned by the rows of generators
/// (strict = relative interior: every coefficient positive).
bool cone_contains(const RationalMatrix& generators, const RationalVector& x, bool strict);

}  // namespace topfan
