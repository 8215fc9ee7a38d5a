#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "topfan/fourier_motzkin.hpp"
#include "topfan/linalg.hpp"

using namespace topfan;

namespace {

RationalMatrix random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  RationalMatrix a(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) a(r, c) = oracle::random_rational(rng, -3, 3, 3);
  return a;
}

}  // namespace

TEST_CASE("determinant and inverse against cofactor expansion") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 80; ++trial) {
    const Eigen::Index n = 1 + trial % 5;
    const RationalMatrix a = random_matrix(rng, n, n);
    const Rational d = oracle::det(a);
    CHECK(exact_determinant<Rational>(a) == d);
    const auto inv = exact_inverse<Rational>(a);
    CHECK(inv.has_value() == (d != 0));
    if (inv) CHECK(exactly_equal<Rational>(*inv, oracle::inverse(a)));
  }
  IntegerMatrix z(2, 2);
  z << 2, 1, 1, 1;
  CHECK(exact_determinant(z) == Integer(1));
}

TEST_CASE("rank and nullspace") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index rows = 1 + trial % 3, cols = 2 + trial % 4;
    RationalMatrix a = random_matrix(rng, rows, cols);
    if (trial % 2) a.row(0) = a.row(rows - 1) * Rational(2);  // force dependence sometimes
    const RationalMatrix ns = exact_nullspace<Rational>(a);
    CHECK(exact_rank<Rational>(a) + ns.cols() == cols);
    const RationalMatrix prod = a * ns;
    CHECK((prod.array() == Rational(0)).all());
  }
}

TEST_CASE("Fourier-Motzkin feasibility") {
  using C = LinearConstraint;
  SUBCASE("open interval") {
    RationalVector one(1);
    one << 1;
    const std::vector<C> cs{{one, Rational(1), Relation::Greater}, {-one, Rational(-3), Relation::Greater}};
    const auto x = find_feasible_point(cs, 1);
    REQUIRE(x);
    CHECK((*x)(0) == Rational(2));
  }
  SUBCASE("empty strict set") {
    RationalVector one(1);
    one << 1;
    const std::vector<C> cs{{one, Rational(1), Relation::Greater}, {-one, Rational(-1), Relation::GreaterEqual}};
    CHECK_FALSE(find_feasible_point(cs, 1));
  }
  SUBCASE("random systems: every returned point satisfies every constraint") {
    std::mt19937_64 rng(23);
    int feasible = 0;
    for (int trial = 0; trial < 60; ++trial) {
      const int dims = 1 + trial % 3;
      std::vector<C> cs;
      for (int k = 0; k < 4; ++k) {
        // At most one equality, so that random systems stay feasible often enough.
        const auto rel = static_cast<Relation>(std::uniform_int_distribution<int>(0, k == 0 ? 2 : 1)(rng));
        cs.push_back({random_matrix(rng, dims, 1).col(0), oracle::random_rational(rng, -2, 2, 2), rel});
      }
      if (const auto x = find_feasible_point(cs, dims)) {
        ++feasible;
        for (const auto& c : cs) CHECK(satisfies(c, *x));
      }
    }
    CHECK(feasible > 0);
  }
}

TEST_CASE("cone membership matches Cramer coefficients") {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 60; ++trial) {
    const Eigen::Index n = 1 + trial % 3;
    const RationalMatrix g = random_matrix(rng, n, n);
    if (oracle::det(g) == 0) continue;
    const RationalVector x = random_matrix(rng, n, 1).col(0);
    CHECK(cone_contains(g, x, false) == oracle::in_closed_cone(g, x));
    CHECK(cone_contains(g, x, true) == oracle::in_open_cone(g, x));
  }
}
