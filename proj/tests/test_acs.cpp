#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "topfan/acs.hpp"
#include "topfan/catalog.hpp"
#include "topfan/errors.hpp"

using namespace topfan;

namespace {

RationalMatrix rational(std::initializer_list<std::initializer_list<long>> rows) {
  RationalMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (long x : row) m(r, c++) = Rational(x);
    ++r;
  }
  return m;
}

}  // namespace

TEST_CASE("standard structure") {
  const RationalMatrix j = standard_j<Rational>(3);
  CHECK(squares_to_minus_identity<Rational>(j));
  CHECK(in_torus_commutant<Rational>(j));
  CHECK(j(0, 1) == Rational(-1));
  CHECK(j(1, 0) == Rational(1));
}

TEST_CASE("commutant membership") {
  // Complex-form blocks a + b i commute; a reflection does not.
  CHECK(in_torus_commutant<Rational>(rational({{2, -3, 0, 0}, {3, 2, 0, 0}, {0, 0, 1, 5}, {0, 0, -5, 1}})));
  CHECK_FALSE(in_torus_commutant<Rational>(rational({{1, 0}, {0, -1}})));
  CHECK_FALSE(in_torus_commutant<Rational>(rational({{1, 0, 1, 0}, {0, 1, 0, 1}, {0, 0, 1, 0}, {0, 0, 0, 1}})));
}

TEST_CASE("invariant structure on toric fans is the pulled-back standard one") {
  for (const auto& name : {"cp1", "cp2", "cp3", "hirzebruch-2"}) {
    const Atlas atlas(catalog_fan(name));
    const auto acs = invariant_acs(atlas);
    REQUIRE(acs);
    CHECK(acs->ell == 0);
    CHECK(squares_to_minus_identity<Rational>(acs->j0));
    // B has scalar blocks on an ordinary fan, so it commutes with J_std.
    CHECK(exactly_equal<Rational>(acs->j0, standard_j<Rational>(atlas.fan().n())));
  }
  for (const auto& name : {"nontoric-line", "nontoric-surface"}) {
    const Atlas atlas(catalog_fan(name));
    CHECK_FALSE(invariant_acs(atlas));
    const auto candidates = acs_candidates(atlas);
    bool disagree = false;
    for (const auto& c : candidates) {
      CHECK(squares_to_minus_identity<Rational>(c));
      disagree = disagree || !exactly_equal<Rational>(c, candidates.front());
    }
    CHECK(disagree);
  }
}

TEST_CASE("J_I is B T-conjugate of J0 and smooth for the invariant structure") {
  std::mt19937_64 rng(51);
  const Atlas atlas(catalog_fan("hirzebruch-1"));
  const auto acs = invariant_acs(atlas);
  REQUIRE(acs);
  const OrbitACS<double> numeric{0, matrix_cast<double>(acs->j0)};
  for (const auto& s : atlas.fan().simplices()) {
    ChartPoint w{oracle::random_nonzero(rng), oracle::random_nonzero(rng)};
    const Eigen::MatrixXd bt = jacobian_psi(atlas, s, w);
    const Eigen::MatrixXd expected = bt.inverse() * numeric.j0 * bt;
    const Eigen::MatrixXd got = j_field(atlas, s, numeric, w);
    CHECK((got - expected).norm() < 1e-9);
    // Holomorphic charts carry the standard structure.
    CHECK((got - standard_j<double>(2)).norm() < 1e-9);
    const auto probe = divergence_probe(atlas, s, numeric, w, 20);
    CHECK(probe.constant);
    CHECK_FALSE(probe.blowup);
  }
}

TEST_CASE("non-commutant conjugate is detected by the twisted probe") {
  // J0 = B J_std B^-1 for the non-toric line's second chart, seen from the first.
  const Atlas atlas(catalog_fan("nontoric-line"));
  const auto candidates = acs_candidates(atlas);
  const OrbitACS<double> acs{0, matrix_cast<double>(candidates[1])};
  const ComplexPoint w[] = {{0.8, 0.3}};
  const auto probe = divergence_probe(atlas, {0}, acs, w, 20);
  CHECK_FALSE(probe.constant);
  CHECK(probe.variation > 1e-3);
  const auto analysis = smooth_extension_analysis(OrbitACS<Rational>{0, candidates[1]},
                                                  chart_b_matrix<Rational>(atlas.fan(), {0}));
  CHECK_FALSE(analysis.top_left_commutant);
  CHECK(analysis.verdict == Extension::NoSmoothExtension);
}

TEST_CASE("stabilized structures") {
  const Atlas atlas(catalog_fan("cp2"));
  const RationalMatrix b = chart_b_matrix<Rational>(atlas.fan(), atlas.fan().simplices()[0]);

  SUBCASE("J_std plus a trivial summand extends") {
    const OrbitACS<Rational> acs{1, standard_j<Rational>(3)};
    const auto a = smooth_extension_analysis(acs, b);
    CHECK(a.j21_forced_zero);
    CHECK(a.verdict == Extension::SmoothExtension);
    REQUIRE(a.forced_form);
    CHECK(a.forced_form->size() == 2);
  }

  SUBCASE("random structures with J21 != 0 never extend") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto acs = random_stably_complex(seed, 2, 1 + static_cast<int>(seed % 2));
      CHECK(squares_to_minus_identity<Rational>(acs.j0));
      const auto a = smooth_extension_analysis(acs, b);
      CHECK_FALSE(a.j21_forced_zero);
      CHECK_FALSE(a.j21_offending.empty());
      CHECK(a.verdict == Extension::NoSmoothExtension);

      const ComplexPoint w[] = {{0.6, -0.2}, {1.1, 0.7}};
      const auto probe = divergence_probe(atlas, atlas.fan().simplices()[0], {acs.ell, matrix_cast<double>(acs.j0)}, w, 20);
      CHECK(probe.blowup);
    }
  }
}

TEST_CASE("cross check") {
  for (const auto& name : catalog_corpus()) {
    CAPTURE(name);
    const Atlas atlas(catalog_fan(name));
    const auto report = theorem_cross_check(atlas);
    CHECK(report.passed());
    CHECK(report.acs_exists == (report.verdict == Verdict::Toric));
  }
}

TEST_CASE("probe arguments") {
  const Atlas atlas(catalog_fan("cp1"));
  const OrbitACS<double> acs{0, standard_j<double>(1)};
  const ComplexPoint zero[] = {{0.0, 0.0}};
  const ComplexPoint one[] = {{1.0, 0.0}};
  CHECK_THROWS_AS(divergence_probe(atlas, {0}, acs, zero, 10), DomainError);
  CHECK_THROWS_AS(divergence_probe(atlas, {0}, acs, one, 1), std::invalid_argument);
}
