#pragma once

// Nonsingular complete topological fans and exact validation of their axioms.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "topfan/czalgebra.hpp"
#include "topfan/rational.hpp"

namespace topfan {

/// Sorted 0-based vertex indices.
using Simplex = std::vector<int>;

struct SimplicialComplex {
  int m = 0;
  std::vector<Simplex> maximal;

  SimplicialComplex() = default;
  /// Sorts each simplex; order of the simplices is kept.
  SimplicialComplex(int vertex_count, std::vector<Simplex> maximal_simplices);

  friend bool operator==(const SimplicialComplex&, const SimplicialComplex&) = default;
};

/// Delta = (Sigma, beta). Construction rejects structurally malformed data
/// (m < n, empty complex, wrong simplex size, repeated or out-of-range
/// vertices, beta of the wrong shape) with StructuralError. The fan axioms
/// themselves are checked by validate().
class TopologicalFan {
 public:
  TopologicalFan(int n, SimplicialComplex sc, std::vector<CZVector> beta);

  int n() const noexcept { return n_; }
  int m() const noexcept { return sc_.m; }
  const SimplicialComplex& complex() const noexcept { return sc_; }
  const std::vector<Simplex>& simplices() const noexcept { return sc_.maximal; }
  const std::vector<CZVector>& beta() const noexcept { return beta_; }
  const CZVector& beta(int vertex) const { return beta_.at(static_cast<std::size_t>(vertex)); }

  /// Position of a maximal simplex (any vertex order) in simplices().
  std::optional<std::size_t> index_of(Simplex s) const;
  /// Like index_of, but throws UnknownSimplex.
  std::size_t require_maximal(const Simplex& s) const;

  /// The fan vectors of a maximal simplex, in vertex order.
  std::vector<CZVector> betas_of(const Simplex& s) const;

  friend bool operator==(const TopologicalFan&, const TopologicalFan&) = default;

 private:
  int n_;
  SimplicialComplex sc_;
  std::vector<CZVector> beta_;
};

// ---------------------------------------------------------------------------
// Validation

enum class Axiom { Purity, Pseudomanifold, LinearIndependence, NonOverlap, Completeness, Nonsingularity };

const char* axiom_name(Axiom axiom);

/// Two maximal cones share the interior point `point`.
struct OverlapWitness {
  std::size_t first;
  std::size_t second;
  RationalVector point;
};
/// A direction in no closed cone.
struct UncoveredDirection {
  RationalVector direction;
};
/// A generic point covered `cones` times instead of once.
struct DegreeWitness {
  RationalVector point;
  int cones;
};
/// A codimension-one face that is not a proper wall between two cones.
struct WallWitness {
  Simplex wall;
  std::vector<std::size_t> cofaces;
  std::string reason;
};
struct DeterminantWitness {
  std::size_t simplex;
  Integer det;
};
struct DependentGenerators {
  std::size_t simplex;
};
struct DuplicateSimplex {
  std::size_t first;
  std::size_t second;
};
struct UnusedVertex {
  int vertex;
};
struct DisconnectedWalls {
  std::size_t unreachable;
};

using Witness = std::variant<OverlapWitness, UncoveredDirection, DegreeWitness, WallWitness, DeterminantWitness,
                             DependentGenerators, DuplicateSimplex, UnusedVertex, DisconnectedWalls>;

struct AxiomResult {
  Axiom axiom;
  bool passed = true;
  std::vector<Witness> witnesses;
  std::string detail;
};

struct ValidationReport {
  std::vector<AxiomResult> axioms;
  std::uint64_t seed = 0;
  /// det (v_i^j) for each maximal simplex; the sign is the orientation of the cone.
  std::vector<Integer> v_determinants;

  bool all_passed() const;
  const AxiomResult& result(Axiom axiom) const;
};

inline constexpr std::uint64_t kDefaultValidationSeed = 0x70f4a11;

/// Rows (b_i^1, ..., b_i^n) for i in s. s may be any face of a maximal simplex.
RationalMatrix cone_generators(const TopologicalFan& fan, const Simplex& s);

AxiomResult check_purity(const TopologicalFan& fan);
AxiomResult check_pseudomanifold(const TopologicalFan& fan);
AxiomResult check_linear_independence(const TopologicalFan& fan);
AxiomResult cones_nonoverlapping(const TopologicalFan& fan);
AxiomResult is_complete(const TopologicalFan& fan, std::uint64_t seed = kDefaultValidationSeed);
AxiomResult is_nonsingular(const TopologicalFan& fan);
bool is_ordinary(const TopologicalFan& fan);

/// Runs every check in order and reports all of them.
ValidationReport validate(const TopologicalFan& fan, std::uint64_t seed = kDefaultValidationSeed);

/// Number of maximal cones whose interior contains x, or empty if x lies on
/// the boundary of some cone.
std::optional<int> interior_cover_count(const TopologicalFan& fan, const RationalVector& x);

/// A fan that passes validate(). n must be 1 or 2; for n = 2, size is the
/// number of rays (at least 3).
TopologicalFan random_fan(std::uint64_t seed, int n, int size);

}  // namespace topfan
