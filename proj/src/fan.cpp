#include "topfan/fan.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <string>

#include "topfan/errors.hpp"
#include "topfan/fourier_motzkin.hpp"
#include "topfan/linalg.hpp"

namespace topfan {

SimplicialComplex::SimplicialComplex(int vertex_count, std::vector<Simplex> maximal_simplices)
    : m(vertex_count), maximal(std::move(maximal_simplices)) {
  for (auto& s : maximal) std::sort(s.begin(), s.end());
}

TopologicalFan::TopologicalFan(int n, SimplicialComplex sc, std::vector<CZVector> beta)
    : n_(n), sc_(std::move(sc)), beta_(std::move(beta)) {
  if (n_ < 1) throw StructuralError("fan dimension must be positive");
  if (sc_.m < n_) throw StructuralError("fewer vertices than the dimension (m < n)");
  if (sc_.maximal.empty()) throw StructuralError("empty simplicial complex");
  if (static_cast<int>(beta_.size()) != sc_.m)
    throw StructuralError("beta has " + std::to_string(beta_.size()) + " vectors, expected m = " +
                          std::to_string(sc_.m));
  for (std::size_t i = 0; i < beta_.size(); ++i)
    if (static_cast<int>(beta_[i].size()) != n_)
      throw StructuralError("beta vector " + std::to_string(i + 1) + " has wrong length");
  for (auto& s : sc_.maximal) {
    std::sort(s.begin(), s.end());
    if (static_cast<int>(s.size()) != n_)
      throw StructuralError("maximal simplex of size " + std::to_string(s.size()) + ", expected " +
                            std::to_string(n_));
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw StructuralError("repeated vertex in a simplex");
    if (s.front() < 0 || s.back() >= sc_.m) throw StructuralError("vertex out of range");
  }
}

std::optional<std::size_t> TopologicalFan::index_of(Simplex s) const {
  std::sort(s.begin(), s.end());
  const auto it = std::find(sc_.maximal.begin(), sc_.maximal.end(), s);
  if (it == sc_.maximal.end()) return std::nullopt;
  return static_cast<std::size_t>(it - sc_.maximal.begin());
}

std::size_t TopologicalFan::require_maximal(const Simplex& s) const {
  if (const auto idx = index_of(s)) return *idx;
  throw UnknownSimplex("not a maximal simplex of the fan");
}

std::vector<CZVector> TopologicalFan::betas_of(const Simplex& s) const {
  std::vector<CZVector> out;
  out.reserve(s.size());
  for (int i : s) out.push_back(beta(i));
  return out;
}

const char* axiom_name(Axiom axiom) {
  switch (axiom) {
    case Axiom::Purity: return "purity";
    case Axiom::Pseudomanifold: return "pseudomanifold";
    case Axiom::LinearIndependence: return "linear_independence";
    case Axiom::NonOverlap: return "non_overlap";
    case Axiom::Completeness: return "completeness";
    case Axiom::Nonsingularity: return "nonsingularity";
  }
  return "unknown";
}

bool ValidationReport::all_passed() const {
  return std::all_of(axioms.begin(), axioms.end(), [](const AxiomResult& r) { return r.passed; });
}

const AxiomResult& ValidationReport::result(Axiom axiom) const {
  for (const auto& r : axioms)
    if (r.axiom == axiom) return r;
  throw std::out_of_range("axiom not in report");
}

RationalMatrix cone_generators(const TopologicalFan& fan, const Simplex& s) {
  const bool is_face = std::any_of(fan.simplices().begin(), fan.simplices().end(), [&](const Simplex& max) {
    Simplex sorted = s;
    std::sort(sorted.begin(), sorted.end());
    return std::includes(max.begin(), max.end(), sorted.begin(), sorted.end());
  });
  if (!is_face) throw UnknownSimplex("not a simplex of the fan");
  RationalMatrix g(static_cast<Eigen::Index>(s.size()), fan.n());
  for (std::size_t r = 0; r < s.size(); ++r)
    for (int j = 0; j < fan.n(); ++j) g(static_cast<Eigen::Index>(r), j) = fan.beta(s[r])[j].b;
  return g;
}

namespace {

// Codimension-one faces and the maximal simplices containing them.
std::map<Simplex, std::vector<std::size_t>> wall_table(const TopologicalFan& fan) {
  std::map<Simplex, std::vector<std::size_t>> walls;
  const auto& simplices = fan.simplices();
  for (std::size_t idx = 0; idx < simplices.size(); ++idx) {
    const Simplex& s = simplices[idx];
    for (std::size_t drop = 0; drop < s.size(); ++drop) {
      Simplex wall;
      for (std::size_t k = 0; k < s.size(); ++k)
        if (k != drop) wall.push_back(s[k]);
      walls[wall].push_back(idx);
    }
  }
  return walls;
}

int opposite_vertex(const Simplex& s, const Simplex& wall) {
  for (int v : s)
    if (!std::binary_search(wall.begin(), wall.end(), v)) return v;
  return -1;
}

int sign_of(const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

RationalVector ray(const TopologicalFan& fan, int vertex) {
  RationalVector g(fan.n());
  for (int j = 0; j < fan.n(); ++j) g(j) = fan.beta(vertex)[j].b;
  return g;
}

bool in_some_closed_cone(const TopologicalFan& fan, const RationalVector& x) {
  for (const auto& s : fan.simplices())
    if (cone_contains(cone_generators(fan, s), x, false)) return true;
  return false;
}

RationalVector random_point(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<long> coord(-(1L << 20), 1L << 20);
  RationalVector x(n);
  do {
    for (int j = 0; j < n; ++j) x(j) = Rational(coord(rng));
  } while ((x.array() == Rational(0)).all());
  return x;
}

// Steps off every wall that bounds a single cone, towards the side away from
// that cone, until the point leaves all cones.
std::optional<RationalVector> uncovered_across_boundary(const TopologicalFan& fan) {
  for (const auto& [wall, cofaces] : wall_table(fan)) {
    if (cofaces.size() != 1) continue;
    const RationalMatrix normals = exact_nullspace<Rational>(cone_generators(fan, wall));
    if (normals.cols() != 1) continue;
    const RationalVector u = normals.col(0);
    const int p = opposite_vertex(fan.simplices()[cofaces.front()], wall);
    const int side = sign_of(u.dot(ray(fan, p)));
    if (side == 0) continue;
    RationalVector centre = RationalVector::Zero(fan.n());
    for (int v : wall) centre += ray(fan, v);
    Rational step(1);
    for (int attempt = 0; attempt < 64; ++attempt, step /= 2) {
      const RationalVector x = centre - Rational(side) * step * u;
      if (!(x.array() == Rational(0)).all() && !in_some_closed_cone(fan, x)) return x;
    }
  }
  return std::nullopt;
}

// The positive multiple of x with coprime integer entries.
RationalVector primitive(const RationalVector& x) {
  Integer scale(1);
  for (Eigen::Index j = 0; j < x.size(); ++j) scale = boost::multiprecision::lcm(scale, denominator(x(j)));
  Integer g(0);
  for (Eigen::Index j = 0; j < x.size(); ++j) g = boost::multiprecision::gcd(g, numerator(x(j) * Rational(scale)));
  if (g == 0) return x;
  RationalVector out(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) out(j) = x(j) * Rational(scale) / Rational(g);
  return out;
}

std::optional<RationalVector> uncovered_by_sampling(const TopologicalFan& fan, std::uint64_t seed, int samples) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  for (int k = 0; k < samples; ++k) {
    const RationalVector x = random_point(rng, fan.n());
    if (!in_some_closed_cone(fan, x)) return x;
  }
  return std::nullopt;
}

}  // namespace

std::optional<int> interior_cover_count(const TopologicalFan& fan, const RationalVector& x) {
  int count = 0;
  for (const auto& s : fan.simplices()) {
    const RationalMatrix g = cone_generators(fan, s);
    if (cone_contains(g, x, true)) {
      ++count;
    } else if (cone_contains(g, x, false)) {
      return std::nullopt;
    }
  }
  return count;
}

AxiomResult check_purity(const TopologicalFan& fan) {
  AxiomResult r{Axiom::Purity, true, {}, {}};
  const auto& simplices = fan.simplices();
  for (std::size_t a = 0; a < simplices.size(); ++a)
    for (std::size_t b = a + 1; b < simplices.size(); ++b)
      if (simplices[a] == simplices[b]) {
        r.passed = false;
        r.witnesses.push_back(DuplicateSimplex{a, b});
      }
  std::vector<bool> used(static_cast<std::size_t>(fan.m()), false);
  for (const auto& s : simplices)
    for (int v : s) used[static_cast<std::size_t>(v)] = true;
  for (int v = 0; v < fan.m(); ++v)
    if (!used[static_cast<std::size_t>(v)]) {
      r.passed = false;
      r.witnesses.push_back(UnusedVertex{v});
    }
  return r;
}

AxiomResult check_pseudomanifold(const TopologicalFan& fan) {
  AxiomResult r{Axiom::Pseudomanifold, true, {}, {}};
  for (const auto& [wall, cofaces] : wall_table(fan)) {
    if (cofaces.size() == 2) continue;
    r.passed = false;
    r.witnesses.push_back(
        WallWitness{wall, cofaces, "in " + std::to_string(cofaces.size()) + " maximal simplices, expected 2"});
  }
  return r;
}

AxiomResult check_linear_independence(const TopologicalFan& fan) {
  AxiomResult r{Axiom::LinearIndependence, true, {}, {}};
  for (std::size_t idx = 0; idx < fan.simplices().size(); ++idx)
    if (exact_determinant<Rational>(cone_generators(fan, fan.simplices()[idx])) == 0) {
      r.passed = false;
      r.witnesses.push_back(DependentGenerators{idx});
    }
  return r;
}

AxiomResult cones_nonoverlapping(const TopologicalFan& fan) {
  AxiomResult r{Axiom::NonOverlap, true, {}, {}};
  const auto& simplices = fan.simplices();
  const int n = fan.n();
  for (std::size_t a = 0; a < simplices.size(); ++a) {
    const RationalMatrix ga = cone_generators(fan, simplices[a]);
    for (std::size_t b = a + 1; b < simplices.size(); ++b) {
      const RationalMatrix gb = cone_generators(fan, simplices[b]);
      const Eigen::Index ka = ga.rows(), kb = gb.rows();
      // sum_i a_i g_i - sum_k b_k g_k = 0 with all coefficients positive.
      std::vector<LinearConstraint> cons;
      for (int j = 0; j < n; ++j) {
        RationalVector row(ka + kb);
        row << ga.col(j), -gb.col(j);
        cons.push_back({row, Rational(0), Relation::Equal});
      }
      for (Eigen::Index k = 0; k < ka + kb; ++k) {
        RationalVector e = RationalVector::Zero(ka + kb);
        e(k) = 1;
        cons.push_back({e, Rational(0), Relation::Greater});
      }
      if (const auto sol = find_feasible_point(cons, ka + kb)) {
        const RationalVector point = ga.transpose() * sol->head(ka);
        r.passed = false;
        r.witnesses.push_back(OverlapWitness{a, b, point});
      }
    }
  }
  return r;
}

AxiomResult is_complete(const TopologicalFan& fan, std::uint64_t seed) {
  AxiomResult r{Axiom::Completeness, true, {}, {}};
  const auto& simplices = fan.simplices();
  const auto walls = wall_table(fan);

  // (1) every wall in exactly two cones, (2) the opposite rays on strictly
  // opposite sides of the wall's hyperplane.
  std::vector<std::vector<std::size_t>> adjacent(simplices.size());
  for (const auto& [wall, cofaces] : walls) {
    if (cofaces.size() != 2) {
      r.passed = false;
      r.witnesses.push_back(WallWitness{wall, cofaces, "wall is not shared by exactly two cones"});
      continue;
    }
    adjacent[cofaces[0]].push_back(cofaces[1]);
    adjacent[cofaces[1]].push_back(cofaces[0]);
    const RationalMatrix normals = exact_nullspace<Rational>(cone_generators(fan, wall));
    if (normals.cols() != 1) {
      r.passed = false;
      r.witnesses.push_back(WallWitness{wall, cofaces, "wall generators do not span a hyperplane"});
      continue;
    }
    const RationalVector u = normals.col(0);
    const int sp = sign_of(u.dot(ray(fan, opposite_vertex(simplices[cofaces[0]], wall))));
    const int sq = sign_of(u.dot(ray(fan, opposite_vertex(simplices[cofaces[1]], wall))));
    if (sp * sq != -1) {
      r.passed = false;
      r.witnesses.push_back(WallWitness{wall, cofaces, "adjacent cones do not lie on opposite sides of the wall"});
    }
  }

  // (3) the wall-adjacency graph is connected.
  std::vector<bool> seen(simplices.size(), false);
  std::queue<std::size_t> frontier;
  frontier.push(0);
  seen[0] = true;
  while (!frontier.empty()) {
    const std::size_t cur = frontier.front();
    frontier.pop();
    for (std::size_t nb : adjacent[cur])
      if (!seen[nb]) {
        seen[nb] = true;
        frontier.push(nb);
      }
  }
  for (std::size_t idx = 0; idx < simplices.size(); ++idx)
    if (!seen[idx]) {
      r.passed = false;
      r.witnesses.push_back(DisconnectedWalls{idx});
      break;
    }

  // (4) generic points are covered exactly once.
  std::mt19937_64 rng(seed);
  constexpr int kSamples = 16;
  constexpr int kMaxDraws = kSamples * 64;
  int accepted = 0;
  bool degree_failed = false;
  std::optional<RationalVector> sampled_gap;
  for (int draws = 0; accepted < kSamples && draws < kMaxDraws; ++draws) {
    const RationalVector x = random_point(rng, fan.n());
    const auto count = interior_cover_count(fan, x);
    if (!count) continue;  // boundary hit, resample
    ++accepted;
    if (*count == 1) continue;
    r.passed = false;
    degree_failed = true;
    if (*count == 0) {
      sampled_gap = x;
    } else {
      r.witnesses.push_back(DegreeWitness{x, *count});
    }
    break;
  }
  if (accepted < kSamples && !degree_failed) {
    r.passed = false;
    r.detail = "degree sampling kept landing on cone boundaries";
  }

  if (!r.passed) {
    // Prefer the short direction found next to an unshared wall.
    auto direction = uncovered_across_boundary(fan);
    if (!direction) direction = sampled_gap;
    if (!direction) direction = uncovered_by_sampling(fan, seed, 256);
    if (direction) r.witnesses.push_back(UncoveredDirection{primitive(*direction)});
  }
  return r;
}

AxiomResult is_nonsingular(const TopologicalFan& fan) {
  AxiomResult r{Axiom::Nonsingularity, true, {}, {}};
  const int n = fan.n();
  for (std::size_t idx = 0; idx < fan.simplices().size(); ++idx) {
    const Simplex& s = fan.simplices()[idx];
    IntegerMatrix v(n, n);
    for (int row = 0; row < n; ++row)
      for (int j = 0; j < n; ++j) v(row, j) = fan.beta(s[static_cast<std::size_t>(row)])[j].v;
    const Integer det = exact_determinant(v);
    if (det != 1 && det != -1) {
      r.passed = false;
      r.witnesses.push_back(DeterminantWitness{idx, det});
    }
  }
  return r;
}

bool is_ordinary(const TopologicalFan& fan) {
  for (const auto& beta : fan.beta())
    for (const auto& entry : beta)
      if (entry.c != 0 || entry.b != Rational(entry.v)) return false;
  return true;
}

ValidationReport validate(const TopologicalFan& fan, std::uint64_t seed) {
  ValidationReport report;
  report.seed = seed;
  report.axioms.push_back(check_purity(fan));
  report.axioms.push_back(check_pseudomanifold(fan));
  report.axioms.push_back(check_linear_independence(fan));
  report.axioms.push_back(cones_nonoverlapping(fan));
  report.axioms.push_back(is_complete(fan, seed));
  report.axioms.push_back(is_nonsingular(fan));

  const int n = fan.n();
  for (const auto& s : fan.simplices()) {
    IntegerMatrix v(n, n);
    for (int row = 0; row < n; ++row)
      for (int j = 0; j < n; ++j) v(row, j) = fan.beta(s[static_cast<std::size_t>(row)])[j].v;
    report.v_determinants.push_back(exact_determinant(v));
  }
  return report;
}

}  // namespace topfan
