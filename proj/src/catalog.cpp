#include "topfan/catalog.hpp"

#include <algorithm>
#include <stdexcept>

#include "topfan/errors.hpp"

namespace topfan {

namespace {

constexpr std::string_view kHirzebruchPrefix = "hirzebruch-";

CZVector diagonal(std::initializer_list<long> entries) {
  CZVector out;
  for (long a : entries) out.push_back(CZMat::scalar(a));
  return out;
}

}  // namespace

TopologicalFan projective_space(int n) {
  if (n < 1) throw std::invalid_argument("projective_space: n must be positive");
  std::vector<CZVector> beta;
  for (int i = 0; i < n; ++i) {
    CZVector e(static_cast<std::size_t>(n), CZMat::zero());
    e[static_cast<std::size_t>(i)] = CZMat::identity();
    beta.push_back(std::move(e));
  }
  beta.push_back(CZVector(static_cast<std::size_t>(n), CZMat::scalar(-1)));

  // Every n-subset of the n + 1 vertices, in lexicographic order.
  std::vector<Simplex> simplices;
  for (int omit = n; omit >= 0; --omit) {
    Simplex s;
    for (int v = 0; v <= n; ++v)
      if (v != omit) s.push_back(v);
    simplices.push_back(std::move(s));
  }
  return TopologicalFan(n, SimplicialComplex(n + 1, std::move(simplices)), std::move(beta));
}

TopologicalFan hirzebruch(long a) {
  std::vector<CZVector> beta{diagonal({1, 0}), diagonal({0, 1}), diagonal({-1, a}), diagonal({0, -1})};
  SimplicialComplex sc(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  return TopologicalFan(2, std::move(sc), std::move(beta));
}

std::vector<std::string> catalog_names() {
  return {"cp1", "cp2", "cp3", "cp4", "hirzebruch-A", "nontoric-line", "nontoric-surface"};
}

std::vector<std::string> catalog_corpus() {
  return {"cp1",          "cp2",          "cp3",          "cp4",           "hirzebruch-0",
          "hirzebruch-1", "hirzebruch-2", "hirzebruch-3", "nontoric-line", "nontoric-surface"};
}

TopologicalFan catalog_fan(std::string_view name) {
  if (name.size() == 3 && name.substr(0, 2) == "cp" && name[2] >= '1' && name[2] <= '4')
    return projective_space(name[2] - '0');
  if (name.substr(0, kHirzebruchPrefix.size()) == kHirzebruchPrefix) {
    try {
      const Integer a = parse_integer(name.substr(kHirzebruchPrefix.size()));
      if (abs(a) <= 1000000) return hirzebruch(a.convert_to<long>());
    } catch (const std::invalid_argument&) {
    }
    throw UnknownCatalogEntry("hirzebruch twist must be an integer of modest size: '" + std::string(name) + "'");
  }
  if (name == "nontoric-line") {
    // beta_2 = (-2, 0, -1): the real part is a negative ray but b != v.
    const CZVector first{CZMat::identity()};
    const CZVector second{CZMat(Rational(-2), Rational(0), Integer(-1))};
    return TopologicalFan(1, SimplicialComplex(2, {{0}, {1}}), {first, second});
  }
  if (name == "nontoric-surface") {
    // CP^2 combinatorics; beta_1^2 = (0 + i, 0) twists the first ray.
    const CZVector first{CZMat::identity(), CZMat(Rational(0), Rational(1), Integer(0))};
    return TopologicalFan(2, SimplicialComplex(3, {{0, 1}, {0, 2}, {1, 2}}),
                          {first, diagonal({0, 1}), diagonal({-1, -1})});
  }
  throw UnknownCatalogEntry("unknown catalog entry '" + std::string(name) + "'");
}

}  // namespace topfan
