#include <array>
#include <random>

#include "topfan/errors.hpp"
#include "topfan/fan.hpp"

namespace topfan {

namespace {

using IntRay = std::array<long, 2>;

Rational random_rational(std::mt19937_64& rng, long lo, long hi, long max_den) {
  const long q = std::uniform_int_distribution<long>(1, max_den)(rng);
  return Rational(std::uniform_int_distribution<long>(lo * q, hi * q)(rng), q);
}

Rational random_positive(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(1, 12);
  std::uniform_int_distribution<long> den(1, 4);
  return Rational(num(rng), den(rng));
}

bool coin(std::mt19937_64& rng, double p) { return std::bernoulli_distribution(p)(rng); }

TopologicalFan random_line(std::mt19937_64& rng) {
  SimplicialComplex sc(2, {{0}, {1}});
  if (coin(rng, 1.0 / 3.0)) return TopologicalFan(1, sc, {{CZMat::scalar(1)}, {CZMat::scalar(-1)}});
  std::uniform_int_distribution<int> pm(0, 1);
  auto c_part = [&] { return coin(rng, 0.5) ? Rational(0) : random_rational(rng, -2, 2, 4); };
  CZMat first(random_positive(rng), c_part(), Integer(pm(rng) ? 1 : -1));
  CZMat second(-random_positive(rng), c_part(), Integer(pm(rng) ? 1 : -1));
  return TopologicalFan(1, sc, {{first}, {second}});
}

// A smooth complete 2D fan: a minimal model (CP^2 or a Hirzebruch surface)
// followed by blow-ups, which insert u_i + u_{i+1} between neighbours. Every
// consecutive pair has determinant 1.
std::vector<IntRay> smooth_polygon(std::mt19937_64& rng, int size) {
  std::vector<IntRay> rays;
  if (size == 3 || coin(rng, 0.25)) {
    rays = {{{1, 0}}, {{0, 1}}, {{-1, -1}}};
  } else {
    std::uniform_int_distribution<long> twist(-3, 3);
    rays = {{{1, 0}}, {{0, 1}}, {{-1, twist(rng)}}, {{0, -1}}};
  }
  while (static_cast<int>(rays.size()) < size) {
    std::uniform_int_distribution<std::size_t> pick(0, rays.size() - 1);
    const std::size_t i = pick(rng);
    const IntRay& a = rays[i];
    const IntRay& b = rays[(i + 1) % rays.size()];
    rays.insert(rays.begin() + static_cast<long>(i) + 1, IntRay{{a[0] + b[0], a[1] + b[1]}});
  }
  return rays;
}

// Product of random elementary matrices; determinant +-1.
std::array<long, 4> random_unimodular(std::mt19937_64& rng) {
  std::array<long, 4> u{1, 0, 0, 1};
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_int_distribution<long> shear(-2, 2);
  const int steps = std::uniform_int_distribution<int>(0, 3)(rng);
  for (int s = 0; s < steps; ++s) {
    std::array<long, 4> e{1, 0, 0, 1};
    switch (kind(rng)) {
      case 0: e[1] = shear(rng); break;
      case 1: e[2] = shear(rng); break;
      default: e = {0, 1, 1, 0}; break;
    }
    u = {u[0] * e[0] + u[1] * e[2], u[0] * e[1] + u[1] * e[3], u[2] * e[0] + u[3] * e[2],
         u[2] * e[1] + u[3] * e[3]};
  }
  return u;
}

std::optional<TopologicalFan> random_surface_attempt(std::mt19937_64& rng, int size) {
  const std::vector<IntRay> rays = smooth_polygon(rng, size);
  const int m = static_cast<int>(rays.size());
  std::vector<Simplex> simplices;
  for (int i = 0; i < m; ++i) simplices.push_back({i, (i + 1) % m});
  SimplicialComplex sc(m, simplices);

  std::vector<CZVector> beta(static_cast<std::size_t>(m), CZVector(2));
  if (coin(rng, 1.0 / 3.0)) {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < 2; ++j) beta[i][j] = CZMat::scalar(rays[i][j]);
    return TopologicalFan(2, sc, beta);
  }

  const auto u = random_unimodular(rng);
  const bool with_c = coin(rng, 0.7);
  Rational wobble(1, 8);
  for (int attempt = 0; attempt < 8; ++attempt, wobble /= 2) {
    for (int i = 0; i < m; ++i) {
      const Rational scale = random_positive(rng);
      const long v0 = u[0] * rays[i][0] + u[1] * rays[i][1];
      const long v1 = u[2] * rays[i][0] + u[3] * rays[i][1];
      const std::array<long, 2> v{v0, v1};
      for (int j = 0; j < 2; ++j) {
        const Rational jitter = random_rational(rng, -1, 1, 8) * wobble;
        const Rational c = with_c && coin(rng, 0.5) ? random_rational(rng, -2, 2, 3) : Rational(0);
        beta[i][j] = CZMat(scale * (Rational(rays[i][j]) + jitter), c, Integer(v[j]));
      }
    }
    TopologicalFan fan(2, sc, beta);
    if (validate(fan).all_passed()) return fan;
  }
  return std::nullopt;
}

}  // namespace

TopologicalFan random_fan(std::uint64_t seed, int n, int size) {
  if (n != 1 && n != 2) throw std::invalid_argument("random_fan supports n = 1 or 2");
  std::mt19937_64 rng(seed);
  constexpr int kRetries = 32;
  for (int attempt = 0; attempt < kRetries; ++attempt) {
    if (n == 1) {
      TopologicalFan fan = random_line(rng);
      if (validate(fan).all_passed()) return fan;
      continue;
    }
    if (auto fan = random_surface_attempt(rng, std::max(size, 3))) return *fan;
  }
  throw GenerationFailure("random_fan: no valid fan after " + std::to_string(kRetries) + " attempts");
}

}  // namespace topfan
