#include "relsym/sampling.hpp"

#include <cmath>
#include <random>

namespace relsym {

std::vector<Momentum> lattice_momentum_samples() {
  constexpr double values[] = {-2.0, -0.7, 0.0, 0.7, 2.0};
  std::vector<Momentum> out;
  out.reserve(125);
  for (double a : values)
    for (double b : values)
      for (double c : values) out.emplace_back(a, b, c);
  return out;
}

std::vector<Momentum> random_ball_samples(std::size_t count, double radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  std::vector<Momentum> out;
  out.reserve(count);
  while (out.size() < count) {
    Momentum p(uniform(rng), uniform(rng), uniform(rng));
    if (p.squaredNorm() <= 1.0) out.push_back(radius * p);
  }
  return out;
}

std::vector<Momentum> standard_momentum_samples(std::uint64_t seed) {
  auto out = lattice_momentum_samples();
  const auto extra = random_ball_samples(100, 5.0, seed);
  out.insert(out.end(), extra.begin(), extra.end());
  return out;
}

}  // namespace relsym
