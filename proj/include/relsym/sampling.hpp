#pragma once

#include <cstdint>
#include <vector>

#include "relsym/momentum_function.hpp"

namespace relsym {

inline constexpr std::uint64_t kDefaultSampleSeed = 7;

// The lattice {-2, -0.7, 0, 0.7, 2}^3.
std::vector<Momentum> lattice_momentum_samples();

// count points drawn uniformly from the ball |p| <= radius.
std::vector<Momentum> random_ball_samples(std::size_t count, double radius, std::uint64_t seed);

// Lattice plus 100 seeded random points with |p| <= 5 (225 points).
std::vector<Momentum> standard_momentum_samples(std::uint64_t seed = kDefaultSampleSeed);

}  // namespace relsym
