#pragma once

#include <cstdint>
#include <vector>

#include "relsym/report.hpp"

namespace relsym {

// Every check in a fixed order. The seed drives the grid test fields; the
// momentum samples use their own fixed seed.
std::vector<CheckReport> run_all(std::uint64_t seed);

}  // namespace relsym
