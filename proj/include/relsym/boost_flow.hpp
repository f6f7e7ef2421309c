#pragma once

// One-parameter boost flows d psi / d theta = i J_0a psi at frozen t = 0 on
// canonical-picture states, integrated with classical Runge-Kutta.

#include <cstdint>
#include <vector>

#include "relsym/dirac.hpp"
#include "relsym/grid.hpp"
#include "relsym/report.hpp"

namespace relsym {

// theta = artanh |V|; ConfigurationError unless |V| < 1.
double rapidity_from_velocity(double velocity);

struct FlowOptions {
  double theta = 0.5;
  double dtheta = 5e-3;
  int record_every = 10;        // steps between recorded samples
  double boundary_limit = 1e-3;  // stop when the field reaches the faces
};

struct FlowSample {
  double theta = 0.0;
  double energy = 0.0;    // <P0>
  double momentum = 0.0;  // <p_a> along the boost axis
  Momentum position = Momentum::Zero();
  double norm = 0.0;
};

struct FlowRecord {
  std::vector<FlowSample> samples;
  bool truncated = false;
  // The q3 boost t p_a - x_a gamma_0 E is not symmetric; it is symmetric in
  // the form <phi, H^c psi>, under which the mixing relations hold, so its
  // energy and momentum are H^c-weighted expectations.
  bool weighted = false;
};

// axis in 0..2. The set must be in the canonical picture.
FlowRecord boost_flow(const OperatorSet& set, int axis, const SpinorField& psi0,
                      const FlowOptions& options);

// Positive-energy canonical packet with <p_axis> close to momentum.
SpinorField boost_test_state(const GridSpec& grid, int axis, double momentum, double sigma = 1.1);

struct BoostConfig {
  SetLabel label = SetLabel::Q3;
  int axis = 0;  // 0..2
  double theta = 0.5;
  double dtheta = 5e-3;
  double mass = 1.0;
  int n = 32;
  double l = 20.0;
  double tol = 1e-4;
};

// Runs the flow and compares (<P0>, <p_a>) with
// <P0>(theta) = E0 cosh theta - p0 sinh theta, <p_a>(theta) = p0 cosh theta - E0 sinh theta,
// the solution of d<P0>/d theta = -<p_a>, d<p_a>/d theta = -<P0>.
CheckReport run_boost(const BoostConfig& config);

}  // namespace relsym
