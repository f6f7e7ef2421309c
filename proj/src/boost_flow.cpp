#include "relsym/boost_flow.hpp"

#include <chrono>
#include <cmath>

namespace relsym {

double rapidity_from_velocity(double velocity) {
  if (!std::isfinite(velocity) || std::abs(velocity) >= 1.0)
    throw ConfigurationError("velocity must satisfy |V| < 1");
  return std::atanh(std::abs(velocity));
}

namespace {

FlowSample measure(double theta, const SpinorField& psi, const CompiledOperator& p0,
                   const CompiledOperator& pa, const std::array<CompiledOperator, 3>& x,
                   bool weighted) {
  FlowSample s;
  s.theta = theta;
  s.norm = psi.norm();
  const auto e_psi = p0.apply(psi, 0.0);
  const auto p_psi = pa.apply(psi, 0.0);
  if (weighted) {
    const double w = inner_product(psi, e_psi).real();
    s.energy = inner_product(e_psi, e_psi).real() / w;
    s.momentum = inner_product(e_psi, p_psi).real() / w;
  } else {
    const double w = s.norm * s.norm;
    s.energy = inner_product(psi, e_psi).real() / w;
    s.momentum = inner_product(psi, p_psi).real() / w;
  }
  for (int a = 0; a < 3; ++a)
    s.position(a) = inner_product(psi, x[a].apply(psi, 0.0)).real() / (s.norm * s.norm);
  return s;
}

}  // namespace

FlowRecord boost_flow(const OperatorSet& set, int axis, const SpinorField& psi0,
                      const FlowOptions& options) {
  if (axis < 0 || axis > 2) throw ConfigurationError("boost axis must be 1, 2 or 3");
  if (set.picture != Picture::Canonical)
    throw ConfigurationError("boost flows act on canonical-picture states");
  if (!(options.dtheta > 0) || !(options.theta >= 0) || options.record_every < 1)
    throw ConfigurationError("boost flow: bad step settings");
  const auto& grid = psi0.grid();
  const CompiledOperator j(grid, set.boost[axis]);
  const CompiledOperator p0(grid, set.p0);
  const CompiledOperator pa(grid, set.p[axis]);
  const std::array<CompiledOperator, 3> x{
      CompiledOperator(grid, CanonicalOperator::position(0, set.dim)),
      CompiledOperator(grid, CanonicalOperator::position(1, set.dim)),
      CompiledOperator(grid, CanonicalOperator::position(2, set.dim))};

  FlowRecord record;
  record.weighted = set.label == SetLabel::Q3;
  const Complex i(0.0, 1.0);
  auto rhs = [&](const SpinorField& psi) { return i * j.apply(psi, 0.0); };

  const int steps = static_cast<int>(std::llround(options.theta / options.dtheta));
  const double h = steps > 0 ? options.theta / steps : 0.0;
  SpinorField psi = psi0;
  record.samples.push_back(measure(0.0, psi, p0, pa, x, record.weighted));
  for (int step = 1; step <= steps; ++step) {
    const auto k1 = rhs(psi);
    const auto k2 = rhs(psi + Complex(0.5 * h) * k1);
    const auto k3 = rhs(psi + Complex(0.5 * h) * k2);
    const auto k4 = rhs(psi + Complex(h) * k3);
    psi.values() += (h / 6.0) * (k1.values() + 2.0 * k2.values() + 2.0 * k3.values() + k4.values());
    if (step % options.record_every == 0 || step == steps) {
      if (psi.boundary_ratio() > options.boundary_limit || !psi.is_finite()) {
        record.truncated = true;
        break;
      }
      record.samples.push_back(measure(step * h, psi, p0, pa, x, record.weighted));
    }
  }
  return record;
}

SpinorField boost_test_state(const GridSpec& grid, int axis, double momentum, double sigma) {
  WavepacketParams wp;
  wp.sigma = sigma;
  wp.momentum = Momentum::Zero();
  wp.momentum(axis) = momentum;
  wp.center = Momentum::Constant(-0.5 * grid.spacing());
  wp.amplitudes = Eigen::VectorXcd::Zero(grid.components);
  // Upper components only: positive energy for gamma_0 E in the Dirac-Pauli form.
  wp.amplitudes(0) = Complex(0.8, 0.0);
  wp.amplitudes(1) = Complex(0.0, 0.6);
  return gaussian_wavepacket(grid, wp);
}

CheckReport run_boost(const BoostConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  if (config.axis < 0 || config.axis > 2) throw ConfigurationError("boost axis must be 1, 2 or 3");
  DiracContext ctx;
  try {
    ctx = build_context(config.mass);
  } catch (const PreconditionError& e) {
    throw ConfigurationError(e.what());
  }
  GridSpec grid;
  grid.n = config.n;
  grid.length = config.l;
  grid.mass = config.mass;
  grid.components = 4;
  const auto set = build_set(config.label, ctx, Picture::Canonical);
  const auto psi0 = boost_test_state(grid, config.axis, 1.0);
  FlowOptions options;
  options.theta = config.theta;
  options.dtheta = config.dtheta;
  const auto record = boost_flow(set, config.axis, psi0, options);

  CheckReport report;
  report.check = "boost " + to_string(config.label) + " axis " + std::to_string(config.axis + 1);
  report.params = {grid.n, grid.length, config.mass, config.tol, 0};
  const auto& first = record.samples.front();
  const double scale = std::max(1.0, std::abs(first.energy));
  double energy_error = 0.0, momentum_error = 0.0, norm_drift = 0.0;
  for (const auto& s : record.samples) {
    const double c = std::cosh(s.theta), sh = std::sinh(s.theta);
    energy_error = std::max(energy_error,
                            std::abs(s.energy - (first.energy * c - first.momentum * sh)) / scale);
    momentum_error = std::max(
        momentum_error, std::abs(s.momentum - (first.momentum * c - first.energy * sh)) / scale);
    norm_drift = std::max(norm_drift, std::abs(s.norm - first.norm));
  }
  report.add_bound("mixing_energy", energy_error, config.tol);
  report.add_bound("mixing_momentum", momentum_error, config.tol);
  report.add_bound("truncated", record.truncated ? 1.0 : 0.0, 0.0);
  const bool symmetric = config.label == SetLabel::Q1 || config.label == SetLabel::Q2;
  if (symmetric)
    report.add_bound("norm_drift", norm_drift, 1e-8);
  else
    report.add_info("norm_drift", norm_drift);
  const auto& last = record.samples.back();
  report.add_info("theta_reached", last.theta);
  report.add_info("energy_final", last.energy);
  report.add_info("momentum_final", last.momentum);
  report.add_info("position_final", last.position(config.axis));
  report.add_info("weighted_expectations", record.weighted ? 1.0 : 0.0);

  // <phi, J psi> - <J phi, psi> for the test state and a shifted partner.
  WavepacketParams wp;
  wp.sigma = 1.1;
  wp.center = Momentum::Constant(-0.5 * grid.spacing());
  wp.center(config.axis) += 0.7;
  wp.momentum = Momentum(0.3, -0.2, 0.4);
  wp.amplitudes = Eigen::VectorXcd::Zero(4);
  wp.amplitudes(0) = 1.0;
  wp.amplitudes(3) = Complex(0.0, 0.5);
  const auto phi = gaussian_wavepacket(grid, wp);
  const CompiledOperator j(grid, set.boost[config.axis]);
  const double defect = std::abs(inner_product(phi, j.apply(psi0, 0.0)) -
                                 inner_product(j.apply(phi, 0.0), psi0));
  report.add_info("symmetry_defect", defect);
  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace relsym
