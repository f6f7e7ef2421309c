#include "relsym/verify.hpp"

#include <chrono>
#include <cstdio>
#include <cmath>
#include <map>
#include <random>

#include "relsym/parallel.hpp"
#include "relsym/sampling.hpp"

namespace relsym {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double spectral_norm(const Matrix& m) {
  return Eigen::JacobiSVD<Matrix>(m).singularValues()(0);
}

Eigen::VectorXcd random_amplitudes(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::VectorXcd v(d);
  for (int k = 0; k < d; ++k) v(k) = Complex(normal(rng), normal(rng));
  return v;
}

std::vector<WavepacketParams> packet_params(const GridSpec& grid, int d,
                                            const TestFieldOptions& options) {
  if (options.count < 1) throw ConfigurationError("test field count must be positive");
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<WavepacketParams> out;
  for (int f = 0; f < options.count; ++f) {
    WavepacketParams wp;
    Momentum dir(normal(rng), normal(rng), normal(rng));
    dir.normalize();
    const double mag =
        options.min_momentum + (options.max_momentum - options.min_momentum) * unit(rng);
    wp.momentum = mag * dir;
    // Half a cell left of the origin keeps both faces of every axis equally far.
    for (int a = 0; a < 3; ++a)
      wp.center(a) = -0.5 * grid.spacing() + options.center_jitter * (2.0 * unit(rng) - 1.0);
    wp.sigma = options.sigma;
    wp.amplitudes = random_amplitudes(d, rng);
    out.push_back(std::move(wp));
  }
  return out;
}

// max_j ||P (i D phi_j - H phi_j)|| / ||phi_j|| over interior samples, D the
// fourth-order central difference.
double stencil_residual(const std::vector<SpinorField>& phi, double dt,
                        const CompiledOperator& hamiltonian, const Eigen::MatrixXcd* projector) {
  double worst = 0.0;
  for (std::size_t j = 2; j + 2 < phi.size(); ++j) {
    const double size = phi[j].norm();
    if (size == 0.0) continue;
    SpinorField r = phi[j - 2];
    r.values() += -8.0 * phi[j - 1].values() + 8.0 * phi[j + 1].values() - phi[j + 2].values();
    r *= Complex(0.0, 1.0 / (12.0 * dt));
    r -= hamiltonian.apply(phi[j], 0.0);
    if (projector) {
      auto spectrum = forward_transform(r);
      multiply_pointwise(*projector, r.components(), spectrum);
      r = inverse_transform(r.grid(), std::move(spectrum));
    }
    worst = std::max(worst, r.norm() / size);
  }
  return worst;
}

CanonicalOperator time_momentum_operator(int axis, int dim) {
  return CanonicalOperator::monomial(Monomial::time(),
                                     MomentumFunction::component(axis) * MomentumFunction::identity(dim));
}

}  // namespace

std::vector<SpinorField> dirac_test_fields(const GridSpec& grid, const TestFieldOptions& options) {
  std::vector<SpinorField> out;
  for (const auto& wp : packet_params(grid, grid.components, options))
    out.push_back(gaussian_wavepacket(grid, wp));
  return out;
}

std::vector<SpinorField> maxwell_test_fields(const MaxwellContext& ctx, const GridSpec& grid,
                                             const TestFieldOptions& options) {
  std::vector<SpinorField> out;
  for (const auto& wp : packet_params(grid, grid.components, options))
    out.push_back(make_transverse_field(ctx, grid, wp));
  return out;
}

CheckReport check_invariance(const OperatorSet& set, std::span<const SpinorField> fields,
                             const InvarianceOptions& options, std::span<const Generator> controls,
                             std::span<const Generator> extras, const MomentumFunction* projector) {
  const auto start = Clock::now();
  if (fields.size() < 3)
    throw ConfigurationError("check_invariance: need at least 3 test fields");
  if (options.time_samples < 5)
    throw ConfigurationError("check_invariance: need at least 5 time samples");
  const GridSpec grid = fields[0].grid();
  if (grid.components != set.dim)
    throw ConfigurationError("check_invariance: field components do not match the set");

  CheckReport report;
  report.check = "invariance " + set.description();
  report.params = {grid.n, grid.length, set.mass, options.tol, 0};

  double boundary = 0.0;
  for (const auto& f : fields) boundary = std::max(boundary, f.boundary_ratio());
  if (boundary > kBoundaryDecay)
    throw ConfigurationError("check_invariance: test fields reach the box boundary (ratio " +
                             format_real(boundary) + ")");

  const Propagator propagator(grid, set.hamiltonian);
  const CompiledOperator hamiltonian(grid, CanonicalOperator::multiplier(set.hamiltonian));
  std::optional<Eigen::MatrixXcd> projection;
  if (projector) projection = tabulate(grid, *projector);
  const Eigen::MatrixXcd* proj = projection ? &*projection : nullptr;

  std::vector<double> times(options.time_samples);
  for (int j = 0; j < options.time_samples; ++j)
    times[j] = options.t0 + (j - 0.5 * (options.time_samples - 1)) * options.dt;

  std::vector<std::vector<SpinorField>> trajectories(fields.size());
  std::vector<double> floors(fields.size());
  parallel_for(fields.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t f = begin; f < end; ++f) {
      for (double t : times) trajectories[f].push_back(propagator.evolve(fields[f], t));
      floors[f] = stencil_residual(trajectories[f], options.dt, hamiltonian, proj);
    }
  });
  const double floor = *std::max_element(floors.begin(), floors.end());
  if (!(floor <= options.tol / 10))
    throw ConfigurationError("check_invariance: stencil floor " + format_real(floor) +
                             " exceeds tol/10; reduce the time step or raise the tolerance");

  struct Job {
    std::string name;
    const CanonicalOperator* op;
    ItemKind kind;
  };
  const auto generators = set.generators();
  std::vector<Job> jobs;
  for (const auto& g : generators) jobs.push_back({g.name, &g.op, ItemKind::Bound});
  for (const auto& g : controls) jobs.push_back({"control:" + g.name, &g.op, ItemKind::Control});
  for (const auto& g : extras) jobs.push_back({g.name, &g.op, ItemKind::Info});

  std::vector<std::optional<CompiledOperator>> compiled(jobs.size());
  for (std::size_t k = 0; k < jobs.size(); ++k) compiled[k].emplace(grid, *jobs[k].op);

  const std::size_t nf = fields.size();
  std::vector<double> residuals(jobs.size() * nf);
  parallel_for(residuals.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t task = begin; task < end; ++task) {
      const std::size_t k = task / nf, f = task % nf;
      std::vector<SpinorField> phi;
      phi.reserve(times.size());
      for (std::size_t j = 0; j < times.size(); ++j)
        phi.push_back(compiled[k]->apply(trajectories[f][j], times[j]));
      residuals[task] = stencil_residual(phi, options.dt, hamiltonian, proj);
    }
  });

  for (std::size_t k = 0; k < jobs.size(); ++k) {
    double worst = 0.0;
    for (std::size_t f = 0; f < nf; ++f) {
      const double r = residuals[k * nf + f];
      worst = std::isnan(r) ? r : std::max(worst, r);
    }
    switch (jobs[k].kind) {
      case ItemKind::Bound: report.add_bound(jobs[k].name, worst, options.tol); break;
      case ItemKind::Control: report.add_control(jobs[k].name, worst, options.control_floor); break;
      case ItemKind::Info: report.add_info(jobs[k].name, worst); break;
    }
  }
  report.add_info("stencil_floor", floor);
  report.add_info("boundary_ratio", boundary);
  report.wall_time_s = seconds_since(start);
  return report;
}

CheckReport run_invariance(const InvarianceConfig& config) {
  const auto start = Clock::now();
  GridSpec grid;
  grid.n = config.n;
  grid.length = config.l;
  grid.mass = config.equation == Equation::Dirac ? config.mass : 0.0;
  grid.components = config.equation == Equation::Dirac ? 4 : 6;
  try {
    grid.validate();
  } catch (const PreconditionError& e) {
    throw ConfigurationError(e.what());
  }
  if (!(config.tol > 0)) throw ConfigurationError("tolerance must be positive");
  TestFieldOptions field_options;
  field_options.count = config.fields;
  field_options.seed = config.seed;
  InvarianceOptions options;
  options.tol = config.tol;

  CheckReport report;
  if (config.equation == Equation::Dirac) {
    DiracContext ctx;
    try {
      ctx = build_context(config.mass);
    } catch (const PreconditionError& e) {
      throw ConfigurationError(e.what());
    }
    const auto set = build_set(config.label, ctx, config.picture);
    std::vector<Generator> controls;
    for (int a = 0; a < 3; ++a)
      controls.push_back({"J0" + std::to_string(a + 1),
                          negative_control_boost(config.label, config.picture, ctx, a)});
    std::vector<SpinorField> fields;
    try {
      fields = dirac_test_fields(grid, field_options);
    } catch (const PreconditionError& e) {
      throw ConfigurationError(e.what());
    }
    report = check_invariance(set, fields, options, controls);
  } else {
    if (config.label != SetLabel::Q1 && config.label != SetLabel::Q2)
      throw ConfigurationError("Maxwell generator sets exist for q1 and q2 only");
    const auto ctx = build_maxwell_context();
    const auto set = build_maxwell_set(config.label, ctx, config.picture);
    std::vector<Generator> controls, extras;
    for (int a = 0; a < 3; ++a)
      controls.push_back({"J0" + std::to_string(a + 1),
                          maxwell_negative_control_boost(config.label, config.picture, ctx, a)});
    if (config.picture == Picture::Original)
      for (int a = 0; a < 3; ++a)
        extras.push_back({"x_h1_boost:J0" + std::to_string(a + 1),
                          time_momentum_operator(a, 6) -
                              normal_product(CanonicalOperator::position(a, 6),
                                             CanonicalOperator::multiplier(ctx.hamiltonian))});
    for (int slot = 0; slot < 3; ++slot) {
      const auto [a, b] = kRotationPairs[slot];
      extras.push_back({"literal_beta:J" + std::to_string(a + 1) + std::to_string(b + 1),
                        literal_beta_rotation(slot, ctx)});
    }
    // The curl brings a factor of |x|, so the Maxwell packets are narrower.
    field_options.sigma = kMaxwellSigma;
    std::vector<SpinorField> fields;
    try {
      fields = maxwell_test_fields(ctx, grid, field_options);
    } catch (const PreconditionError& e) {
      throw ConfigurationError(e.what());
    }
    const MomentumFunction* projector =
        config.picture == Picture::Original ? &ctx.transverse : nullptr;
    report = check_invariance(set, fields, options, controls, extras, projector);
  }
  report.params.seed = config.seed;
  report.params.mass = grid.mass;
  report.wall_time_s = seconds_since(start);
  return report;
}

CheckReport check_clifford(GammaRepresentation representation) {
  const auto start = Clock::now();
  CheckReport report;
  report.check = "clifford";
  report.params.tol = 1e-14;
  const GammaSet<double> g(representation);
  const Matrix eye = Matrix::Identity(4, 4);
  double clifford = 0.0, g4_anti = 0.0, herm = 0.0, spin_g0 = 0.0, spin_anti = 0.0;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      clifford = std::max(clifford, max_abs(Matrix(anticommutator_m(g[mu], g[nu]) -
                                                   2.0 * metric(mu, nu) * eye)));
  for (int mu = 0; mu < 4; ++mu)
    g4_anti = std::max(g4_anti, max_abs(anticommutator_m(g[4], g[mu])));
  const double g4_square = max_abs(Matrix(g[4] * g[4] + eye));
  for (int mu = 0; mu < 5; ++mu) {
    const Matrix prod = mu == 0 ? g[0] : Matrix(g[0] * g[mu]);
    herm = std::max(herm, max_abs(Matrix(prod - prod.adjoint())));
  }
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b)
      spin_g0 = std::max(spin_g0, max_abs(commutator_m(g.spin(a, b), g[0])));
  for (int mu = 0; mu < 5; ++mu)
    for (int nu = 0; nu < 5; ++nu)
      spin_anti = std::max(spin_anti, max_abs(Matrix(g.spin(mu, nu) + g.spin(nu, mu))));

  const auto blocks = maxwell_blocks<double>();
  double so3 = 0.0, beta = 0.0;
  const Matrix eye2 = Matrix::Identity(2, 2);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      Matrix expected = Matrix::Zero(3, 3);
      Matrix expected6 = Matrix::Zero(6, 6);
      for (int c = 0; c < 3; ++c) {
        expected += Complex(0.0, levi_civita(a, b, c)) * blocks.spin1[c];
        expected6 += Complex(0.0, levi_civita(a, b, c)) * kron(eye2, blocks.spin1[c]);
      }
      so3 = std::max(so3, max_abs(Matrix(commutator_m(blocks.spin1[a], blocks.spin1[b]) - expected)));
      beta = std::max(beta, max_abs(Matrix(commutator_m(blocks.beta[a], blocks.beta[b]) - expected6)));
    }
  const double tol = 1e-14;
  report.add_bound("clifford", clifford, tol);
  report.add_bound("gamma4_anticommutes", g4_anti, tol);
  report.add_bound("gamma4_square", g4_square, tol);
  report.add_bound("hermitian_products", herm, tol);
  report.add_bound("spin_commutes_gamma0", spin_g0, tol);
  report.add_bound("spin_antisymmetric", spin_anti, tol);
  report.add_bound("spin1_so3", so3, tol);
  report.add_bound("beta_commutators", beta, tol);
  report.wall_time_s = seconds_since(start);
  return report;
}

CheckReport check_context(const DiracContext& ctx, std::span<const Momentum> samples) {
  const auto start = Clock::now();
  CheckReport report;
  report.check = "context";
  report.params.mass = ctx.mass;
  report.params.tol = 1e-12;
  const auto d = context_defects(ctx, samples);
  report.add_bound("h_squared", d.square, 1e-12);
  report.add_bound("unitarity", d.unitarity, 1e-12);
  report.add_bound("canonical_form", d.diagonalization, 1e-12);

  // Analytic derivatives against central differences.
  double deriv = 0.0;
  const std::array<MomentumFunction, 3> fns{ctx.hamiltonian, ctx.energy, ctx.transform};
  for (const auto& f : fns)
    for (int a = 0; a < 3; ++a) {
      const auto df = f.derivative(a);
      for (const auto& p : samples)
        deriv = std::max(deriv, max_abs(Matrix(df(p) - numeric_derivative(f, a, p))));
    }
  report.add_bound("derivative_consistency", deriv, 1e-6);
  report.wall_time_s = seconds_since(start);
  return report;
}

CheckReport check_conjugation(const DiracContext& ctx, std::span<const Momentum> samples,
                              double tol) {
  const auto start = Clock::now();
  CheckReport report;
  report.check = "conjugation";
  report.params.mass = ctx.mass;
  report.params.tol = tol;
  for (auto label : {SetLabel::Q3, SetLabel::Q4}) {
    const auto direct = build_set(label, ctx, Picture::Canonical).generators();
    const auto conj = build_set_by_conjugation(label, ctx).generators();
    for (std::size_t k = 0; k < direct.size(); ++k)
      report.add_bound(to_string(label) + ":" + direct[k].name,
                       max_difference(direct[k].op, conj[k].op, samples), tol);
  }
  report.wall_time_s = seconds_since(start);
  return report;
}

namespace {

// Generator k of OperatorSet::generators() as (P, mu) or (J, alpha, beta).
struct GeneratorIndex {
  bool is_p;
  int a;
  int b;
};

GeneratorIndex generator_index(int k) {
  if (k < 4) return {true, k, 0};
  if (k < 7) return {false, kRotationPairs[k - 4][0] + 1, kRotationPairs[k - 4][1] + 1};
  return {false, 0, k - 6};
}

constexpr int kBasisSize = 13;  // 10 generators + S_12, S_13, S_23

const std::array<std::string, kBasisSize> kBasisNames{
    "P0", "P1", "P2", "P3", "J12", "J13", "J23", "J01", "J02", "J03", "S12", "S13", "S23"};

using Coefficients = Eigen::Matrix<Complex, kBasisSize, 1>;

void add_p(Coefficients& c, int mu, Complex v) { c(mu) += v; }

void add_j(Coefficients& c, int alpha, int beta, Complex v) {
  if (alpha == beta) return;
  if (alpha > beta) {
    std::swap(alpha, beta);
    v = -v;
  }
  if (alpha == 0) {
    c(6 + beta) += v;
    return;
  }
  c(4 + rotation_slot(alpha - 1, beta - 1).first) += v;
}

void add_s(Coefficients& c, int a, int b, Complex v) {
  if (a == b) return;
  const auto [slot, sign] = rotation_slot(a - 1, b - 1);
  c(10 + slot) += double(sign) * v;
}

// Poincare brackets with the metric diag(+,-,-,-); deformed adds +i S_ab to
// [J_0a, J_0b].
Coefficients expected_bracket(int left, int right, bool deformed) {
  const Complex i(0.0, 1.0);
  Coefficients c = Coefficients::Zero();
  const auto l = generator_index(left);
  const auto r = generator_index(right);
  auto g = [](int m, int n) { return metric(m, n); };
  if (l.is_p && r.is_p) return c;
  if (l.is_p || r.is_p) {
    const auto& p = l.is_p ? l : r;
    const auto& j = l.is_p ? r : l;
    const double sign = l.is_p ? 1.0 : -1.0;
    // [P_mu, J_ab] = i (g_mu,a P_b - g_mu,b P_a)
    add_p(c, j.b, sign * i * g(p.a, j.a));
    add_p(c, j.a, -sign * i * g(p.a, j.b));
    return c;
  }
  const int m = l.a, n = l.b, rho = r.a, s = r.b;
  add_j(c, m, s, i * g(n, rho));
  add_j(c, n, s, -i * g(m, rho));
  add_j(c, m, rho, -i * g(n, s));
  add_j(c, n, rho, i * g(m, s));
  if (deformed && m == 0 && rho == 0) add_s(c, n, s, i);
  return c;
}

// The rotation bracket with the first term as printed, g_cd J_bc.
Coefficients printed_rotation_bracket(int left, int right) {
  const Complex i(0.0, 1.0);
  Coefficients c = Coefficients::Zero();
  const auto l = generator_index(left);
  const auto r = generator_index(right);
  const int a = l.a, b = l.b, cc = r.a, d = r.b;
  add_j(c, b, cc, i * metric(cc, d));
  add_j(c, b, d, -i * metric(a, cc));
  add_j(c, a, d, i * metric(b, cc));
  add_j(c, a, cc, -i * metric(b, d));
  return c;
}

// Values of every coefficient function of an operator, flattened over
// (monomial in the given order, sample, matrix entry).
Eigen::VectorXcd flatten(const CanonicalOperator& op, const std::vector<Monomial>& monomials,
                         std::span<const Momentum> samples) {
  const int d = op.dim();
  const std::size_t stride = samples.size() * d * d;
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(monomials.size() * stride);
  std::vector<MomentumFunction> coeffs;
  std::vector<std::size_t> slots;
  for (std::size_t k = 0; k < monomials.size(); ++k) {
    auto it = op.terms().find(monomials[k]);
    if (it == op.terms().end()) continue;
    coeffs.push_back(it->second);
    slots.push_back(k);
  }
  if (coeffs.empty()) return out;
  const Tape tape(coeffs);
  Tape::Workspace ws(tape);
  for (std::size_t s = 0; s < samples.size(); ++s) {
    tape.evaluate(samples[s], ws);
    for (std::size_t r = 0; r < coeffs.size(); ++r) {
      const auto& v = tape.root(ws, r);
      const std::size_t base = slots[r] * stride + s * d * d;
      for (int col = 0; col < d; ++col)
        for (int row = 0; row < d; ++row) out(base + row + d * col) = v(row, col);
    }
  }
  return out;
}

}  // namespace

CheckReport check_algebra(const OperatorSet& set, std::span<const Momentum> samples, double tol) {
  const auto start = Clock::now();
  CheckReport report;
  report.check = "algebra " + set.description();
  report.params.mass = set.mass;
  report.params.tol = tol;
  const bool deformed = set.label == SetLabel::Q3 || set.label == SetLabel::Q4;

  const auto generators = set.generators();
  std::vector<CanonicalOperator> basis;
  for (const auto& g : generators) basis.push_back(g.op);
  for (const auto& s : set.spin) basis.push_back(CanonicalOperator::multiplier(s));

  std::vector<Monomial> monomials;
  for (const auto& b : basis)
    for (const auto& [m, c] : b.terms())
      if (std::find(monomials.begin(), monomials.end(), m) == monomials.end())
        monomials.push_back(m);
  std::sort(monomials.begin(), monomials.end());

  Eigen::MatrixXcd design(monomials.size() * samples.size() * set.dim * set.dim, kBasisSize);
  for (int k = 0; k < kBasisSize; ++k) design.col(k) = flatten(basis[k], monomials, samples);
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(design);
  if (qr.rank() != kBasisSize)
    throw Error("check_algebra: generator basis is linearly dependent on the samples");

  const int n = static_cast<int>(generators.size());
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::vector<StructureEntry> entries(pairs.size());
  double printed_deviation = 0.0;
  std::vector<double> printed(pairs.size(), 0.0);

  parallel_for(pairs.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const auto [i, j] = pairs[k];
      const auto bracket = op_commutator(generators[i].op, generators[j].op);
      const Eigen::VectorXcd rhs = flatten(bracket, monomials, samples);
      const Coefficients measured = qr.solve(rhs);
      double residual = design.size() ? (design * measured - rhs).cwiseAbs().maxCoeff() : 0.0;
      // Monomials outside the basis support cannot be expanded at all.
      CanonicalOperator outside(bracket.dim());
      for (const auto& [m, c] : bracket.terms())
        if (std::find(monomials.begin(), monomials.end(), m) == monomials.end())
          outside.add_term(m, c);
      residual = std::max(residual, max_coefficient(outside, samples));

      const Coefficients expected = expected_bracket(i, j, deformed);
      StructureEntry entry;
      entry.left = generators[i].name;
      entry.right = generators[j].name;
      entry.expansion_residual = residual;
      entry.coefficient_error = (measured - expected).cwiseAbs().maxCoeff();
      for (int b = 0; b < kBasisSize; ++b) {
        // Round away numerical dust so the table lists only real entries.
        if (std::abs(measured(b)) > 1e-9 || std::abs(expected(b)) > 0)
          entry.coefficients.push_back({kBasisNames[b], measured(b), expected(b)});
      }
      entries[k] = std::move(entry);
      if (i >= 4 && i < 7 && j >= 4 && j < 7)
        printed[k] = (measured - printed_rotation_bracket(i, j)).cwiseAbs().maxCoeff();
    }
  });

  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto& e = entries[k];
    report.add_bound("[" + e.left + "," + e.right + "]",
                     std::max(e.expansion_residual, e.coefficient_error), tol);
    printed_deviation = std::max(printed_deviation, printed[k]);
  }
  report.add_info("rotation_bracket_as_printed_deviation", printed_deviation);
  report.structure_constants = std::move(entries);
  report.wall_time_s = seconds_since(start);
  return report;
}

std::vector<Momentum> momentum_samples(std::size_t count, std::uint64_t seed) {
  auto lattice = lattice_momentum_samples();
  if (count <= lattice.size()) {
    lattice.resize(count);
    return lattice;
  }
  const auto extra = random_ball_samples(count - lattice.size(), 5.0, seed);
  lattice.insert(lattice.end(), extra.begin(), extra.end());
  return lattice;
}

CheckReport check_o4(const DiracContext& ctx, std::span<const Momentum> samples) {
  const auto start = Clock::now();
  CheckReport report;
  report.check = "o4";
  report.params.mass = ctx.mass;
  report.params.tol = 1e-10;
  if (samples.empty()) throw ConfigurationError("check_o4: need at least one sample");

  // Pairs k < l of 1..4 and a lookup from (k, l) to a pair index.
  std::vector<std::array<int, 2>> pairs;
  std::array<std::array<int, 5>, 5> slot{};
  for (int k = 1; k <= 4; ++k)
    for (int l = k + 1; l <= 4; ++l) {
      slot[k][l] = static_cast<int>(pairs.size());
      pairs.push_back({k, l});
    }
  std::vector<MomentumFunction> roots{ctx.hamiltonian, ctx.transform};
  for (const auto& [k, l] : pairs) roots.push_back(tilded_spin(k, l, ctx));
  const Tape tape(roots);
  Tape::Workspace ws(tape);

  std::vector<Matrix> plain(pairs.size());
  for (std::size_t q = 0; q < pairs.size(); ++q)
    plain[q] = ctx.gammas.spin(pairs[q][0], pairs[q][1]);

  std::vector<double> commutes(pairs.size(), 0.0), conj(pairs.size(), 0.0);
  double relations = 0.0, control = 0.0;
  for (const auto& p : samples) {
    tape.evaluate(p, ws);
    const Matrix h = tape.root(ws, 0);
    const Matrix u = tape.root(ws, 1);
    const double hn = spectral_norm(h);
    std::vector<Matrix> st(pairs.size());
    for (std::size_t q = 0; q < pairs.size(); ++q) {
      st[q] = tape.root(ws, 2 + q);
      commutes[q] = std::max(commutes[q], spectral_norm(commutator_m(h, st[q])) / hn);
      conj[q] = std::max(conj[q], max_abs(Matrix(u * st[q] * u.adjoint() - plain[q])));
      control = std::max(control, spectral_norm(commutator_m(h, plain[q])) / hn);
    }
    auto s = [&](int a, int b) -> Matrix {
      if (a == b) return Matrix::Zero(4, 4);
      return a < b ? st[slot[a][b]] : Matrix(-st[slot[b][a]]);
    };
    auto g = GammaSet<double>::euclidean;
    const Complex i(0.0, 1.0);
    for (int k = 1; k <= 4; ++k)
      for (int l = 1; l <= 4; ++l)
        for (int n = 1; n <= 4; ++n)
          for (int r = 1; r <= 4; ++r) {
            const Matrix lhs = commutator_m(s(k, l), s(n, r));
            const Matrix rhs = i * (g(k, r) * s(l, n) - g(k, n) * s(l, r) + g(l, n) * s(k, r) -
                                    g(l, r) * s(k, n));
            relations = std::max(relations, max_abs(Matrix(lhs - rhs)));
          }
  }
  for (std::size_t q = 0; q < pairs.size(); ++q) {
    const std::string kl = std::to_string(pairs[q][0]) + std::to_string(pairs[q][1]);
    report.add_bound("commutes_with_h:S~" + kl, commutes[q], 1e-11);
  }
  report.add_bound("o4_relations", relations, 1e-10);
  for (std::size_t q = 0; q < pairs.size(); ++q) {
    const std::string kl = std::to_string(pairs[q][0]) + std::to_string(pairs[q][1]);
    report.add_bound("conjugation:S~" + kl, conj[q], 1e-11);
  }
  report.add_control("control:plain_gamma", control, 0.1);
  report.wall_time_s = seconds_since(start);
  return report;
}

CheckReport check_maxwell_structure(const MaxwellContext& ctx, std::span<const Momentum> samples) {
  const auto start = Clock::now();
  CheckReport report;
  report.check = "maxwell_structure";
  report.params.tol = 1e-11;
  const std::array<MomentumFunction, 5> roots{ctx.hamiltonian, ctx.transverse, ctx.transform,
                                               ctx.canonical_hamiltonian, ctx.sigma};
  const Tape tape(roots);
  Tape::Workspace ws(tape);
  double pattern = 0.0, kernel = 0.0, projector = 0.0, unitary = 0.0, canonical = 0.0,
         spectral = 0.0;
  for (const auto& p : samples) {
    const double k = p.norm();
    if (k == 0.0) continue;
    tape.evaluate(p, ws);
    const Matrix h = tape.root(ws, 0);
    const Matrix pt = tape.root(ws, 1);
    const Matrix u = tape.root(ws, 2);
    const Matrix hc = tape.root(ws, 3);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    const Eigen::VectorXd expected = (Eigen::VectorXd(6) << -k, -k, 0, 0, k, k).finished();
    pattern = std::max(pattern, (solver.eigenvalues() - expected).cwiseAbs().maxCoeff() / k);
    kernel = std::max(kernel, max_abs(Matrix(h * pt - h)) / k);
    projector = std::max(projector, max_abs(Matrix(pt - transverse_projector_direct(p))));
    unitary = std::max(unitary, max_abs(Matrix(pt * u.adjoint() * u * pt - pt)));
    canonical = std::max(canonical, max_abs(Matrix((u * h * u.adjoint() - hc) * pt)) / k);
    spectral = std::max(spectral, max_abs(Matrix(u - spectral_transform(ctx, p))));
  }
  report.add_bound("eigenvalue_pattern", pattern, 1e-12);
  report.add_bound("annihilates_longitudinal", kernel, 1e-12);
  report.add_bound("projector_direct", projector, 1e-12);
  report.add_bound("unitary_on_transverse", unitary, 1e-11);
  report.add_bound("canonical_form", canonical, 1e-11);
  report.add_bound("spectral_transform", spectral, 1e-11);
  report.wall_time_s = seconds_since(start);
  return report;
}

GridSpec cross_validation_grid() {
  GridSpec grid;
  grid.n = 64;
  grid.length = 40;
  grid.components = 4;
  return grid;
}

CheckReport cross_validate(const OperatorSet& set, std::span<const SpinorField> fields,
                           double time, double tol) {
  const auto start = Clock::now();
  if (fields.empty()) throw ConfigurationError("cross_validate: need at least one field");
  const GridSpec grid = fields[0].grid();
  CheckReport report;
  report.check = "cross_validation " + set.description();
  report.params = {grid.n, grid.length, set.mass, tol, 0};

  // The brackets the algebra check relies on: [P, P], [P, J] and boost-boost.
  const auto generators = set.generators();
  const std::size_t n = generators.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  for (std::size_t i = 7; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

  // One compiled generator at a time keeps the memory to a few tables; the
  // composed differences G_i G_j psi - G_j G_i psi are accumulated per pair.
  const std::size_t nf = fields.size();
  std::vector<std::vector<SpinorField>> single(nf);
  for (std::size_t k = 0; k < n; ++k) {
    const CompiledOperator g(grid, generators[k].op);
    for (std::size_t f = 0; f < nf; ++f) single[f].push_back(g.apply(fields[f], time));
  }
  std::vector<SpinorField> composed(pairs.size() * nf, SpinorField(grid));
  std::vector<double> composed_scale(pairs.size() * nf, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    std::optional<CompiledOperator> g;
    for (std::size_t q = 0; q < pairs.size(); ++q) {
      const auto [i, j] = pairs[q];
      if (i != k && j != k) continue;
      if (!g) g.emplace(grid, generators[k].op);
      for (std::size_t f = 0; f < nf; ++f) {
        const auto product = g->apply(single[f][i == k ? j : i], time);
        composed_scale[q * nf + f] = std::max(composed_scale[q * nf + f], product.norm());
        if (i == k)
          composed[q * nf + f] += product;
        else
          composed[q * nf + f] -= product;
      }
    }
  }

  for (std::size_t q = 0; q < pairs.size(); ++q) {
    const auto [i, j] = pairs[q];
    const CompiledOperator bracket(grid, op_commutator(generators[i].op, generators[j].op));
    double error = 0.0;
    for (std::size_t f = 0; f < nf; ++f) {
      const auto direct = bracket.apply(fields[f], time);
      const double scale = std::max(direct.norm(), composed_scale[q * nf + f]);
      if (scale == 0.0) continue;
      error = std::max(error, (direct - composed[q * nf + f]).norm() / scale);
    }
    report.add_bound("[" + generators[i].name + "," + generators[j].name + "]", error, tol);
  }
  report.wall_time_s = seconds_since(start);
  return report;
}

}  // namespace relsym
