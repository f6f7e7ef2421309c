#include "relsym/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <numbers>

#include "relsym/parallel.hpp"

namespace relsym {

namespace {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

// Plans are created once per (n, components) under a lock; executing them on
// fresh arrays through the new-array interface is thread safe.
const PlanPair& plans_for(int n, int components) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, PlanPair> cache;
  std::lock_guard lock(mutex);
  auto key = std::make_pair(n, components);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  const int dims[3] = {n, n, n};
  const std::size_t total = static_cast<std::size_t>(n) * n * n * components;
  auto* in = fftw_alloc_complex(total);
  auto* out = fftw_alloc_complex(total);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  PlanPair plans;
  plans.forward = fftw_plan_many_dft(3, dims, components, in, nullptr, components, 1, out,
                                     nullptr, components, 1, FFTW_FORWARD, flags);
  plans.backward = fftw_plan_many_dft(3, dims, components, in, nullptr, components, 1, out,
                                      nullptr, components, 1, FFTW_BACKWARD, flags);
  fftw_free(in);
  fftw_free(out);
  if (!plans.forward || !plans.backward) throw Error("FFTW plan creation failed");
  return cache.emplace(key, plans).first->second;
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

void GridSpec::validate() const {
  if (!is_power_of_two(n) || n < 4)
    throw PreconditionError("GridSpec: points per axis must be a power of two >= 4");
  if (!(length > 0)) throw PreconditionError("GridSpec: box length must be positive");
  if (components < 1 || components > kMaxFunctionDim)
    throw PreconditionError("GridSpec: unsupported component count");
  if (mass < 0) throw PreconditionError("GridSpec: mass must be >= 0");
}

double GridSpec::cell_volume() const { return std::pow(spacing(), 3); }

double GridSpec::wavenumber(int m) const {
  const int shifted = m < n / 2 ? m : m - n;
  return 2.0 * std::numbers::pi / length * shifted;
}

Momentum GridSpec::momentum_at(std::size_t s) const {
  const int k = static_cast<int>(s % n);
  const int j = static_cast<int>((s / n) % n);
  const int i = static_cast<int>(s / (static_cast<std::size_t>(n) * n));
  return {wavenumber(i), wavenumber(j), wavenumber(k)};
}

Momentum GridSpec::position_at(std::size_t s) const {
  const int k = static_cast<int>(s % n);
  const int j = static_cast<int>((s / n) % n);
  const int i = static_cast<int>(s / (static_cast<std::size_t>(n) * n));
  return {coordinate(i), coordinate(j), coordinate(k)};
}

SpinorField::SpinorField(const GridSpec& grid)
    : grid_(grid), values_(Values::Zero(grid.components, static_cast<Eigen::Index>(grid.sites()))) {
  grid_.validate();
}

SpinorField::SpinorField(const GridSpec& grid, Values values)
    : grid_(grid), values_(std::move(values)) {
  grid_.validate();
  if (values_.rows() != grid_.components ||
      values_.cols() != static_cast<Eigen::Index>(grid_.sites()))
    throw DimensionMismatch("SpinorField: value array does not match the grid");
}

double SpinorField::norm() const { return std::sqrt(std::max(0.0, inner_product(*this, *this).real())); }

bool SpinorField::is_finite() const { return values_.allFinite(); }

double SpinorField::boundary_ratio() const {
  const int n = grid_.n;
  double peak = 0.0, edge = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double v = values_.col(static_cast<Eigen::Index>(grid_.site(i, j, k))).norm();
        peak = std::max(peak, v);
        const bool face = i == 0 || j == 0 || k == 0 || i == n - 1 || j == n - 1 || k == n - 1;
        if (face) edge = std::max(edge, v);
      }
  return peak == 0.0 ? 0.0 : edge / peak;
}

SpinorField& SpinorField::operator+=(const SpinorField& other) {
  if (!(other.grid_ == grid_)) throw DimensionMismatch("SpinorField: grid mismatch");
  values_ += other.values_;
  return *this;
}

SpinorField& SpinorField::operator-=(const SpinorField& other) {
  if (!(other.grid_ == grid_)) throw DimensionMismatch("SpinorField: grid mismatch");
  values_ -= other.values_;
  return *this;
}

SpinorField& SpinorField::operator*=(Complex c) {
  values_ *= c;
  return *this;
}

Complex inner_product(const SpinorField& phi, const SpinorField& psi) {
  if (!(phi.grid() == psi.grid())) throw DimensionMismatch("inner_product: grid mismatch");
  const auto& a = phi.values();
  const auto& b = psi.values();
  Complex sum{0.0};
  for (Eigen::Index s = 0; s < a.cols(); ++s)
    for (Eigen::Index c = 0; c < a.rows(); ++c) sum += std::conj(a(c, s)) * b(c, s);
  return sum * phi.grid().cell_volume();
}

Complex inner_product_momentum_space(const SpinorField& phi, const SpinorField& psi) {
  if (!(phi.grid() == psi.grid())) throw DimensionMismatch("inner_product: grid mismatch");
  const auto a = forward_transform(phi);
  const auto b = forward_transform(psi);
  Complex sum{0.0};
  for (Eigen::Index s = 0; s < a.cols(); ++s)
    for (Eigen::Index c = 0; c < a.rows(); ++c) sum += std::conj(a(c, s)) * b(c, s);
  const double sites = static_cast<double>(phi.grid().sites());
  return sum * phi.grid().cell_volume() / sites;
}

SpinorField::Values forward_transform(const SpinorField& field) {
  const auto& grid = field.grid();
  const auto& plans = plans_for(grid.n, grid.components);
  SpinorField::Values in = field.values();
  SpinorField::Values out(in.rows(), in.cols());
  fftw_execute_dft(plans.forward, as_fftw(in.data()), as_fftw(out.data()));
  return out;
}

SpinorField inverse_transform(const GridSpec& grid, SpinorField::Values spectrum) {
  const auto& plans = plans_for(grid.n, grid.components);
  SpinorField::Values out(spectrum.rows(), spectrum.cols());
  fftw_execute_dft(plans.backward, as_fftw(spectrum.data()), as_fftw(out.data()));
  out /= static_cast<double>(grid.sites());
  return SpinorField(grid, std::move(out));
}

SpinorField gaussian_wavepacket(const GridSpec& grid, const WavepacketParams& params) {
  grid.validate();
  if (params.amplitudes.size() != grid.components)
    throw DimensionMismatch("gaussian_wavepacket: amplitude count must equal components");
  if (params.sigma < 1.5 * grid.spacing() || params.sigma > grid.length / 10)
    throw PreconditionError("gaussian_wavepacket: sigma must lie in [1.5 L/N, L/10]");
  for (int a = 0; a < 3; ++a)
    if (params.center(a) < -0.5 * grid.length || params.center(a) >= 0.5 * grid.length)
      throw PreconditionError("gaussian_wavepacket: center outside the box");
  if (params.amplitudes.norm() == 0.0)
    throw PreconditionError("gaussian_wavepacket: amplitudes must not vanish");

  SpinorField field(grid);
  auto& v = field.values();
  const double denom = 4.0 * params.sigma * params.sigma;
  for (std::size_t s = 0; s < grid.sites(); ++s) {
    const Momentum x = grid.position_at(s);
    const double envelope = std::exp(-(x - params.center).squaredNorm() / denom);
    const Complex phase = std::exp(Complex(0.0, params.momentum.dot(x)));
    v.col(static_cast<Eigen::Index>(s)) = (envelope * phase) * params.amplitudes;
  }
  field *= Complex(1.0 / field.norm());
  return field;
}

SpinorField lattice_plane_wave(const GridSpec& grid, std::array<int, 3> indices,
                               const Eigen::VectorXcd& amplitudes) {
  if (amplitudes.size() != grid.components)
    throw DimensionMismatch("lattice_plane_wave: amplitude count must equal components");
  const Momentum k(grid.wavenumber(indices[0]), grid.wavenumber(indices[1]),
                   grid.wavenumber(indices[2]));
  SpinorField field(grid);
  for (std::size_t s = 0; s < grid.sites(); ++s) {
    const Complex phase = std::exp(Complex(0.0, k.dot(grid.position_at(s))));
    field.values().col(static_cast<Eigen::Index>(s)) = phase * amplitudes;
  }
  return field;
}

namespace {

Eigen::MatrixXcd tabulate_tape(const GridSpec& grid, const Tape& tape, std::size_t root) {
  const int d = tape.root_dim(root);
  Eigen::MatrixXcd table(d * d, static_cast<Eigen::Index>(grid.sites()));
  parallel_for(grid.sites(), [&](std::size_t begin, std::size_t end) {
    Tape::Workspace ws(tape);
    for (std::size_t s = begin; s < end; ++s) {
      tape.evaluate(grid.momentum_at(s), ws);
      const auto& m = tape.root(ws, root);
      for (int c = 0; c < d; ++c)
        for (int r = 0; r < d; ++r) table(r + d * c, static_cast<Eigen::Index>(s)) = m(r, c);
    }
  });
  return table;
}

}  // namespace

Eigen::MatrixXcd tabulate(const GridSpec& grid, const MomentumFunction& f) {
  const std::array<MomentumFunction, 1> roots{f};
  const Tape tape(roots);
  return tabulate_tape(grid, tape, 0);
}

void multiply_pointwise(const Eigen::MatrixXcd& table, int dim, SpinorField::Values& spectrum) {
  if (spectrum.rows() != dim || table.rows() != dim * dim || table.cols() != spectrum.cols())
    throw DimensionMismatch("multiply_pointwise: shape mismatch");
  Eigen::VectorXcd tmp(dim);
  for (Eigen::Index s = 0; s < spectrum.cols(); ++s) {
    Eigen::Map<const Eigen::MatrixXcd> m(table.col(s).data(), dim, dim);
    tmp.noalias() = m * spectrum.col(s);
    spectrum.col(s) = tmp;
  }
}

CompiledOperator::CompiledOperator(const GridSpec& grid, const CanonicalOperator& op)
    : grid_(grid), dim_(op.dim()) {
  grid_.validate();
  if (op.dim() != grid.components)
    throw DimensionMismatch("CompiledOperator: operator dimension " + std::to_string(op.dim()) +
                            " vs field components " + std::to_string(grid.components));
  std::vector<MomentumFunction> coeffs;
  for (const auto& [m, c] : op.terms()) {
    terms_.push_back({m, {}});
    coeffs.push_back(c);
  }
  if (coeffs.empty()) return;
  const Tape tape(coeffs);
  // One pass over the lattice fills every coefficient table.
  for (auto& term : terms_)
    term.table.resize(dim_ * dim_, static_cast<Eigen::Index>(grid_.sites()));
  parallel_for(grid_.sites(), [&](std::size_t begin, std::size_t end) {
    Tape::Workspace ws(tape);
    for (std::size_t s = begin; s < end; ++s) {
      tape.evaluate(grid_.momentum_at(s), ws);
      for (std::size_t k = 0; k < terms_.size(); ++k) {
        const auto& m = tape.root(ws, k);
        auto col = terms_[k].table.col(static_cast<Eigen::Index>(s));
        for (int c = 0; c < dim_; ++c)
          for (int r = 0; r < dim_; ++r) col(r + dim_ * c) = m(r, c);
      }
    }
  });
}

SpinorField CompiledOperator::apply(const SpinorField& psi, double t) const {
  if (!(psi.grid() == grid_)) throw DimensionMismatch("CompiledOperator::apply: grid mismatch");
  SpinorField result(grid_);
  if (terms_.empty()) return result;
  const auto spectrum = forward_transform(psi);

  // Group by position part: sum_k t^k C_{k,alpha} acts before x^alpha.
  std::map<std::array<int, 3>, std::vector<const Term*>> groups;
  for (const auto& term : terms_) groups[term.monomial.x].push_back(&term);

  for (const auto& [x, group] : groups) {
    std::vector<std::pair<const Eigen::MatrixXcd*, double>> weighted;
    for (const Term* term : group) {
      const double weight = std::pow(t, term->monomial.t);
      if (weight != 0.0) weighted.emplace_back(&term->table, weight);
    }
    if (weighted.empty()) continue;
    SpinorField::Values accumulated(spectrum.rows(), spectrum.cols());
    parallel_for(grid_.sites(), [&](std::size_t begin, std::size_t end) {
      Eigen::MatrixXcd m(dim_, dim_);
      for (std::size_t site = begin; site < end; ++site) {
        const auto s = static_cast<Eigen::Index>(site);
        m.setZero();
        for (const auto& [table, weight] : weighted)
          m += weight * Eigen::Map<const Eigen::MatrixXcd>(table->col(s).data(), dim_, dim_);
        accumulated.col(s).noalias() = m * spectrum.col(s);
      }
    });
    SpinorField part = inverse_transform(grid_, std::move(accumulated));
    if (x != std::array<int, 3>{0, 0, 0}) {
      auto& v = part.values();
      for (std::size_t s = 0; s < grid_.sites(); ++s) {
        const Momentum pos = grid_.position_at(s);
        double factor = 1.0;
        for (int a = 0; a < 3; ++a)
          for (int k = 0; k < x[a]; ++k) factor *= pos(a);
        v.col(static_cast<Eigen::Index>(s)) *= factor;
      }
    }
    result += part;
  }
  return result;
}

SpinorField apply(const CanonicalOperator& op, const SpinorField& psi, double t) {
  return CompiledOperator(psi.grid(), op).apply(psi, t);
}

Complex expectation(const CanonicalOperator& op, const SpinorField& psi, double t) {
  return inner_product(psi, apply(op, psi, t));
}

Complex expectation(const CompiledOperator& op, const SpinorField& psi, double t) {
  return inner_product(psi, op.apply(psi, t));
}

Propagator::Propagator(const GridSpec& grid, const MomentumFunction& hamiltonian)
    : grid_(grid), dim_(hamiltonian.dim()) {
  grid_.validate();
  if (dim_ != grid.components) throw DimensionMismatch("Propagator: dimension mismatch");
  const auto table = tabulate(grid_, hamiltonian);
  vectors_.resize(dim_ * dim_, static_cast<Eigen::Index>(grid_.sites()));
  values_.resize(dim_, static_cast<Eigen::Index>(grid_.sites()));
  parallel_for(grid_.sites(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s) {
      const auto col = static_cast<Eigen::Index>(s);
      Eigen::Map<const Eigen::MatrixXcd> h(table.col(col).data(), dim_, dim_);
      const double scale = std::max(1.0, max_abs(h));
      if (max_abs(Eigen::MatrixXcd(h - h.adjoint())) > 1e-10 * scale)
        throw PreconditionError("Propagator: Hamiltonian not Hermitian at lattice momentum");
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
      values_.col(col) = solver.eigenvalues();
      Eigen::Map<Eigen::MatrixXcd>(vectors_.col(col).data(), dim_, dim_) = solver.eigenvectors();
    }
  });
}

SpinorField Propagator::evolve(const SpinorField& psi, double t) const {
  if (!(psi.grid() == grid_)) throw DimensionMismatch("Propagator::evolve: grid mismatch");
  if (t == 0.0) return psi;
  auto spectrum = forward_transform(psi);
  Eigen::VectorXcd tmp(dim_);
  for (Eigen::Index s = 0; s < spectrum.cols(); ++s) {
    Eigen::Map<const Eigen::MatrixXcd> v(vectors_.col(s).data(), dim_, dim_);
    tmp.noalias() = v.adjoint() * spectrum.col(s);
    for (int k = 0; k < dim_; ++k) tmp(k) *= std::exp(Complex(0.0, -values_(k, s) * t));
    spectrum.col(s).noalias() = v * tmp;
  }
  return inverse_transform(grid_, std::move(spectrum));
}

SpinorField evolve(const SpinorField& psi0, const MomentumFunction& hamiltonian, double t) {
  return Propagator(psi0.grid(), hamiltonian).evolve(psi0, t);
}

double dirac_residual(std::span<const SpinorField> trajectory, double dt,
                      const CompiledOperator& hamiltonian) {
  if (trajectory.size() < 5)
    throw PreconditionError("dirac_residual: need at least 5 time samples");
  if (!(dt > 0)) throw PreconditionError("dirac_residual: time step must be positive");
  double worst = 0.0;
  for (std::size_t j = 2; j + 2 < trajectory.size(); ++j) {
    const double size = trajectory[j].norm();
    if (size == 0.0) continue;
    SpinorField derivative = trajectory[j - 2];
    derivative.values() += -8.0 * trajectory[j - 1].values() + 8.0 * trajectory[j + 1].values() -
                           trajectory[j + 2].values();
    derivative *= Complex(0.0, 1.0 / (12.0 * dt));
    derivative -= hamiltonian.apply(trajectory[j], 0.0);
    worst = std::max(worst, derivative.norm() / size);
  }
  return worst;
}

double spectral_divergence(const SpinorField& field, int offset) {
  const auto& grid = field.grid();
  if (offset < 0 || offset + 3 > grid.components)
    throw IndexError("spectral_divergence: block outside the component range");
  const auto spectrum = forward_transform(field);
  double sum = 0.0;
  for (std::size_t s = 0; s < grid.sites(); ++s) {
    const Momentum k = grid.momentum_at(s);
    Complex div{0.0};
    for (int a = 0; a < 3; ++a) div += k(a) * spectrum(offset + a, static_cast<Eigen::Index>(s));
    sum += std::norm(div);
  }
  // Same normalization as the L2 norm.
  return std::sqrt(sum * grid.cell_volume() / static_cast<double>(grid.sites()));
}

void export_snapshot(const SpinorField& field, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("export_snapshot: cannot open " + path.string());
  out << "# site component re im ; site = (i*N + j)*N + k, x = -L/2 + index*L/N\n";
  out.precision(17);
  const auto& v = field.values();
  for (Eigen::Index s = 0; s < v.cols(); ++s)
    for (Eigen::Index c = 0; c < v.rows(); ++c)
      out << s << ' ' << c << ' ' << v(c, s).real() << ' ' << v(c, s).imag() << '\n';
}

}  // namespace relsym
