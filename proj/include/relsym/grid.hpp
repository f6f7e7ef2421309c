#pragma once

// Spectral grid oracle: d-component fields on a periodic N^3 box with
// coordinates in [-L/2, L/2) per axis. Momentum multipliers act pointwise in
// Fourier space, position monomials pointwise in position space, and free
// evolution is exact per lattice momentum.

#include <Eigen/Dense>

#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "relsym/canonical_operator.hpp"

namespace relsym {

struct GridSpec {
  int n = 32;          // points per axis, power of two
  double length = 20;  // box side
  int components = 4;
  double mass = 1.0;

  void validate() const;
  std::size_t sites() const { return static_cast<std::size_t>(n) * n * n; }
  double spacing() const { return length / n; }
  double cell_volume() const;
  // Coordinate of grid index i along any axis.
  double coordinate(int i) const { return -0.5 * length + i * spacing(); }
  // Lattice momentum for FFT index m: 2 pi / L * {0..N/2-1, -N/2..-1}.
  double wavenumber(int m) const;
  Momentum momentum_at(std::size_t site) const;
  Momentum position_at(std::size_t site) const;
  std::size_t site(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * n + j) * n + k;
  }
  bool operator==(const GridSpec&) const = default;
};

// Column s holds the components at site s (position-space layout).
class SpinorField {
 public:
  using Values = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;

  explicit SpinorField(const GridSpec& grid);
  SpinorField(const GridSpec& grid, Values values);

  const GridSpec& grid() const { return grid_; }
  int components() const { return grid_.components; }
  const Values& values() const { return values_; }
  Values& values() { return values_; }

  double norm() const;
  bool is_finite() const;
  // max |psi| over the boundary faces divided by max |psi| (0 for the zero field).
  double boundary_ratio() const;

  SpinorField& operator+=(const SpinorField& other);
  SpinorField& operator-=(const SpinorField& other);
  SpinorField& operator*=(Complex c);
  friend SpinorField operator+(SpinorField a, const SpinorField& b) { return a += b; }
  friend SpinorField operator-(SpinorField a, const SpinorField& b) { return a -= b; }
  friend SpinorField operator*(Complex c, SpinorField a) { return a *= c; }

 private:
  GridSpec grid_;
  Values values_;
};

// (L/N)^3 sum_sites phi^dagger psi, summed in site order.
Complex inner_product(const SpinorField& phi, const SpinorField& psi);
// Same inner product evaluated from the Fourier coefficients.
Complex inner_product_momentum_space(const SpinorField& phi, const SpinorField& psi);

// Unnormalized DFT of every component (sign -1 forward, +1 inverse); inverse
// divides by N^3.
SpinorField::Values forward_transform(const SpinorField& field);
SpinorField inverse_transform(const GridSpec& grid, SpinorField::Values spectrum);

struct WavepacketParams {
  Momentum momentum = Momentum::Zero();
  Momentum center = Momentum::Zero();
  double sigma = 1.0;
  Eigen::VectorXcd amplitudes;
};

// Normalized exp(-|x - x0|^2 / (4 sigma^2) + i p0.x) * amplitudes.
// Requires 1.5 L/N <= sigma <= L/10 and x0 inside the box.
SpinorField gaussian_wavepacket(const GridSpec& grid, const WavepacketParams& params);

// Plane wave exp(i k.x) * amplitudes for the lattice momentum with FFT
// indices (m1, m2, m3).
SpinorField lattice_plane_wave(const GridSpec& grid, std::array<int, 3> indices,
                               const Eigen::VectorXcd& amplitudes);

// Tabulates a MomentumFunction on the lattice; entry (r + d c, s) holds
// M(k_s)(r, c).
Eigen::MatrixXcd tabulate(const GridSpec& grid, const MomentumFunction& f);

// Applies M(k) pointwise to a momentum-space array.
void multiply_pointwise(const Eigen::MatrixXcd& table, int dim, SpinorField::Values& spectrum);

// A CanonicalOperator tabulated on the lattice for repeated application.
class CompiledOperator {
 public:
  CompiledOperator(const GridSpec& grid, const CanonicalOperator& op);

  const GridSpec& grid() const { return grid_; }
  SpinorField apply(const SpinorField& psi, double t) const;

 private:
  struct Term {
    Monomial monomial;
    Eigen::MatrixXcd table;
  };
  GridSpec grid_;
  int dim_;
  std::vector<Term> terms_;
};

SpinorField apply(const CanonicalOperator& op, const SpinorField& psi, double t);

// <psi, O psi> at time t.
Complex expectation(const CanonicalOperator& op, const SpinorField& psi, double t);
Complex expectation(const CompiledOperator& op, const SpinorField& psi, double t);

// exp(-i H(k) t) per lattice momentum via Hermitian eigendecomposition.
class Propagator {
 public:
  Propagator(const GridSpec& grid, const MomentumFunction& hamiltonian);
  SpinorField evolve(const SpinorField& psi, double t) const;

 private:
  GridSpec grid_;
  int dim_;
  Eigen::MatrixXcd vectors_;   // (d*d, sites)
  Eigen::MatrixXd values_;     // (d, sites)
};

SpinorField evolve(const SpinorField& psi0, const MomentumFunction& hamiltonian, double t);

// max over interior samples of || i dpsi/dt - H psi || / || psi || with a
// fourth-order central difference in time. Needs >= 5 samples spaced dt.
double dirac_residual(std::span<const SpinorField> trajectory, double dt,
                      const CompiledOperator& hamiltonian);

// Spectral divergence of the 3-vector block starting at component offset.
double spectral_divergence(const SpinorField& field, int offset);

// Text table, one line per (site, component): "site component re im".
void export_snapshot(const SpinorField& field, const std::filesystem::path& path);

}  // namespace relsym
