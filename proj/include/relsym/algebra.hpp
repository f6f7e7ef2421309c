#pragma once

// Constant-matrix algebra: Kronecker products, commutators, spectral functions
// of Hermitian matrices, the Dirac gamma matrices (with gamma_4), spin
// matrices, and the 2x2 / 3x3 / 6x6 blocks of the Maxwell Hamiltonian.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "relsym/errors.hpp"

namespace relsym {

template <typename Scalar = double>
using ComplexMatrix =
    Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

using Complex = std::complex<double>;
using Matrix = ComplexMatrix<double>;

inline constexpr Complex kI{0.0, 1.0};

template <typename Derived>
typename Derived::RealScalar max_abs(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0;
  return m.cwiseAbs().maxCoeff();
}

template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> kron(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Result =
      Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Result out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

namespace detail {
template <typename DerivedA, typename DerivedB>
void require_same_shape(const Eigen::MatrixBase<DerivedA>& a,
                        const Eigen::MatrixBase<DerivedB>& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
    throw DimensionMismatch(std::string(op) + ": operands must be square of equal size (" +
                            std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                            " vs " + std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()) + ")");
}
}  // namespace detail

template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic>
commutator_m(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  detail::require_same_shape(a, b, "commutator_m");
  return a * b - b * a;
}

template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic>
anticommutator_m(const Eigen::MatrixBase<DerivedA>& a,
                 const Eigen::MatrixBase<DerivedB>& b) {
  detail::require_same_shape(a, b, "anticommutator_m");
  return a * b + b * a;
}

// What to do with eigenvalues of magnitude <= kernel_tolerance.
enum class KernelPolicy {
  Evaluate,  // apply f like any other eigenvalue
  Exclude,   // map to zero: f acts on the complement of the kernel only
  Reject     // throw DomainError
};

struct SpectralOptions {
  double kernel_tolerance = 0.0;
  KernelPolicy kernel = KernelPolicy::Evaluate;
  double hermiticity_tolerance = 1e-12;
};

// V f(Lambda) V^dagger for Hermitian M. f maps a real eigenvalue to a real
// value; a non-finite result is reported as a DomainError.
template <typename Derived, typename F>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>
hermitian_function(const Eigen::MatrixBase<Derived>& m, F&& f,
                   const SpectralOptions& options = {}) {
  using Result = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Real = typename Derived::RealScalar;
  if (m.rows() != m.cols())
    throw DimensionMismatch("hermitian_function: matrix is not square");
  const Result dense = m;
  const Real scale = std::max<Real>(Real(1), max_abs(dense));
  if (max_abs(dense - dense.adjoint()) > options.hermiticity_tolerance * scale)
    throw PreconditionError("hermitian_function: matrix is not Hermitian");

  Eigen::SelfAdjointEigenSolver<Result> solver(dense);
  if (solver.info() != Eigen::Success)
    throw Error("hermitian_function: eigendecomposition failed");
  const auto& lambda = solver.eigenvalues();
  Eigen::Matrix<Real, Eigen::Dynamic, 1> mapped(lambda.size());
  for (Eigen::Index k = 0; k < lambda.size(); ++k) {
    const Real value = lambda(k);
    if (std::abs(value) <= options.kernel_tolerance) {
      if (options.kernel == KernelPolicy::Exclude) {
        mapped(k) = 0;
        continue;
      }
      if (options.kernel == KernelPolicy::Reject)
        throw DomainError("hermitian_function: eigenvalue inside the excluded kernel",
                          static_cast<double>(value));
    }
    mapped(k) = f(value);
    if (!std::isfinite(static_cast<double>(mapped(k))))
      throw DomainError("hermitian_function: eigenvalue outside the domain of f",
                        static_cast<double>(value));
  }
  const auto& v = solver.eigenvectors();
  return v * mapped.template cast<typename Derived::Scalar>().asDiagonal() * v.adjoint();
}

// Pauli matrices; k = 0 is the 2x2 identity.
template <typename Scalar = double>
ComplexMatrix<Scalar> pauli(int k) {
  using C = std::complex<Scalar>;
  ComplexMatrix<Scalar> s = ComplexMatrix<Scalar>::Zero(2, 2);
  switch (k) {
    case 0: s << C(1), C(0), C(0), C(1); break;
    case 1: s << C(0), C(1), C(1), C(0); break;
    case 2: s << C(0), C(0, -1), C(0, 1), C(0); break;
    case 3: s << C(1), C(0), C(0), C(-1); break;
    default: throw IndexError("pauli: index must be in 0..3");
  }
  return s;
}

enum class GammaRepresentation { DiracPauli, Weyl };

// gamma_0..gamma_3 in the chosen representation; gamma_4 = gamma_0 gamma_1
// gamma_2 gamma_3, so that gamma_4^2 = -1 and (gamma_0 gamma_4)^2 = +1.
template <typename Scalar = double>
ComplexMatrix<Scalar> gamma(int mu,
                            GammaRepresentation rep = GammaRepresentation::DiracPauli) {
  using M = ComplexMatrix<Scalar>;
  if (mu < 0 || mu > 4) throw IndexError("gamma: index must be in 0..4");
  if (mu == 4) return gamma<Scalar>(0, rep) * gamma<Scalar>(1, rep) *
                      gamma<Scalar>(2, rep) * gamma<Scalar>(3, rep);
  const M one = pauli<Scalar>(0);
  const M zero = M::Zero(2, 2);
  M g(4, 4);
  if (mu == 0) {
    if (rep == GammaRepresentation::DiracPauli)
      g << one, zero, zero, -one;
    else
      g << zero, one, one, zero;
    return g;
  }
  const M s = pauli<Scalar>(mu);
  g << zero, s, -s, zero;
  return g;
}

// Minkowski metric diag(+1, -1, -1, -1) on 0..3, extended by g_44 = -1.
inline double metric(int mu, int nu) {
  if (mu != nu) return 0.0;
  return mu == 0 ? 1.0 : -1.0;
}

// S_{mu nu} = (i/4)(gamma_mu gamma_nu - gamma_nu gamma_mu), indices 0..4.
template <typename Scalar = double>
ComplexMatrix<Scalar> spin_matrix(int mu, int nu,
                                  GammaRepresentation rep = GammaRepresentation::DiracPauli) {
  using C = std::complex<Scalar>;
  const auto gm = gamma<Scalar>(mu, rep);
  const auto gn = gamma<Scalar>(nu, rep);
  return C(0, Scalar(0.25)) * commutator_m(gm, gn);
}

template <typename Scalar = double>
struct GammaSet {
  GammaRepresentation representation = GammaRepresentation::DiracPauli;
  std::array<ComplexMatrix<Scalar>, 5> g;

  explicit GammaSet(GammaRepresentation rep = GammaRepresentation::DiracPauli)
      : representation(rep) {
    for (int mu = 0; mu < 5; ++mu) g[mu] = gamma<Scalar>(mu, rep);
  }
  const ComplexMatrix<Scalar>& operator[](int mu) const { return g.at(mu); }
  ComplexMatrix<Scalar> spin(int mu, int nu) const {
    return std::complex<Scalar>(0, Scalar(0.25)) * commutator_m(g.at(mu), g.at(nu));
  }
  static double minkowski(int mu, int nu) { return metric(mu, nu); }
  // g_kl = -delta_kl for k, l in 1..4.
  static double euclidean(int k, int l) { return k == l ? -1.0 : 0.0; }
};

// Levi-Civita symbol on 0-based indices.
inline int levi_civita(int a, int b, int c) {
  if (a == b || b == c || a == c) return 0;
  return ((b - a + 3) % 3 == 1) ? 1 : -1;
}

template <typename Scalar = double>
struct MaxwellBlocks {
  std::array<ComplexMatrix<Scalar>, 3> spin1;  // (S_a)_{bc} = -i eps_{abc}
  ComplexMatrix<Scalar> sigma2;
  ComplexMatrix<Scalar> sigma3;
  ComplexMatrix<Scalar> identity3;
  std::array<ComplexMatrix<Scalar>, 3> beta;   // B_a = sigma_2 (x) S_a
};

template <typename Scalar = double>
MaxwellBlocks<Scalar> maxwell_blocks() {
  using C = std::complex<Scalar>;
  MaxwellBlocks<Scalar> blocks;
  for (int a = 0; a < 3; ++a) {
    blocks.spin1[a] = ComplexMatrix<Scalar>::Zero(3, 3);
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        blocks.spin1[a](b, c) = C(0, -Scalar(levi_civita(a, b, c)));
  }
  blocks.sigma2 = pauli<Scalar>(2);
  blocks.sigma3 = pauli<Scalar>(3);
  blocks.identity3 = ComplexMatrix<Scalar>::Identity(3, 3);
  for (int a = 0; a < 3; ++a) blocks.beta[a] = kron(blocks.sigma2, blocks.spin1[a]);
  return blocks;
}

}  // namespace relsym
