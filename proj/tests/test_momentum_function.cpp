#include "doctest.h"

#include <cmath>

#include "relsym/momentum_function.hpp"
#include "relsym/sampling.hpp"

using namespace relsym;

namespace {

MomentumFunction energy(double m) {
  return sqrt(momentum_squared() + MomentumFunction::scalar(m * m));
}

}  // namespace

TEST_CASE("leaves evaluate to their definitions") {
  const Momentum p(0.3, -1.2, 2.5);
  for (int a = 0; a < 3; ++a)
    CHECK(MomentumFunction::component(a)(p)(0, 0) == Complex(p(a)));
  CHECK(std::abs(momentum_squared()(p)(0, 0) - p.squaredNorm()) < 1e-15);
  CHECK(max_abs(MomentumFunction::identity(3)(p) - Matrix::Identity(3, 3)) == 0.0);
  CHECK(MomentumFunction::zero(2).is_zero());
  CHECK(MomentumFunction::constant(pauli(1)).is_constant());
  CHECK_THROWS_AS(MomentumFunction::component(3), IndexError);
}

TEST_CASE("symbolic derivatives of E = sqrt(p^2 + m^2)") {
  const double m = 1.3;
  const auto e = energy(m);
  for (const auto& p : standard_momentum_samples()) {
    const double ev = std::sqrt(p.squaredNorm() + m * m);
    CHECK(std::abs(e(p)(0, 0) - ev) < 1e-14 * ev);
    for (int a = 0; a < 3; ++a) {
      CHECK(std::abs(e.derivative(a)(p)(0, 0) - p(a) / ev) < 1e-14);
      for (int b = 0; b < 3; ++b) {
        const double second = ((a == b ? 1.0 : 0.0) - p(a) * p(b) / (ev * ev)) / ev;
        CHECK(std::abs(e.derivative(a).derivative(b)(p)(0, 0) - second) < 1e-13);
      }
    }
  }
}

TEST_CASE("product rule on matrix-valued functions") {
  // f(p) = p_1 sigma_1 + p_2^2 sigma_3; f * f = (p_1^2 + p_2^4) 1.
  const auto p1 = MomentumFunction::component(0);
  const auto p2 = MomentumFunction::component(1);
  const auto f = p1 * MomentumFunction::constant(pauli(1)) +
                 p2 * p2 * MomentumFunction::constant(pauli(3));
  const auto g = f * f;
  const Momentum p(0.7, -0.4, 1.1);
  CHECK(std::abs(g(p)(0, 0) - (0.49 + std::pow(0.4, 4))) < 1e-15);
  CHECK(std::abs(g(p)(0, 1)) < 1e-15);
  CHECK(std::abs(g.derivative(1)(p)(1, 1) - 4.0 * std::pow(-0.4, 3)) < 1e-14);
  CHECK(max_abs(f.derivative(2)(p)) == 0.0);
}

TEST_CASE("numeric leaves use central differences") {
  const auto f = MomentumFunction::numeric(
      1, [](const Momentum& p) { return Matrix::Constant(1, 1, std::sin(p(0)) * p(2)); }, "f");
  const Momentum p(0.4, 0.0, 2.0);
  CHECK(std::abs(f.derivative(0)(p)(0, 0) - std::cos(0.4) * 2.0) < 1e-9);
  CHECK(std::abs(f.derivative(2)(p)(0, 0) - std::sin(0.4)) < 1e-9);
  CHECK(std::abs(numeric_derivative(energy(1.0), 1, p)(0, 0) - p(1) / std::sqrt(5.0)) < 1e-9);
}

TEST_CASE("reciprocal is zero at the exact zero") {
  const auto r = reciprocal(momentum_squared());
  CHECK(r(Momentum::Zero())(0, 0) == Complex(0.0));
  CHECK(std::abs(r(Momentum(0, 2, 0))(0, 0) - 0.25) < 1e-15);
  CHECK_THROWS(reciprocal(MomentumFunction::identity(2)));
}

TEST_CASE("dimension mismatches are rejected") {
  CHECK_THROWS_AS(MomentumFunction::identity(2) + MomentumFunction::identity(3),
                  DimensionMismatch);
  CHECK_THROWS_AS(MomentumFunction::identity(2) * MomentumFunction::identity(3),
                  DimensionMismatch);
}

TEST_CASE("adjoint") {
  const auto f = MomentumFunction::component(0) * MomentumFunction::constant(kI * pauli(1) + pauli(2));
  const Momentum p(1.5, 0, 0);
  CHECK(max_abs(f.adjoint()(p) - f(p).adjoint()) < 1e-15);
}

TEST_CASE("tape evaluation agrees with direct evaluation") {
  const auto e = energy(1.0);
  const auto k = MomentumFunction::component(0) * MomentumFunction::constant(pauli(1)) *
                 reciprocal(e);
  const std::array<MomentumFunction, 4> roots{e, k, k.derivative(0), e * e};
  const Tape tape(roots);
  CHECK(tape.root_count() == 4);
  CHECK(tape.root_dim(1) == 2);
  Tape::Workspace ws(tape);
  for (const auto& p : lattice_momentum_samples()) {
    tape.evaluate(p, ws);
    for (std::size_t r = 0; r < roots.size(); ++r)
      CHECK(max_abs(Matrix(tape.root(ws, r)) - roots[r](p)) < 1e-14);
  }
}
