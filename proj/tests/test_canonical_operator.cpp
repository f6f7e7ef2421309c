#include "doctest.h"

#include <cmath>

#include "relsym/canonical_operator.hpp"
#include "relsym/sampling.hpp"

using namespace relsym;

namespace {

MomentumFunction p_(int a, int dim = 1) {
  return MomentumFunction::component(a) * MomentumFunction::identity(dim);
}

}  // namespace

TEST_CASE("canonical commutation [x_a, p_b] = i delta_ab") {
  const auto samples = lattice_momentum_samples();
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const auto c = op_commutator(CanonicalOperator::position(a, 1),
                                   CanonicalOperator::multiplier(p_(b)));
      const auto expected = CanonicalOperator::multiplier(
          MomentumFunction::scalar(a == b ? kI : Complex(0.0)));
      CHECK(max_difference(c, expected, samples) < 1e-15);
    }
}

TEST_CASE("normal ordering moves x to the left") {
  // M(p) x_1 with M = p_1^2: x_1 p_1^2 - 2 i p_1.
  const auto m = MomentumFunction::component(0) * MomentumFunction::component(0);
  const auto prod = normal_product(CanonicalOperator::multiplier(m), CanonicalOperator::position(0, 1));
  const Momentum p(0.8, 0.1, -0.3);
  CHECK(std::abs(prod.coefficient(Monomial::position(0))(p)(0, 0) - 0.64) < 1e-15);
  CHECK(std::abs(prod.coefficient(Monomial::one())(p)(0, 0) - Complex(0, -1.6)) < 1e-15);
}

TEST_CASE("x_a x_b M(p) reorders with second derivatives") {
  // E x_1 x_1 = x_1 x_1 E - 2 i x_1 dE - d^2E, with E = sqrt(p^2 + 1).
  const auto e = sqrt(momentum_squared() + MomentumFunction::scalar(1.0));
  const auto x1 = CanonicalOperator::position(0, 1);
  const auto op = CanonicalOperator::multiplier(e) * x1 * x1;
  const Momentum p(0.5, -0.7, 1.2);
  const double ev = std::sqrt(1.0 + p.squaredNorm());
  Monomial xx;
  xx.x = {2, 0, 0};
  CHECK(std::abs(op.coefficient(xx)(p)(0, 0) - ev) < 1e-14);
  CHECK(std::abs(op.coefficient(Monomial::position(0))(p)(0, 0) - Complex(0, -2 * p(0) / ev)) <
        1e-14);
  const double d2 = (1.0 - p(0) * p(0) / (ev * ev)) / ev;
  CHECK(std::abs(op.coefficient(Monomial::one())(p)(0, 0) + d2) < 1e-14);
}

TEST_CASE("degree limits") {
  const auto x1 = CanonicalOperator::position(0, 1);
  CHECK_THROWS_AS(x1 * x1 * x1, DegreeOverflow);
  const auto t = CanonicalOperator::time(1);
  CHECK_THROWS_AS(t * t * t, DegreeOverflow);
  CHECK((x1 * x1).degree() == 2);
  CHECK((t * x1).time_degree() == 1);
}

TEST_CASE("symmetrized_x is the Weyl ordering") {
  const auto e = sqrt(momentum_squared() + MomentumFunction::scalar(2.0));
  const auto s = symmetrized_x(1, e);
  const auto direct = symmetrized_product(CanonicalOperator::position(1, 1),
                                          CanonicalOperator::multiplier(e));
  const auto samples = standard_momentum_samples();
  CHECK(max_difference(s, direct, samples) < 1e-14);
}

TEST_CASE("commutator is antisymmetric and obeys Jacobi") {
  const auto samples = lattice_momentum_samples();
  const auto a = CanonicalOperator::position(0, 2) +
                 CanonicalOperator::multiplier(p_(1, 2) * MomentumFunction::constant(pauli(1)));
  const auto b = normal_product(CanonicalOperator::position(1, 2),
                                CanonicalOperator::multiplier(
                                    MomentumFunction::component(0) * MomentumFunction::constant(pauli(3))));
  const auto c = CanonicalOperator::multiplier(sqrt(momentum_squared() + MomentumFunction::scalar(1.0)) *
                                               MomentumFunction::constant(pauli(2)));
  CHECK(max_difference(op_commutator(a, b), -op_commutator(b, a), samples) < 1e-14);
  const auto jacobi = op_commutator(a, op_commutator(b, c)) + op_commutator(b, op_commutator(c, a)) +
                      op_commutator(c, op_commutator(a, b));
  CHECK(max_coefficient(jacobi, samples) < 1e-13);
}

TEST_CASE("conjugation by a constant unitary") {
  const Matrix u = (pauli(0) + kI * pauli(2)) / std::sqrt(2.0);
  const auto uf = MomentumFunction::constant(u);
  const auto o = CanonicalOperator::position(0, 2) +
                 CanonicalOperator::multiplier(MomentumFunction::constant(pauli(3)));
  const auto samples = lattice_momentum_samples();
  const auto c = conjugate(uf, o, samples);
  const Matrix expected = u * pauli(3) * u.adjoint();
  CHECK(max_abs(c.coefficient(Monomial::one())(Momentum::Zero()) - expected) < 1e-15);
  CHECK(max_abs(c.coefficient(Monomial::position(0))(Momentum::Zero()) - pauli(0)) < 1e-15);
  CHECK_THROWS(conjugate(MomentumFunction::constant(2.0 * pauli(0)), o, samples));
}

TEST_CASE("off-shell p0 stays a right factor") {
  const auto h = MomentumFunction::constant(pauli(3)) * MomentumFunction::component(2);
  const auto x = CanonicalOperator::position(2, 2);
  const auto o = x * OffShellOperator::p0(2);
  CHECK(o.has_p0());
  CHECK_THROWS_AS(o * x, UnsupportedForm);
  const auto reduced = on_shell_reduce(o, h);
  const auto expected = normal_product(x, CanonicalOperator::multiplier(h));
  CHECK(max_difference(reduced, expected, lattice_momentum_samples()) == 0.0);
}

TEST_CASE("prune_vanishing drops cancelled terms") {
  const auto x = CanonicalOperator::position(0, 1);
  const auto zeroed = (x + CanonicalOperator::identity(1)) - x;
  const auto pruned = prune_vanishing(zeroed, lattice_momentum_samples(), 1e-14);
  CHECK(pruned.terms().size() == 1);
  CHECK(pruned.degree() == 0);
}

TEST_CASE("normal_product is associative") {
  const auto e = sqrt(momentum_squared() + MomentumFunction::scalar(1.0)) * MomentumFunction::identity(2);
  const auto a = CanonicalOperator::position(0, 2) +
                 CanonicalOperator::multiplier(MomentumFunction::constant(pauli(1)) * e);
  const auto b = CanonicalOperator::multiplier(MomentumFunction::component(0) *
                                               MomentumFunction::constant(pauli(3)));
  const auto c = CanonicalOperator::position(1, 2) + CanonicalOperator::multiplier(e);
  const auto samples = random_ball_samples(200, 3.0, 11);
  const auto left = normal_product(a, normal_product(b, c));
  const auto right = normal_product(normal_product(a, b), c);
  const double scale = std::max(1.0, max_coefficient(left, samples));
  CHECK(max_difference(left, right, samples) <= 1e-10 * scale);
}
