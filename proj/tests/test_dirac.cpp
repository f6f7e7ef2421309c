#include "doctest.h"

#include <cmath>

#include "relsym/dirac.hpp"
#include "relsym/grid.hpp"
#include "relsym/sampling.hpp"

using namespace relsym;

namespace {

// H(p) assembled from gamma_0 gamma_4 = gamma_1 gamma_2 gamma_3.
Matrix dirac_h(const Momentum& p, double m) {
  const Matrix g0 = gamma(0);
  Matrix h = m * gamma(1) * gamma(2) * gamma(3);
  for (int a = 0; a < 3; ++a) h += p(a) * g0 * gamma(a + 1);
  return h;
}

// dQ/dt + i [H, Q] with Q = t A + B: A + i [H, Q].
CanonicalOperator heisenberg_defect(const CanonicalOperator& q, const MomentumFunction& h) {
  CanonicalOperator dt(q.dim());
  for (const auto& [m, c] : q.terms())
    if (m.t > 0) {
      Monomial lower = m;
      lower.t -= 1;
      dt.add_term(lower, Complex(m.t) * c);
    }
  return dt + kI * op_commutator(CanonicalOperator::multiplier(h), q);
}

}  // namespace

TEST_CASE("the Hamiltonian is alpha.p + gamma_0 gamma_4 m") {
  const auto ctx = build_context(1.3);
  for (const auto& p : lattice_momentum_samples())
    CHECK(max_abs(ctx.hamiltonian(p) - dirac_h(p, 1.3)) < 1e-15);
}

TEST_CASE("U diagonalizes H") {
  for (auto rep : {GammaRepresentation::DiracPauli, GammaRepresentation::Weyl}) {
    const auto ctx = build_context(1.0, rep);
    const Matrix g0 = gamma(0, rep);
    for (const auto& p : standard_momentum_samples()) {
      const double e = std::sqrt(1.0 + p.squaredNorm());
      const Matrix u = ctx.transform(p);
      CHECK(max_abs(u * u.adjoint() - Matrix::Identity(4, 4)) < 1e-14);
      CHECK(max_abs(u * ctx.hamiltonian(p) * u.adjoint() - e * g0) < 1e-13 * e);
      CHECK(max_abs(ctx.transform_adjoint(p) - u.adjoint()) < 1e-15);
    }
    const auto defects = context_defects(ctx, standard_momentum_samples());
    CHECK(defects.diagonalization < 1e-12);
    CHECK(defects.unitarity < 1e-13);
  }
}

TEST_CASE("mass must be positive") {
  CHECK_THROWS_AS(build_context(0.0), PreconditionError);
  CHECK_THROWS_AS(build_context(-1.0), PreconditionError);
}

TEST_CASE("the nonlocal position maps to x under U") {
  const auto ctx = build_context(1.0);
  const auto samples = lattice_momentum_samples();
  for (int a = 0; a < 3; ++a) {
    const auto mapped = conjugate(ctx.transform, x_tilde(a, ctx), samples);
    CHECK(max_difference(mapped, CanonicalOperator::position(a, 4), standard_momentum_samples()) <
          1e-12);
  }
}

TEST_CASE("every set commutes with the Schroedinger operator symbolically") {
  const auto ctx = build_context(1.0);
  const auto samples = standard_momentum_samples();
  for (auto picture : {Picture::Original, Picture::Canonical})
    for (auto label : {SetLabel::Q1, SetLabel::Q2, SetLabel::Q3, SetLabel::Q4}) {
      const auto set = build_set(label, ctx, picture);
      CAPTURE(set.description());
      for (const auto& g : set.generators()) {
        CAPTURE(g.name);
        CHECK(max_coefficient(heisenberg_defect(g.op, set.hamiltonian), samples) < 1e-11);
      }
      for (int a = 0; a < 3; ++a) {
        const auto control = negative_control_boost(label, picture, ctx, a);
        CHECK(max_coefficient(heisenberg_defect(control, set.hamiltonian), samples) > 1e-2);
      }
    }
}

TEST_CASE("canonical q3 and q4 built directly equal the conjugated originals") {
  const auto ctx = build_context(1.0);
  const auto samples = standard_momentum_samples();
  for (auto label : {SetLabel::Q3, SetLabel::Q4}) {
    const auto direct = build_set(label, ctx, Picture::Canonical);
    const auto conjugated = build_set_by_conjugation(label, ctx);
    const auto a = direct.generators(), b = conjugated.generators();
    for (std::size_t k = 0; k < a.size(); ++k) {
      CAPTURE(a[k].name);
      CHECK(max_difference(a[k].op, b[k].op, samples) < 1e-9);
    }
  }
}

TEST_CASE("tilded gammas obey the Euclidean Clifford algebra and commute with H") {
  const auto ctx = build_context(0.7);
  const Matrix one = Matrix::Identity(4, 4);
  for (const auto& p : lattice_momentum_samples()) {
    const Matrix h = ctx.hamiltonian(p);
    for (int k = 1; k <= 4; ++k) {
      const Matrix gk = tilded_gamma(k, ctx)(p);
      for (int l = 1; l <= 4; ++l) {
        const Matrix gl = tilded_gamma(l, ctx)(p);
        CHECK(max_abs(anticommutator_m(gk, gl) + 2.0 * (k == l ? 1.0 : 0.0) * one) < 1e-12);
        CHECK(max_abs(commutator_m(h, tilded_spin(k, l, ctx)(p))) < 1e-12);
      }
    }
  }
  CHECK_THROWS_AS(tilded_gamma(0, ctx), IndexError);
  CHECK_THROWS_AS(tilded_gamma(5, ctx), IndexError);
}

TEST_CASE("set names round-trip") {
  for (auto label : {SetLabel::Q1, SetLabel::Q2, SetLabel::Q3, SetLabel::Q4})
    CHECK(parse_set_label(to_string(label)) == label);
  CHECK(parse_picture("canonical") == Picture::Canonical);
  CHECK_THROWS_AS(parse_set_label("q7"), ConfigurationError);
  CHECK(rotation_slot(1, 0) == std::pair{0, -1});
}

TEST_CASE("symmetrized x H on the grid is the mean of both orderings") {
  const auto ctx = build_context(1.0);
  GridSpec g;
  g.n = 64;
  g.length = 24;
  WavepacketParams wp;
  wp.sigma = 1.0;  // tails below 1e-15 on the faces, as H(x psi) needs
  wp.momentum = Momentum(0.4, 0.1, -0.6);
  wp.amplitudes = Eigen::VectorXcd::Zero(4);
  wp.amplitudes << 1.0, Complex(0, 0.5), -0.2, 0.3;
  const auto psi = gaussian_wavepacket(g, wp);
  const auto h = CanonicalOperator::multiplier(ctx.hamiltonian);
  const auto x1 = CanonicalOperator::position(0, 4);
  const auto direct = apply(symmetrized_x(0, ctx.hamiltonian), psi, 0.0);
  const auto composed = Complex(0.5) * (apply(x1, apply(h, psi, 0.0), 0.0) +
                                        apply(h, apply(x1, psi, 0.0), 0.0));
  CHECK((direct.values() - composed.values()).norm() <= 1e-10 * composed.values().norm());
}
