#pragma once

// Dirac Hamiltonian, the Foldy-Wouthuysen transform, the four generator sets
// in both pictures, and the nonlocal O(4) spin operators.

#include <span>

#include "relsym/operator_set.hpp"

namespace relsym {

struct DiracContext {
  double mass = 1.0;
  GammaSet<double> gammas;
  MomentumFunction hamiltonian;        // gamma_0 gamma_a p_a + gamma_0 gamma_4 m
  MomentumFunction energy;             // sqrt(p^2 + m^2), scalar
  MomentumFunction inverse_energy;     // 1 / E, scalar
  MomentumFunction sign;               // K = gamma_0 H / E
  MomentumFunction transform;          // U = (1 + K) / sqrt 2
  MomentumFunction transform_adjoint;  // U^dagger = (1 - K) / sqrt 2
  MomentumFunction canonical_hamiltonian;  // gamma_0 E

  MomentumFunction momentum(int axis) const;  // p_axis times the identity
  MomentumFunction gamma(int mu) const;       // constant gamma_mu
};

// Throws PreconditionError for m <= 0 and Error if H^2 = E^2 fails at the standard
// samples.
DiracContext build_context(double mass,
                           GammaRepresentation representation = GammaRepresentation::DiracPauli);

// Max over samples of |H^2 - E^2| / E^2, |U U^dagger - 1| and
// |U H U^dagger - gamma_0 E| / E.
struct ContextDefects {
  double square = 0.0;
  double unitarity = 0.0;
  double diagonalization = 0.0;
};
ContextDefects context_defects(const DiracContext& ctx, std::span<const Momentum> samples);

// x_a plus the nonlocal correction (i/2)(1 - K)(gamma_a / E - gamma_0 H p_a / E^3).
CanonicalOperator x_tilde(int axis, const DiracContext& ctx);

OperatorSet build_set(SetLabel label, const DiracContext& ctx, Picture picture);

// Canonical set obtained by conjugating every original generator with U.
OperatorSet build_set_by_conjugation(SetLabel label, const DiracContext& ctx);

// Boost with the distinguishing term of the set removed; it must fail the
// invariance check.
CanonicalOperator negative_control_boost(SetLabel label, Picture picture, const DiracContext& ctx,
                                         int axis);

// gamma-tilde_k for k in 1..4 (k = 4 is gamma_4).
MomentumFunction tilded_gamma(int k, const DiracContext& ctx);
// (i/4)[gamma-tilde_k, gamma-tilde_l]; zero for k == l.
MomentumFunction tilded_spin(int k, int l, const DiracContext& ctx);

}  // namespace relsym
