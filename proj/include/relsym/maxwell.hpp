#pragma once

// Maxwell equations in Hamiltonian form, H_1 = B.p on six-component fields
// phi = (-E, H), and the transform U_1 that takes H_1 to (sigma_3 x 1) |p| on
// the transverse subspace.

#include "relsym/grid.hpp"
#include "relsym/operator_set.hpp"

namespace relsym {

struct MaxwellContext {
  MaxwellBlocks<double> blocks;
  MomentumFunction hamiltonian;            // B_a p_a
  MomentumFunction abs_p;                  // |p|, scalar
  MomentumFunction inverse_abs_p;          // 1/|p|, 0 at p = 0
  MomentumFunction sigma;                  // sigma_3 x 1^3
  MomentumFunction transverse;             // H_1^2 / |p|^2, 0 at p = 0
  MomentumFunction transform;              // (1 + sigma H_1 / |p|) / sqrt 2
  MomentumFunction transform_adjoint;
  MomentumFunction canonical_hamiltonian;  // sigma |p|
  std::array<MomentumFunction, 3> rotation_spin;  // eps_abc 1^2 x S_c for (12), (13), (23)

  MomentumFunction momentum(int axis) const;
  MomentumFunction beta(int axis) const;
};

MaxwellContext build_maxwell_context();

// U_1 at p from the spectral route: 1/sqrt(H^2) applied on the nonzero
// eigenspaces of H_1(p) only.
Matrix spectral_transform(const MaxwellContext& ctx, const Momentum& p);

// Direct 1 - 1^2 x p p^T / |p|^2 (identity at p = 0).
Matrix transverse_projector_direct(const Momentum& p);

OperatorSet build_maxwell_set(SetLabel label, const MaxwellContext& ctx, Picture picture);

// The q1 rotation with the literal B_c in place of the rotation spin matrix.
CanonicalOperator literal_beta_rotation(int slot, const MaxwellContext& ctx);

CanonicalOperator maxwell_negative_control_boost(SetLabel label, Picture picture,
                                                 const MaxwellContext& ctx, int axis);

// Mode-wise projection onto the transverse subspace; the p = 0 mode is zeroed.
SpinorField project_transverse(const MaxwellContext& ctx, const SpinorField& field);

// Curl of a Gaussian wavepacket, taken separately on each 3-vector block of
// the six amplitudes, then projected. A curl keeps the field localized where
// the bare projection of a packet would leave 1/r^3 tails.
SpinorField make_transverse_field(const MaxwellContext& ctx, const GridSpec& grid,
                                  const WavepacketParams& params);

// phi = (-E, H) from the electric and magnetic fields (3 x sites each).
SpinorField field_from_eh(const GridSpec& grid, const Eigen::MatrixXd& electric,
                          const Eigen::MatrixXd& magnetic);

}  // namespace relsym
