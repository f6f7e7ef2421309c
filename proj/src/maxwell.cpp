#include "relsym/maxwell.hpp"

#include <cmath>

namespace relsym {

namespace {

// Eigen's cross() conjugates complex operands; the curl needs the plain product.
Eigen::Vector3cd cross(const Eigen::Vector3cd& u, const Eigen::Vector3cd& w) {
  return {u(1) * w(2) - u(2) * w(1), u(2) * w(0) - u(0) * w(2), u(0) * w(1) - u(1) * w(0)};
}

constexpr int kDim = 6;
const Complex kHalfI{0.0, 0.5};

CanonicalOperator mult(const MomentumFunction& m) { return CanonicalOperator::multiplier(m); }

CanonicalOperator orbital(int a, int b) {
  CanonicalOperator op(kDim);
  op.add_term(Monomial::position(a), MomentumFunction::component(b));
  op.add_term(Monomial::position(b), -MomentumFunction::component(a));
  return op;
}

CanonicalOperator time_momentum(int axis, const MaxwellContext& ctx) {
  return CanonicalOperator::monomial(Monomial::time(), ctx.momentum(axis));
}

int third_axis(int a, int b) { return 3 - a - b; }

}  // namespace

MomentumFunction MaxwellContext::momentum(int axis) const {
  return MomentumFunction::component(axis) * MomentumFunction::identity(kDim);
}

MomentumFunction MaxwellContext::beta(int axis) const {
  return MomentumFunction::constant(blocks.beta.at(axis));
}

MaxwellContext build_maxwell_context() {
  MaxwellContext ctx;
  ctx.blocks = maxwell_blocks<double>();
  const auto& b = ctx.blocks;
  MomentumFunction h = MomentumFunction::zero(kDim);
  for (int a = 0; a < 3; ++a) h = h + ctx.beta(a) * MomentumFunction::component(a);
  ctx.hamiltonian = h;
  ctx.abs_p = sqrt(momentum_squared());
  ctx.inverse_abs_p = reciprocal(ctx.abs_p);
  ctx.sigma = MomentumFunction::constant(kron(b.sigma3, b.identity3));
  ctx.transverse = h * h * (ctx.inverse_abs_p * ctx.inverse_abs_p);
  const auto k = ctx.sigma * h * ctx.inverse_abs_p;
  const auto one = MomentumFunction::identity(kDim);
  const Complex r(1.0 / std::sqrt(2.0));
  ctx.transform = r * (one + k);
  ctx.transform_adjoint = r * (one - k);
  ctx.canonical_hamiltonian = ctx.sigma * ctx.abs_p;
  const Matrix eye2 = Matrix::Identity(2, 2);
  for (int slot = 0; slot < 3; ++slot) {
    const auto [p, q] = kRotationPairs[slot];
    const int c = third_axis(p, q);
    ctx.rotation_spin[slot] = MomentumFunction::constant(
        Matrix(double(levi_civita(p, q, c)) * kron(eye2, b.spin1[c])));
  }
  return ctx;
}

Matrix spectral_transform(const MaxwellContext& ctx, const Momentum& p) {
  const Matrix h = ctx.hamiltonian(p);
  SpectralOptions options;
  options.kernel = KernelPolicy::Exclude;
  options.kernel_tolerance = 1e-9 * std::max(1.0, p.norm());
  const Matrix inv_abs = hermitian_function(h, [](double x) { return 1.0 / std::abs(x); }, options);
  const Matrix sigma = ctx.sigma(p);
  return (Matrix::Identity(kDim, kDim) + sigma * h * inv_abs) / std::sqrt(2.0);
}

Matrix transverse_projector_direct(const Momentum& p) {
  Matrix out = Matrix::Identity(kDim, kDim);
  const double p2 = p.squaredNorm();
  if (p2 == 0.0) return out;
  const Eigen::Matrix3cd block = (p * p.transpose() / p2).cast<Complex>();
  out.block<3, 3>(0, 0) -= block;
  out.block<3, 3>(3, 3) -= block;
  return out;
}

OperatorSet build_maxwell_set(SetLabel label, const MaxwellContext& ctx, Picture picture) {
  if (label != SetLabel::Q1 && label != SetLabel::Q2)
    throw ConfigurationError("Maxwell generator sets exist for q1 and q2 only");
  OperatorSet set;
  set.equation = Equation::Maxwell;
  set.label = label;
  set.picture = picture;
  set.dim = kDim;
  set.mass = 0.0;
  const bool original = picture == Picture::Original;
  set.hamiltonian = original ? ctx.hamiltonian : ctx.canonical_hamiltonian;
  set.p0 = on_shell_reduce(OffShellOperator::p0(kDim), set.hamiltonian);
  for (int a = 0; a < 3; ++a) set.p[a] = mult(ctx.momentum(a));
  for (int slot = 0; slot < 3; ++slot) {
    const auto [a, b] = kRotationPairs[slot];
    set.rotation[slot] = orbital(a, b) + mult(ctx.rotation_spin[slot]);
    set.spin[slot] = ctx.rotation_spin[slot];
  }
  for (int a = 0; a < 3; ++a) {
    const auto tp = time_momentum(a, ctx);
    if (original) {
      if (label == SetLabel::Q1) {
        // x_0 p_a - x_a p_0 + (i/2) B_a, the spin part taken from B.
        OffShellOperator j(tp + mult(kHalfI * ctx.beta(a)),
                           Complex(-1.0) * CanonicalOperator::position(a, kDim));
        set.boost[a] = on_shell_reduce(j, ctx.hamiltonian);
      } else {
        set.boost[a] = tp - symmetrized_x(a, ctx.hamiltonian);
      }
    } else if (label == SetLabel::Q1) {
      OffShellOperator j(tp, Complex(-1.0) * CanonicalOperator::position(a, kDim));
      set.boost[a] = on_shell_reduce(j, ctx.canonical_hamiltonian);
    } else {
      // (sigma / 2)(x_a |p| + |p| x_a)
      set.boost[a] = tp - normal_product(mult(ctx.sigma),
                                         symmetrized_x(a, ctx.abs_p * MomentumFunction::identity(kDim)));
    }
  }
  return set;
}

CanonicalOperator literal_beta_rotation(int slot, const MaxwellContext& ctx) {
  if (slot < 0 || slot > 2) throw IndexError("literal_beta_rotation: slot must be 0..2");
  const auto [a, b] = kRotationPairs[slot];
  const int c = third_axis(a, b);
  return orbital(a, b) + mult(Complex(double(levi_civita(a, b, c))) * ctx.beta(c));
}

CanonicalOperator maxwell_negative_control_boost(SetLabel label, Picture picture,
                                                 const MaxwellContext& ctx, int axis) {
  if (axis < 0 || axis > 2) throw IndexError("maxwell_negative_control_boost: axis must be 0..2");
  const auto tp = time_momentum(axis, ctx);
  const auto abs_p = ctx.abs_p * MomentumFunction::identity(kDim);
  // t p_a - x_a H_1 is no control in the original picture: it differs from the
  // boost by (i/2) B_a, whose commutator with H_1 is longitudinal on
  // transverse fields. The scalar |p| in place of H_1 is.
  if (picture == Picture::Original || label == SetLabel::Q1)
    return tp - normal_product(CanonicalOperator::position(axis, kDim), mult(abs_p));
  return tp - symmetrized_x(axis, abs_p);
}

SpinorField project_transverse(const MaxwellContext& ctx, const SpinorField& field) {
  if (field.components() != kDim)
    throw DimensionMismatch("project_transverse: field must have six components");
  auto spectrum = forward_transform(field);
  multiply_pointwise(tabulate(field.grid(), ctx.transverse), kDim, spectrum);
  return inverse_transform(field.grid(), std::move(spectrum));
}

SpinorField make_transverse_field(const MaxwellContext& ctx, const GridSpec& grid,
                                  const WavepacketParams& params) {
  if (grid.components != kDim)
    throw DimensionMismatch("make_transverse_field: grid must carry six components");
  // Validates sigma and the center; the envelope itself is rebuilt below.
  (void)gaussian_wavepacket(grid, params);
  const double denom = 4.0 * params.sigma * params.sigma;
  const Eigen::Vector3cd a_lower = params.amplitudes.head<3>();
  const Eigen::Vector3cd a_upper = params.amplitudes.tail<3>();
  SpinorField field(grid);
  auto& v = field.values();
  for (std::size_t s = 0; s < grid.sites(); ++s) {
    const Momentum x = grid.position_at(s);
    const Momentum r = x - params.center;
    const Complex g = std::exp(Complex(-r.squaredNorm() / denom, params.momentum.dot(x)));
    // grad g; the curl of g a is grad g x a.
    const Eigen::Vector3cd grad =
        g * (Complex(-2.0 / denom) * r.cast<Complex>() + Complex(0.0, 1.0) * params.momentum.cast<Complex>());
    const auto col = static_cast<Eigen::Index>(s);
    v.col(col).head<3>() = cross(grad, a_lower);
    v.col(col).tail<3>() = cross(grad, a_upper);
  }
  // Removes the lattice remainder of the divergence; the analytic field has none.
  field = project_transverse(ctx, field);
  const double norm = field.norm();
  if (norm == 0.0) throw PreconditionError("make_transverse_field: packet has no transverse part");
  field *= Complex(1.0 / norm);
  return field;
}

SpinorField field_from_eh(const GridSpec& grid, const Eigen::MatrixXd& electric,
                          const Eigen::MatrixXd& magnetic) {
  if (grid.components != kDim) throw DimensionMismatch("field_from_eh: grid must carry six components");
  const auto sites = static_cast<Eigen::Index>(grid.sites());
  if (electric.rows() != 3 || magnetic.rows() != 3 || electric.cols() != sites ||
      magnetic.cols() != sites)
    throw DimensionMismatch("field_from_eh: expected 3 x sites arrays");
  SpinorField::Values v(kDim, sites);
  v.topRows(3) = -electric.cast<Complex>();
  v.bottomRows(3) = magnetic.cast<Complex>();
  return SpinorField(grid, std::move(v));
}

}  // namespace relsym
