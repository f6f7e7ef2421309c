#include "relsym/dirac.hpp"

#include <cmath>

#include "relsym/sampling.hpp"

namespace relsym {

namespace {

const Complex kHalfI{0.0, 0.5};
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

MomentumFunction constant(const Matrix& m) { return MomentumFunction::constant(m); }

CanonicalOperator mult(const MomentumFunction& m) { return CanonicalOperator::multiplier(m); }

CanonicalOperator rotation(int a, int b, const MomentumFunction& spin, int dim) {
  // x_a p_b - x_b p_a + S_ab
  const auto pa = MomentumFunction::component(a) * MomentumFunction::identity(dim);
  const auto pb = MomentumFunction::component(b) * MomentumFunction::identity(dim);
  CanonicalOperator op(dim);
  op.add_term(Monomial::position(a), pb);
  op.add_term(Monomial::position(b), -pa);
  op.add_term(Monomial::one(), spin);
  return op;
}

CanonicalOperator time_momentum(int axis, const DiracContext& ctx) {
  return CanonicalOperator::monomial(Monomial::time(), ctx.momentum(axis));
}

// (i/2)(1 - K)(gamma_a / E - gamma_0 H p_a / E^3), the correction in x-tilde.
MomentumFunction x_tilde_correction(int axis, const DiracContext& ctx) {
  const auto one = MomentumFunction::identity(4);
  const auto inv = ctx.inverse_energy;
  const auto inv3 = inv * inv * inv;
  const auto bracket = ctx.gamma(axis + 1) * inv -
                       ctx.gamma(0) * ctx.hamiltonian * (MomentumFunction::component(axis) * inv3);
  return kHalfI * ((one - ctx.sign) * bracket);
}

OperatorSet skeleton(SetLabel label, const DiracContext& ctx, Picture picture) {
  OperatorSet set;
  set.equation = Equation::Dirac;
  set.label = label;
  set.picture = picture;
  set.dim = 4;
  set.mass = ctx.mass;
  set.hamiltonian = picture == Picture::Original ? ctx.hamiltonian : ctx.canonical_hamiltonian;
  for (int a = 0; a < 3; ++a) set.p[a] = mult(ctx.momentum(a));
  for (int k = 0; k < 3; ++k) {
    const auto [a, b] = kRotationPairs[k];
    set.rotation[k] = rotation(a, b, constant(ctx.gammas.spin(a + 1, b + 1)), 4);
    // The spin matrices adjoined to close the deformed boost algebra: plain
    // in the canonical picture, U^dagger S U in the original one.
    set.spin[k] = picture == Picture::Canonical ? constant(ctx.gammas.spin(a + 1, b + 1))
                                                : tilded_spin(a + 1, b + 1, ctx);
  }
  return set;
}

OperatorSet build_original(SetLabel label, const DiracContext& ctx) {
  auto set = skeleton(label, ctx, Picture::Original);
  const auto& h = ctx.hamiltonian;
  const int d = 4;
  // p0 enters q1 and q3 only as a right factor and is reduced on shell.
  set.p0 = on_shell_reduce(OffShellOperator::p0(d), h);
  for (int a = 0; a < 3; ++a) {
    switch (label) {
      case SetLabel::Q1: {
        const auto s0a = constant(ctx.gammas.spin(0, a + 1));
        OffShellOperator j(time_momentum(a, ctx) + mult(s0a),
                           Complex(-1.0) * CanonicalOperator::position(a, d));
        set.boost[a] = on_shell_reduce(j, h);
        break;
      }
      case SetLabel::Q2:
        set.boost[a] = time_momentum(a, ctx) - symmetrized_x(a, h);
        break;
      case SetLabel::Q3: {
        OffShellOperator j(time_momentum(a, ctx), Complex(-1.0) * x_tilde(a, ctx));
        set.boost[a] = on_shell_reduce(j, h);
        break;
      }
      case SetLabel::Q4:
        set.boost[a] = time_momentum(a, ctx) - symmetrized_product(x_tilde(a, ctx), mult(h));
        break;
    }
  }
  return set;
}

OperatorSet build_canonical_direct(SetLabel label, const DiracContext& ctx) {
  auto set = skeleton(label, ctx, Picture::Canonical);
  const auto& hc = ctx.canonical_hamiltonian;
  const int d = 4;
  set.p0 = on_shell_reduce(OffShellOperator::p0(d), hc);
  for (int a = 0; a < 3; ++a) {
    if (label == SetLabel::Q3) {
      OffShellOperator j(time_momentum(a, ctx), Complex(-1.0) * CanonicalOperator::position(a, d));
      set.boost[a] = on_shell_reduce(j, hc);
    } else {
      // (gamma_0 / 2)(x_a E + E x_a)
      const auto sym = normal_product(mult(ctx.gamma(0)),
                                      symmetrized_x(a, ctx.energy * MomentumFunction::identity(d)));
      set.boost[a] = time_momentum(a, ctx) - sym;
    }
  }
  return set;
}

}  // namespace

MomentumFunction DiracContext::momentum(int axis) const {
  return MomentumFunction::component(axis) * MomentumFunction::identity(4);
}

MomentumFunction DiracContext::gamma(int mu) const {
  if (mu < 0 || mu > 4) throw IndexError("gamma index must be 0..4");
  return MomentumFunction::constant(gammas[mu]);
}

DiracContext build_context(double mass, GammaRepresentation representation) {
  if (!(mass > 0) || !std::isfinite(mass))
    throw PreconditionError("build_context: mass must be positive, got " + std::to_string(mass));
  DiracContext ctx;
  ctx.mass = mass;
  ctx.gammas = GammaSet<double>(representation);
  const auto& g = ctx.gammas;

  MomentumFunction h = constant(Matrix(g[0] * g[4] * mass));
  MomentumFunction gp = constant(Matrix(g[4] * mass));  // gamma_0 H = gamma_b p_b + gamma_4 m
  for (int a = 0; a < 3; ++a) {
    const auto pa = MomentumFunction::component(a);
    h = h + constant(Matrix(g[0] * g[a + 1])) * pa;
    gp = gp + constant(g[a + 1]) * pa;
  }
  ctx.hamiltonian = h;
  ctx.energy = sqrt(momentum_squared() + MomentumFunction::scalar(mass * mass));
  ctx.inverse_energy = reciprocal(ctx.energy);
  ctx.sign = gp * ctx.inverse_energy;
  const auto one = MomentumFunction::identity(4);
  ctx.transform = Complex(kInvSqrt2) * (one + ctx.sign);
  ctx.transform_adjoint = Complex(kInvSqrt2) * (one - ctx.sign);
  ctx.canonical_hamiltonian = constant(g[0]) * ctx.energy;

  const auto samples = standard_momentum_samples();
  const auto defects = context_defects(ctx, samples);
  if (defects.square > 1e-12)
    throw Error("build_context: H^2 = E^2 fails, relative defect " +
                std::to_string(defects.square));
  return ctx;
}

ContextDefects context_defects(const DiracContext& ctx, std::span<const Momentum> samples) {
  ContextDefects out;
  const std::array<MomentumFunction, 5> roots{ctx.hamiltonian, ctx.energy, ctx.transform,
                                               ctx.transform_adjoint, ctx.canonical_hamiltonian};
  const Tape tape(roots);
  Tape::Workspace ws(tape);
  const Matrix eye = Matrix::Identity(4, 4);
  for (const auto& p : samples) {
    tape.evaluate(p, ws);
    const Matrix h = tape.root(ws, 0);
    const double e = tape.root(ws, 1)(0, 0).real();
    const Matrix u = tape.root(ws, 2);
    const Matrix ud = tape.root(ws, 3);
    const Matrix hc = tape.root(ws, 4);
    out.square = std::max(out.square, max_abs(Matrix(h * h - e * e * eye)) / (e * e));
    out.unitarity = std::max(out.unitarity, max_abs(Matrix(u * u.adjoint() - eye)));
    out.unitarity = std::max(out.unitarity, max_abs(Matrix(ud - u.adjoint())));
    out.diagonalization =
        std::max(out.diagonalization, max_abs(Matrix(u * h * u.adjoint() - hc)) / e);
  }
  return out;
}

CanonicalOperator x_tilde(int axis, const DiracContext& ctx) {
  if (axis < 0 || axis > 2) throw IndexError("x_tilde: axis must be 0..2");
  return CanonicalOperator::position(axis, 4) + mult(x_tilde_correction(axis, ctx));
}

OperatorSet build_set(SetLabel label, const DiracContext& ctx, Picture picture) {
  if (picture == Picture::Original) return build_original(label, ctx);
  if (label == SetLabel::Q1 || label == SetLabel::Q2) return build_set_by_conjugation(label, ctx);
  return build_canonical_direct(label, ctx);
}

OperatorSet build_set_by_conjugation(SetLabel label, const DiracContext& ctx) {
  const auto original = build_original(label, ctx);
  auto set = skeleton(label, ctx, Picture::Canonical);
  const auto samples = lattice_momentum_samples();
  const auto& u = ctx.transform;
  set.p0 = conjugate(u, original.p0, samples);
  for (int a = 0; a < 3; ++a) {
    set.p[a] = conjugate(u, original.p[a], samples);
    set.rotation[a] = conjugate(u, original.rotation[a], samples);
    set.boost[a] = conjugate(u, original.boost[a], samples);
  }
  return set;
}

CanonicalOperator negative_control_boost(SetLabel label, Picture picture, const DiracContext& ctx,
                                         int axis) {
  if (axis < 0 || axis > 2) throw IndexError("negative_control_boost: axis must be 0..2");
  const int d = 4;
  const auto tp = time_momentum(axis, ctx);
  if (picture == Picture::Original) {
    if (label == SetLabel::Q4) {
      // The canonical q4 boost used without the transform.
      return tp - normal_product(mult(ctx.gamma(0)),
                                 symmetrized_x(axis, ctx.energy * MomentumFunction::identity(d)));
    }
    // t p_a - x_a H: spin term (q1), symmetrization (q2) or nonlocal term (q3) dropped.
    return tp - normal_product(CanonicalOperator::position(axis, d), mult(ctx.hamiltonian));
  }
  switch (label) {
    case SetLabel::Q1:
    case SetLabel::Q2:
      // The untransformed original boost.
      return tp - symmetrized_x(axis, ctx.hamiltonian);
    case SetLabel::Q3:
      return tp - normal_product(CanonicalOperator::position(axis, d),
                                 mult(ctx.energy * MomentumFunction::identity(d)));
    case SetLabel::Q4:
      return tp - symmetrized_x(axis, ctx.energy * MomentumFunction::identity(d));
  }
  return CanonicalOperator(d);
}

MomentumFunction tilded_gamma(int k, const DiracContext& ctx) {
  if (k < 1 || k > 4) throw IndexError("tilded_gamma: index must be 1..4");
  const auto one = MomentumFunction::identity(4);
  const auto& inv = ctx.inverse_energy;
  const auto g4 = ctx.gamma(4);
  if (k == 4) {
    // gamma_4 + (1 - (gamma_b p_b + gamma_4 m)/E) gamma_4 gamma_c p_c / E
    MomentumFunction gc = MomentumFunction::zero(4);
    for (int c = 0; c < 3; ++c) gc = gc + ctx.gamma(c + 1) * MomentumFunction::component(c);
    return g4 + (one - ctx.sign) * (g4 * gc * inv);
  }
  // gamma_a + (1/2)(1 - K)((gamma_a gamma_c - gamma_c gamma_a) p_c + 2 gamma_a gamma_4 m) / E
  const auto ga = ctx.gamma(k);
  MomentumFunction numerator = Complex(2.0 * ctx.mass) * (ga * g4);
  for (int c = 0; c < 3; ++c) {
    const auto gc = ctx.gamma(c + 1);
    numerator = numerator + (ga * gc - gc * ga) * MomentumFunction::component(c);
  }
  return ga + Complex(0.5) * ((one - ctx.sign) * (numerator * inv));
}

MomentumFunction tilded_spin(int k, int l, const DiracContext& ctx) {
  if (k < 1 || k > 4 || l < 1 || l > 4) throw IndexError("tilded_spin: indices must be 1..4");
  if (k == l) return MomentumFunction::zero(4);
  const auto gk = tilded_gamma(k, ctx);
  const auto gl = tilded_gamma(l, ctx);
  return Complex(0.0, 0.25) * (gk * gl - gl * gk);
}

}  // namespace relsym
