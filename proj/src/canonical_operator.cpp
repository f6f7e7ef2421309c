#include "relsym/canonical_operator.hpp"

#include <vector>

namespace relsym {

std::string Monomial::to_string() const {
  std::string s;
  if (t == 1) s += "t";
  if (t > 1) s += "t^" + std::to_string(t);
  static constexpr const char* names[3] = {"x1", "x2", "x3"};
  for (int a = 0; a < 3; ++a) {
    if (x[a] == 0) continue;
    if (!s.empty()) s += "*";
    s += names[a];
    if (x[a] > 1) s += "^" + std::to_string(x[a]);
  }
  return s.empty() ? "1" : s;
}

Monomial Monomial::position(int axis) {
  if (axis < 0 || axis > 2) throw IndexError("Monomial::position: axis must be 0..2");
  Monomial m;
  m.x[axis] = 1;
  return m;
}

namespace {

Monomial multiply(const Monomial& a, const Monomial& b) {
  Monomial m;
  m.t = a.t + b.t;
  for (int k = 0; k < 3; ++k) m.x[k] = a.x[k] + b.x[k];
  return m;
}

bool admissible(const Monomial& m) {
  return m.degree() <= kMaxPositionDegree && m.t <= kMaxTimeDegree;
}

// C x^beta as a sum of normal-ordered terms x^gamma C'.
std::vector<std::pair<Monomial, MomentumFunction>> move_right_positions(
    const MomentumFunction& c, const Monomial& beta) {
  std::vector<std::pair<Monomial, MomentumFunction>> terms{{Monomial{}, c}};
  for (int axis = 0; axis < 3; ++axis) {
    for (int k = 0; k < beta.x[axis]; ++k) {
      std::vector<std::pair<Monomial, MomentumFunction>> next;
      for (const auto& [mono, coeff] : terms) {
        // (x^gamma C) x_a = x^gamma x_a C - i x^gamma dC/dp_a
        Monomial raised = mono;
        raised.x[axis] += 1;
        next.emplace_back(raised, coeff);
        auto d = coeff.derivative(axis);
        if (!d.is_zero()) next.emplace_back(mono, Complex(0.0, -1.0) * d);
      }
      terms = std::move(next);
    }
  }
  return terms;
}

}  // namespace

CanonicalOperator CanonicalOperator::multiplier(const MomentumFunction& m) {
  CanonicalOperator op(m.dim());
  op.add_term(Monomial::one(), m);
  return op;
}

CanonicalOperator CanonicalOperator::identity(int dim) {
  return multiplier(MomentumFunction::identity(dim));
}

CanonicalOperator CanonicalOperator::position(int axis, int dim) {
  CanonicalOperator op(dim);
  op.add_term(Monomial::position(axis), MomentumFunction::identity(dim));
  return op;
}

CanonicalOperator CanonicalOperator::time(int dim) {
  CanonicalOperator op(dim);
  op.add_term(Monomial::time(), MomentumFunction::identity(dim));
  return op;
}

CanonicalOperator CanonicalOperator::monomial(const Monomial& m,
                                              const MomentumFunction& coefficient) {
  CanonicalOperator op(coefficient.dim());
  op.add_term(m, coefficient);
  return op;
}

MomentumFunction CanonicalOperator::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? MomentumFunction::zero(dim_) : it->second;
}

int CanonicalOperator::degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

int CanonicalOperator::time_degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.t);
  return d;
}

void CanonicalOperator::add_term(const Monomial& m, const MomentumFunction& coefficient) {
  if (coefficient.is_zero()) return;
  if (!admissible(m))
    throw DegreeOverflow("monomial " + m.to_string() + " exceeds the supported degree");
  MomentumFunction c = coefficient;
  if (c.dim() != dim_) {
    if (c.dim() != 1)
      throw DimensionMismatch("CanonicalOperator: coefficient dimension " +
                              std::to_string(c.dim()) + " vs operator dimension " +
                              std::to_string(dim_));
    c = c * MomentumFunction::identity(dim_);
  }
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) terms_.erase(it);
}

CanonicalOperator& CanonicalOperator::operator+=(const CanonicalOperator& other) {
  if (other.dim_ != dim_)
    throw DimensionMismatch("CanonicalOperator sum: dimension mismatch");
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

CanonicalOperator operator-(const CanonicalOperator& a) { return Complex(-1.0) * a; }

CanonicalOperator operator-(const CanonicalOperator& a, const CanonicalOperator& b) {
  return a + (-b);
}

CanonicalOperator operator*(Complex c, const CanonicalOperator& a) {
  CanonicalOperator out(a.dim());
  for (const auto& [m, coeff] : a.terms()) out.add_term(m, c * coeff);
  return out;
}

CanonicalOperator normal_product(const CanonicalOperator& a, const CanonicalOperator& b) {
  if (a.dim() != b.dim())
    throw DimensionMismatch("normal_product: dimensions " + std::to_string(a.dim()) + " and " +
                            std::to_string(b.dim()));
  CanonicalOperator out(a.dim());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      // t^i x^alpha C_a t^j x^beta C_b = t^(i+j) x^alpha (C_a x^beta) C_b
      Monomial beta = mb;
      beta.t = 0;
      for (const auto& [gamma, c] : move_right_positions(ca, beta)) {
        Monomial m = multiply(ma, gamma);
        m.t = ma.t + mb.t;
        auto coeff = c * cb;
        if (coeff.is_zero()) continue;
        if (!admissible(m))
          throw DegreeOverflow("normal_product: term " + m.to_string() +
                               " exceeds x-degree " + std::to_string(kMaxPositionDegree));
        out.add_term(m, coeff);
      }
    }
  }
  return out;
}

CanonicalOperator operator*(const CanonicalOperator& a, const CanonicalOperator& b) {
  return normal_product(a, b);
}

CanonicalOperator op_commutator(const CanonicalOperator& a, const CanonicalOperator& b) {
  return normal_product(a, b) - normal_product(b, a);
}

CanonicalOperator symmetrized_product(const CanonicalOperator& a, const CanonicalOperator& b) {
  return Complex(0.5) * (normal_product(a, b) + normal_product(b, a));
}

CanonicalOperator symmetrized_x(int axis, const MomentumFunction& m) {
  CanonicalOperator out(m.dim());
  out.add_term(Monomial::position(axis), m);
  out.add_term(Monomial::one(), Complex(0.0, -0.5) * m.derivative(axis));
  return out;
}

namespace {

template <typename Visit>
void for_each_sample(const CanonicalOperator& a, std::span<const Momentum> samples,
                     Visit&& visit) {
  std::vector<MomentumFunction> coeffs;
  std::vector<Monomial> monos;
  for (const auto& [m, c] : a.terms()) {
    monos.push_back(m);
    coeffs.push_back(c);
  }
  if (coeffs.empty()) return;
  Tape tape(coeffs);
  Tape::Workspace ws(tape);
  for (const auto& p : samples) {
    tape.evaluate(p, ws);
    for (std::size_t k = 0; k < coeffs.size(); ++k) visit(monos[k], tape.root(ws, k));
  }
}

}  // namespace

double max_difference(const CanonicalOperator& a, const CanonicalOperator& b,
                      std::span<const Momentum> samples) {
  return max_coefficient(a - b, samples);
}

double max_coefficient(const CanonicalOperator& a, std::span<const Momentum> samples) {
  double worst = 0.0;
  for_each_sample(a, samples, [&](const Monomial&, const Tape::Value& v) {
    worst = std::max(worst, v.cwiseAbs().maxCoeff());
  });
  return worst;
}

CanonicalOperator prune_vanishing(const CanonicalOperator& a, std::span<const Momentum> samples,
                                  double tolerance) {
  std::map<Monomial, double> size;
  for_each_sample(a, samples, [&](const Monomial& m, const Tape::Value& v) {
    size[m] = std::max(size[m], v.cwiseAbs().maxCoeff());
  });
  CanonicalOperator out(a.dim());
  for (const auto& [m, c] : a.terms())
    if (size[m] > tolerance) out.add_term(m, c);
  return out;
}

CanonicalOperator conjugate(const MomentumFunction& u, const CanonicalOperator& o,
                            std::span<const Momentum> unitarity_samples) {
  if (u.dim() != o.dim()) throw DimensionMismatch("conjugate: dimension mismatch");
  const Matrix eye = Matrix::Identity(u.dim(), u.dim());
  for (const auto& p : unitarity_samples) {
    const Matrix up = u(p);
    const double defect = max_abs(Matrix(up * up.adjoint() - eye));
    if (defect > 1e-10)
      throw PreconditionError("conjugate: transform not unitary at p = (" +
                              std::to_string(p(0)) + ", " + std::to_string(p(1)) + ", " +
                              std::to_string(p(2)) + "), defect " + std::to_string(defect));
  }
  const auto left = CanonicalOperator::multiplier(u);
  const auto right = CanonicalOperator::multiplier(u.adjoint());
  return normal_product(normal_product(left, o), right);
}

OffShellOperator::OffShellOperator(CanonicalOperator base, CanonicalOperator p0_factor)
    : base_(std::move(base)), factor_(std::move(p0_factor)) {
  if (base_.dim() != factor_.dim())
    throw DimensionMismatch("OffShellOperator: dimension mismatch");
}

OffShellOperator::OffShellOperator(const CanonicalOperator& base)
    : base_(base), factor_(base.dim()) {}

OffShellOperator OffShellOperator::p0(int dim) {
  return OffShellOperator(CanonicalOperator::zero(dim), CanonicalOperator::identity(dim));
}

OffShellOperator operator+(const OffShellOperator& a, const OffShellOperator& b) {
  return OffShellOperator(a.base_ + b.base_, a.factor_ + b.factor_);
}

OffShellOperator operator-(const OffShellOperator& a, const OffShellOperator& b) {
  return OffShellOperator(a.base_ - b.base_, a.factor_ - b.factor_);
}

OffShellOperator operator*(const CanonicalOperator& left, const OffShellOperator& o) {
  return OffShellOperator(normal_product(left, o.base_), normal_product(left, o.factor_));
}

OffShellOperator operator*(const OffShellOperator& o, const CanonicalOperator& right) {
  if (o.has_p0())
    throw UnsupportedForm(
        "p0 must remain a right factor; right-multiplying an operator containing p0 is not "
        "supported");
  return OffShellOperator(normal_product(o.base_, right));
}

CanonicalOperator on_shell_reduce(const OffShellOperator& o, const MomentumFunction& hamiltonian) {
  if (hamiltonian.dim() != o.base().dim())
    throw DimensionMismatch("on_shell_reduce: Hamiltonian dimension mismatch");
  return o.base() + normal_product(o.p0_factor(), CanonicalOperator::multiplier(hamiltonian));
}

}  // namespace relsym
