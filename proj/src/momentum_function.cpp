#include "relsym/momentum_function.hpp"

#include <map>
#include <mutex>
#include <tuple>
#include <unordered_map>

namespace relsym {

enum class Kind { Constant, Component, Sum, Product, Scale, Adjoint, Sqrt, Reciprocal, Callback };

struct MomentumFunction::Node {
  Kind kind = Kind::Constant;
  int dim = 1;
  Matrix value;           // Constant
  Complex factor{1.0};    // Scale
  int axis = 0;           // Component
  NodePtr lhs, rhs;       // operands
  MatrixFn fn;            // Callback
  bool numeric = false;   // Callback without analytic gradient
  std::array<NodePtr, 3> gradient;  // Callback with analytic gradient
  std::string name;

  mutable std::array<std::once_flag, 3> derivative_once;
  mutable std::array<NodePtr, 3> derivative_cache;
};

namespace {

using Node = MomentumFunction::Node;
using NodePtr = MomentumFunction::NodePtr;

bool is_zero_node(const Node& n) {
  return n.kind == Kind::Constant && (n.value.size() == 0 || max_abs(n.value) == 0.0);
}

bool is_identity_node(const Node& n) {
  return n.kind == Kind::Constant && n.value.isIdentity(0.0);
}

NodePtr make_constant(Matrix value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Constant;
  n->dim = static_cast<int>(value.rows());
  n->value = std::move(value);
  return n;
}

void check_dim(int dim) {
  if (dim < 1 || dim > kMaxFunctionDim)
    throw DimensionMismatch("MomentumFunction: dimension " + std::to_string(dim) +
                            " outside 1.." + std::to_string(kMaxFunctionDim));
}

void check_scalar(const Node& n, const char* op) {
  if (n.dim != 1) throw DimensionMismatch(std::string(op) + ": requires a scalar function");
}

double step_for(const Momentum& p) { return 1e-5 * std::max(1.0, p.norm()); }

MatrixFn central_difference(MatrixFn f, int axis) {
  return [f = std::move(f), axis](const Momentum& p) -> Matrix {
    const double h = step_for(p);
    Momentum plus = p, minus = p;
    plus(axis) += h;
    minus(axis) -= h;
    return (f(plus) - f(minus)) / (2.0 * h);
  };
}

}  // namespace

MomentumFunction::MomentumFunction() : node_(make_constant(Matrix::Zero(1, 1))) {}

MomentumFunction MomentumFunction::constant(const Matrix& value) {
  if (value.rows() != value.cols()) throw DimensionMismatch("constant: matrix is not square");
  check_dim(static_cast<int>(value.rows()));
  return MomentumFunction(make_constant(value));
}

MomentumFunction MomentumFunction::scalar(Complex value) {
  Matrix m(1, 1);
  m(0, 0) = value;
  return constant(m);
}

MomentumFunction MomentumFunction::identity(int dim) {
  check_dim(dim);
  return constant(Matrix::Identity(dim, dim));
}

MomentumFunction MomentumFunction::zero(int dim) {
  check_dim(dim);
  return constant(Matrix::Zero(dim, dim));
}

MomentumFunction MomentumFunction::component(int axis) {
  if (axis < 0 || axis > 2) throw IndexError("component: axis must be 0..2");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Component;
  n->dim = 1;
  n->axis = axis;
  return MomentumFunction(n);
}

MomentumFunction MomentumFunction::numeric(int dim, MatrixFn f, std::string name) {
  check_dim(dim);
  auto n = std::make_shared<Node>();
  n->kind = Kind::Callback;
  n->dim = dim;
  n->fn = std::move(f);
  n->numeric = true;
  n->name = std::move(name);
  return MomentumFunction(n);
}

MomentumFunction MomentumFunction::analytic(int dim, MatrixFn f,
                                            const std::array<MomentumFunction, 3>& gradient,
                                            std::string name) {
  check_dim(dim);
  auto n = std::make_shared<Node>();
  n->kind = Kind::Callback;
  n->dim = dim;
  n->fn = std::move(f);
  n->name = std::move(name);
  for (int a = 0; a < 3; ++a) {
    if (gradient[a].dim() != dim && gradient[a].dim() != 1)
      throw DimensionMismatch("analytic: gradient dimension mismatch");
    n->gradient[a] = gradient[a].node();
  }
  return MomentumFunction(n);
}

int MomentumFunction::dim() const { return node_->dim; }

bool MomentumFunction::is_zero() const { return is_zero_node(*node_); }

bool MomentumFunction::is_constant() const { return node_->kind == Kind::Constant; }

Matrix MomentumFunction::operator()(const Momentum& p) const {
  const std::array<MomentumFunction, 1> roots{*this};
  Tape tape(roots);
  Tape::Workspace ws(tape);
  tape.evaluate(p, ws);
  return tape.root(ws, 0);
}

MomentumFunction operator+(const MomentumFunction& a, const MomentumFunction& b) {
  const Node& na = *a.node();
  const Node& nb = *b.node();
  if (na.dim != nb.dim)
    throw DimensionMismatch("MomentumFunction sum: dimensions " + std::to_string(na.dim) +
                            " and " + std::to_string(nb.dim));
  if (is_zero_node(na)) return b;
  if (is_zero_node(nb)) return a;
  if (na.kind == Kind::Constant && nb.kind == Kind::Constant)
    return MomentumFunction::constant(na.value + nb.value);
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sum;
  n->dim = na.dim;
  n->lhs = a.node();
  n->rhs = b.node();
  return MomentumFunction(n);
}

MomentumFunction operator-(const MomentumFunction& a) { return Complex(-1.0) * a; }

MomentumFunction operator-(const MomentumFunction& a, const MomentumFunction& b) {
  return a + (-b);
}

MomentumFunction operator*(const MomentumFunction& a, const MomentumFunction& b) {
  const Node& na = *a.node();
  const Node& nb = *b.node();
  if (na.dim != nb.dim && na.dim != 1 && nb.dim != 1)
    throw DimensionMismatch("MomentumFunction product: dimensions " + std::to_string(na.dim) +
                            " and " + std::to_string(nb.dim));
  const int dim = std::max(na.dim, nb.dim);
  if (is_zero_node(na) || is_zero_node(nb)) return MomentumFunction::zero(dim);
  if (na.kind == Kind::Constant && nb.kind == Kind::Constant) {
    if (na.dim == 1) return MomentumFunction::constant(na.value(0, 0) * nb.value);
    if (nb.dim == 1) return MomentumFunction::constant(na.value * nb.value(0, 0));
    return MomentumFunction::constant(na.value * nb.value);
  }
  if (is_identity_node(na) && nb.dim == dim) return b;
  if (is_identity_node(nb) && na.dim == dim) return a;
  if (na.kind == Kind::Constant && na.dim == 1) return na.value(0, 0) * b;
  if (nb.kind == Kind::Constant && nb.dim == 1) return nb.value(0, 0) * a;
  auto n = std::make_shared<Node>();
  n->kind = Kind::Product;
  n->dim = dim;
  n->lhs = a.node();
  n->rhs = b.node();
  return MomentumFunction(n);
}

MomentumFunction operator*(Complex c, const MomentumFunction& a) {
  const Node& na = *a.node();
  if (c == Complex(0.0)) return MomentumFunction::zero(na.dim);
  if (c == Complex(1.0)) return a;
  if (na.kind == Kind::Constant) return MomentumFunction::constant(c * na.value);
  if (na.kind == Kind::Scale) {
    const Complex combined = c * na.factor;
    return combined * MomentumFunction(na.lhs);
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Scale;
  n->dim = na.dim;
  n->factor = c;
  n->lhs = a.node();
  return MomentumFunction(n);
}

MomentumFunction operator*(const MomentumFunction& a, Complex c) { return c * a; }

MomentumFunction sqrt(const MomentumFunction& a) {
  check_scalar(*a.node(), "sqrt");
  if (a.is_constant()) return MomentumFunction::scalar(std::sqrt(a.node()->value(0, 0)));
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sqrt;
  n->dim = 1;
  n->lhs = a.node();
  return MomentumFunction(n);
}

MomentumFunction reciprocal(const MomentumFunction& a) {
  check_scalar(*a.node(), "reciprocal");
  if (a.is_constant()) {
    const Complex v = a.node()->value(0, 0);
    return MomentumFunction::scalar(v == Complex(0.0) ? Complex(0.0) : Complex(1.0) / v);
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Reciprocal;
  n->dim = 1;
  n->lhs = a.node();
  return MomentumFunction(n);
}

MomentumFunction MomentumFunction::adjoint() const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Constant:
      return constant(n.value.adjoint());
    case Kind::Component:
      return *this;
    case Kind::Sum:
      return MomentumFunction(n.lhs).adjoint() + MomentumFunction(n.rhs).adjoint();
    case Kind::Product:
      return MomentumFunction(n.rhs).adjoint() * MomentumFunction(n.lhs).adjoint();
    case Kind::Scale:
      return std::conj(n.factor) * MomentumFunction(n.lhs).adjoint();
    case Kind::Adjoint:
      return MomentumFunction(n.lhs);
    default:
      break;
  }
  auto out = std::make_shared<Node>();
  out->kind = Kind::Adjoint;
  out->dim = n.dim;
  out->lhs = node_;
  return MomentumFunction(out);
}

MomentumFunction MomentumFunction::derivative(int axis) const {
  if (axis < 0 || axis > 2) throw IndexError("derivative: axis must be 0..2");
  const Node& n = *node_;
  std::call_once(n.derivative_once[axis], [&] {
    MomentumFunction d;
    switch (n.kind) {
      case Kind::Constant:
        d = zero(n.dim);
        break;
      case Kind::Component:
        d = scalar(n.axis == axis ? 1.0 : 0.0);
        break;
      case Kind::Sum:
        d = MomentumFunction(n.lhs).derivative(axis) + MomentumFunction(n.rhs).derivative(axis);
        break;
      case Kind::Product: {
        const MomentumFunction l(n.lhs), r(n.rhs);
        d = l.derivative(axis) * r + l * r.derivative(axis);
        if (d.dim() != n.dim) d = d * identity(n.dim);
        break;
      }
      case Kind::Scale:
        d = n.factor * MomentumFunction(n.lhs).derivative(axis);
        break;
      case Kind::Adjoint:
        d = MomentumFunction(n.lhs).derivative(axis).adjoint();
        break;
      case Kind::Sqrt:
        // d sqrt(f) = f' / (2 sqrt(f))
        d = Complex(0.5) * MomentumFunction(n.lhs).derivative(axis) * reciprocal(*this);
        break;
      case Kind::Reciprocal: {
        // d (1/f) = -f' / f^2
        d = -(MomentumFunction(n.lhs).derivative(axis) * (*this * *this));
        break;
      }
      case Kind::Callback:
        if (n.numeric)
          d = numeric(n.dim, central_difference(n.fn, axis),
                      n.name.empty() ? std::string{} : "d" + std::to_string(axis) + n.name);
        else
          d = MomentumFunction(n.gradient[axis]);
        break;
    }
    if (d.dim() != n.dim) d = d * identity(n.dim);
    n.derivative_cache[axis] = d.node();
  });
  return MomentumFunction(n.derivative_cache[axis]);
}

Matrix numeric_derivative(const MomentumFunction& f, int axis, const Momentum& p) {
  if (axis < 0 || axis > 2) throw IndexError("numeric_derivative: axis must be 0..2");
  const double h = step_for(p);
  Momentum plus = p, minus = p;
  plus(axis) += h;
  minus(axis) -= h;
  return (f(plus) - f(minus)) / (2.0 * h);
}

MomentumFunction momentum_squared() {
  MomentumFunction sum = MomentumFunction::scalar(0.0);
  for (int a = 0; a < 3; ++a) {
    const auto pa = MomentumFunction::component(a);
    sum = sum + pa * pa;
  }
  return sum;
}

// ---------------------------------------------------------------------------

struct Tape::Op {
  Kind kind = Kind::Constant;
  int dim = 1;
  std::size_t lhs = 0, rhs = 0;
  int lhs_dim = 1, rhs_dim = 1;
  Complex factor{1.0};
  int axis = 0;
  const Node* node = nullptr;  // Callback payload
  Value value;                 // Constant (including folded) payload
};

namespace {

using TapeValue = Tape::Value;

void evaluate_op(Kind kind, const Momentum& p, std::size_t lhs, std::size_t rhs, int lhs_dim,
                 int rhs_dim, Complex factor, int axis, const MomentumFunction::Node* node,
                 int dim, const std::vector<TapeValue>& v, TapeValue& out);

}  // namespace

Tape::Tape(std::span<const MomentumFunction> roots) {
  // Nodes are deduplicated by identity, then structurally: equal operations
  // on equal operands share one slot. Operations whose operands are all
  // constant are evaluated here once.
  std::unordered_map<const Node*, std::size_t> index;
  std::map<std::tuple<int, int, std::size_t, std::size_t, double, double, int, const Node*>,
           std::size_t>
      structural;
  std::vector<bool> is_constant;
  std::vector<Value> scratch;
  auto constant_slot = [&](const Matrix& m) {
    for (std::size_t i = 0; i < ops_.size(); ++i)
      if (is_constant[i] && ops_[i].value.rows() == m.rows() && ops_[i].value.cols() == m.cols() &&
          ops_[i].value == m)
        return i;
    Op op;
    op.kind = Kind::Constant;
    op.dim = static_cast<int>(m.rows());
    op.value = m;
    ops_.push_back(std::move(op));
    is_constant.push_back(true);
    return ops_.size() - 1;
  };

  struct Frame {
    const Node* node;
    bool expanded;
  };
  for (const auto& root : roots) {
    std::vector<Frame> stack{{root.node().get(), false}};
    while (!stack.empty()) {
      auto [node, expanded] = stack.back();
      stack.pop_back();
      if (index.contains(node)) continue;
      if (!expanded) {
        stack.push_back({node, true});
        if (node->rhs && !index.contains(node->rhs.get())) stack.push_back({node->rhs.get(), false});
        if (node->lhs && !index.contains(node->lhs.get())) stack.push_back({node->lhs.get(), false});
        continue;
      }
      if (node->kind == Kind::Constant) {
        index.emplace(node, constant_slot(node->value));
        continue;
      }
      Op op;
      op.kind = node->kind;
      op.dim = node->dim;
      op.factor = node->factor;
      op.axis = node->axis;
      if (node->kind == Kind::Callback) op.node = node;
      if (node->lhs) {
        op.lhs = index.at(node->lhs.get());
        op.lhs_dim = node->lhs->dim;
      }
      if (node->rhs) {
        op.rhs = index.at(node->rhs.get());
        op.rhs_dim = node->rhs->dim;
      }
      if (op.kind == Kind::Sum && op.rhs < op.lhs) {
        std::swap(op.lhs, op.rhs);
        std::swap(op.lhs_dim, op.rhs_dim);
      }
      if (op.kind == Kind::Scale && op.factor == Complex(1.0)) {
        index.emplace(node, op.lhs);
        continue;
      }
      const bool foldable = op.kind != Kind::Component && op.kind != Kind::Callback &&
                            is_constant[op.lhs] && (!node->rhs || is_constant[op.rhs]);
      if (foldable) {
        scratch.resize(ops_.size());
        for (std::size_t i = 0; i < ops_.size(); ++i)
          if (is_constant[i] && (i == op.lhs || i == op.rhs)) scratch[i] = ops_[i].value;
        Value out;
        evaluate_op(op.kind, Momentum::Zero(), op.lhs, op.rhs, op.lhs_dim, op.rhs_dim, op.factor,
                    op.axis, nullptr, op.dim, scratch, out);
        index.emplace(node, constant_slot(Matrix(out)));
        continue;
      }
      const auto key = std::make_tuple(static_cast<int>(op.kind), op.dim, op.lhs, op.rhs,
                                       op.factor.real(), op.factor.imag(), op.axis,
                                       static_cast<const Node*>(op.node));
      if (const auto it = structural.find(key); it != structural.end()) {
        index.emplace(node, it->second);
        continue;
      }
      structural.emplace(key, ops_.size());
      index.emplace(node, ops_.size());
      ops_.push_back(std::move(op));
      is_constant.push_back(false);
    }
    roots_.push_back(index.at(root.node().get()));
  }
  for (std::size_t i = 0; i < ops_.size(); ++i)
    if (!is_constant[i]) dynamic_.push_back(i);
  // Callbacks point into the nodes; hold references so the tape may outlive
  // the caller's MomentumFunctions.
  for (const auto& root : roots) owned_.push_back(root.node());
}

Tape::~Tape() = default;
Tape::Tape(Tape&&) noexcept = default;
Tape& Tape::operator=(Tape&&) noexcept = default;

int Tape::root_dim(std::size_t k) const { return ops_[roots_.at(k)].dim; }
std::size_t Tape::size() const { return ops_.size(); }

Tape::Workspace::Workspace(const Tape& tape) : values_(tape.size()) {
  for (std::size_t i = 0; i < tape.ops_.size(); ++i)
    if (tape.ops_[i].kind == Kind::Constant) values_[i] = tape.ops_[i].value;
}

namespace {

void evaluate_op(Kind kind, const Momentum& p, std::size_t lhs, std::size_t rhs, int lhs_dim,
                 int rhs_dim, Complex factor, int axis, const MomentumFunction::Node* node,
                 int dim, const std::vector<TapeValue>& v, TapeValue& out) {
  switch (kind) {
    case Kind::Constant:
      break;
    case Kind::Component:
      out.resize(1, 1);
      out(0, 0) = p(axis);
      break;
    case Kind::Sum:
      out = v[lhs] + v[rhs];
      break;
    case Kind::Product:
      if (lhs_dim == 1)
        out = v[lhs](0, 0) * v[rhs];
      else if (rhs_dim == 1)
        out = v[lhs] * v[rhs](0, 0);
      else
        out.noalias() = v[lhs] * v[rhs];
      break;
    case Kind::Scale:
      out = factor * v[lhs];
      break;
    case Kind::Adjoint:
      out = v[lhs].adjoint();
      break;
    case Kind::Sqrt:
      out.resize(1, 1);
      out(0, 0) = std::sqrt(v[lhs](0, 0));
      break;
    case Kind::Reciprocal: {
      const Complex x = v[lhs](0, 0);
      out.resize(1, 1);
      out(0, 0) = x == Complex(0.0) ? Complex(0.0) : Complex(1.0) / x;
      break;
    }
    case Kind::Callback: {
      const Matrix m = node->fn(p);
      if (m.rows() != dim || m.cols() != dim)
        throw DimensionMismatch("MomentumFunction callback returned wrong shape");
      out = m;
      break;
    }
  }
}

}  // namespace

void Tape::evaluate(const Momentum& p, Workspace& workspace) const {
  auto& v = workspace.values_;
  for (const std::size_t i : dynamic_) {
    const Op& op = ops_[i];
    evaluate_op(op.kind, p, op.lhs, op.rhs, op.lhs_dim, op.rhs_dim, op.factor, op.axis, op.node,
                op.dim, v, v[i]);
  }
}

}  // namespace relsym
