#pragma once

// Matrix-valued functions of the spatial momentum p in R^3.
//
// A MomentumFunction is an immutable expression DAG. Leaves are constant
// matrices, the momentum components p_a, and user callbacks (with either
// analytic gradients supplied at construction or a central-difference
// fallback). Interior nodes are sums, products, scalings, adjoints and the
// scalar maps sqrt and reciprocal. Derivatives are built symbolically by the
// sum/product/chain rules and memoized per node, so d/dp_a of anything made
// from analytic leaves is exact.

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "relsym/algebra.hpp"

namespace relsym {

using Momentum = Eigen::Vector3d;
using MatrixFn = std::function<Matrix(const Momentum&)>;

// Largest matrix dimension a MomentumFunction may carry.
inline constexpr int kMaxFunctionDim = 8;

class MomentumFunction {
 public:
  struct Node;
  using NodePtr = std::shared_ptr<const Node>;

  // Scalar zero.
  MomentumFunction();

  static MomentumFunction constant(const Matrix& value);
  static MomentumFunction scalar(Complex value);
  static MomentumFunction identity(int dim);
  static MomentumFunction zero(int dim);
  // The scalar function p -> p_axis (axis in 0..2).
  static MomentumFunction component(int axis);
  // Arbitrary callback; derivatives by central difference with step
  // h = 1e-5 * max(1, |p|).
  static MomentumFunction numeric(int dim, MatrixFn f, std::string name = {});
  // Callback with analytic gradient.
  static MomentumFunction analytic(int dim, MatrixFn f,
                                   const std::array<MomentumFunction, 3>& gradient,
                                   std::string name = {});

  int dim() const;
  Matrix operator()(const Momentum& p) const;
  MomentumFunction derivative(int axis) const;
  MomentumFunction adjoint() const;

  // Structural predicates; a function may vanish numerically without being
  // structurally zero.
  bool is_zero() const;
  bool is_constant() const;

  const NodePtr& node() const { return node_; }

  friend MomentumFunction operator+(const MomentumFunction& a, const MomentumFunction& b);
  friend MomentumFunction operator-(const MomentumFunction& a, const MomentumFunction& b);
  friend MomentumFunction operator-(const MomentumFunction& a);
  // Matrix product; a dimension-1 operand acts as a scalar.
  friend MomentumFunction operator*(const MomentumFunction& a, const MomentumFunction& b);
  friend MomentumFunction operator*(Complex c, const MomentumFunction& a);
  friend MomentumFunction operator*(const MomentumFunction& a, Complex c);
  friend MomentumFunction sqrt(const MomentumFunction& a);
  // 1/f for scalar f, defined as 0 where f == 0 exactly.
  friend MomentumFunction reciprocal(const MomentumFunction& a);

 private:
  explicit MomentumFunction(NodePtr node) : node_(std::move(node)) {}
  NodePtr node_;
};

// Central difference of f along axis at p, step h = 1e-5 * max(1, |p|).
Matrix numeric_derivative(const MomentumFunction& f, int axis, const Momentum& p);

// |p|^2 as a scalar function.
MomentumFunction momentum_squared();

// Flattened evaluation program for a set of functions sharing sub-expressions.
// Each distinct node is evaluated once per point.
class Tape {
 public:
  using Value = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor,
                              kMaxFunctionDim, kMaxFunctionDim>;

  explicit Tape(std::span<const MomentumFunction> roots);

  std::size_t size() const;
  std::size_t root_count() const { return roots_.size(); }
  int root_dim(std::size_t k) const;

  // Per-thread scratch space.
  class Workspace {
   public:
    explicit Workspace(const Tape& tape);

   private:
    friend class Tape;
    std::vector<Value> values_;
  };

  // Evaluates every node at p; the root values are then available through
  // root(workspace, k).
  void evaluate(const Momentum& p, Workspace& workspace) const;
  const Value& root(const Workspace& workspace, std::size_t k) const {
    return workspace.values_[roots_[k]];
  }

 private:
  struct Op;
  std::vector<Op> ops_;
  std::vector<std::size_t> roots_;
  std::vector<std::size_t> dynamic_;  // ops that depend on p, in order
  std::vector<MomentumFunction::NodePtr> owned_;

 public:
  ~Tape();
  Tape(Tape&&) noexcept;
  Tape& operator=(Tape&&) noexcept;
};

}  // namespace relsym
