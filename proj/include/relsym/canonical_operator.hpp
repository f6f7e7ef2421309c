#pragma once

// Operators that are polynomials in the position symbols x_a and the time
// parameter t with MomentumFunction coefficients, kept in normal order: every
// position symbol stands to the left of its coefficient,
//
//     O = sum_m  t^k x^alpha  C_m(p).
//
// Reordering uses [x_a, M(p)] = i dM/dp_a, i.e. M x_a = x_a M - i dM/dp_a,
// which follows from [x_a, p_b] = i delta_ab. t commutes with everything.

#include <array>
#include <compare>
#include <map>
#include <span>
#include <string>

#include "relsym/momentum_function.hpp"

namespace relsym {

inline constexpr int kMaxPositionDegree = 2;
inline constexpr int kMaxTimeDegree = 2;

struct Monomial {
  int t = 0;
  std::array<int, 3> x{0, 0, 0};

  int degree() const { return x[0] + x[1] + x[2]; }
  auto operator<=>(const Monomial&) const = default;
  std::string to_string() const;

  static Monomial one() { return {}; }
  static Monomial time() { return {1, {0, 0, 0}}; }
  static Monomial position(int axis);
};

class CanonicalOperator {
 public:
  using Terms = std::map<Monomial, MomentumFunction>;

  explicit CanonicalOperator(int dim = 1) : dim_(dim) {}

  static CanonicalOperator zero(int dim) { return CanonicalOperator(dim); }
  static CanonicalOperator multiplier(const MomentumFunction& m);
  static CanonicalOperator identity(int dim);
  // x_axis * 1 (axis in 0..2).
  static CanonicalOperator position(int axis, int dim);
  static CanonicalOperator time(int dim);
  static CanonicalOperator monomial(const Monomial& m, const MomentumFunction& coefficient);

  int dim() const { return dim_; }
  const Terms& terms() const { return terms_; }
  // Coefficient of a monomial (zero function if absent).
  MomentumFunction coefficient(const Monomial& m) const;
  int degree() const;
  int time_degree() const;

  // Adds coefficient to the monomial; rejects monomials outside the allowed
  // degree range.
  void add_term(const Monomial& m, const MomentumFunction& coefficient);

  CanonicalOperator& operator+=(const CanonicalOperator& other);
  friend CanonicalOperator operator+(CanonicalOperator a, const CanonicalOperator& b) {
    return a += b;
  }
  friend CanonicalOperator operator-(const CanonicalOperator& a, const CanonicalOperator& b);
  friend CanonicalOperator operator-(const CanonicalOperator& a);
  friend CanonicalOperator operator*(Complex c, const CanonicalOperator& a);

 private:
  int dim_;
  Terms terms_;
};

// Product with every x moved to the left. Throws DegreeOverflow if the result
// would contain a structurally non-zero monomial of x-degree > 2 (or t-degree
// > 2).
CanonicalOperator normal_product(const CanonicalOperator& a, const CanonicalOperator& b);
CanonicalOperator operator*(const CanonicalOperator& a, const CanonicalOperator& b);

CanonicalOperator op_commutator(const CanonicalOperator& a, const CanonicalOperator& b);

// (AB + BA) / 2.
CanonicalOperator symmetrized_product(const CanonicalOperator& a, const CanonicalOperator& b);

// (x_a M + M x_a) / 2 = x_a M - (i/2) dM/dp_a.
CanonicalOperator symmetrized_x(int axis, const MomentumFunction& m);

// Max over monomials and sample momenta of the entrywise |A_m(p) - B_m(p)|.
double max_difference(const CanonicalOperator& a, const CanonicalOperator& b,
                      std::span<const Momentum> samples);
// Max over monomials and samples of entrywise |A_m(p)|.
double max_coefficient(const CanonicalOperator& a, std::span<const Momentum> samples);

// Drops monomials whose coefficient is <= tolerance at every sample.
CanonicalOperator prune_vanishing(const CanonicalOperator& a, std::span<const Momentum> samples,
                                  double tolerance);

// U O U^dagger in normal order. U must be unitary at every sample to 1e-10.
CanonicalOperator conjugate(const MomentumFunction& u, const CanonicalOperator& o,
                            std::span<const Momentum> unitarity_samples);

// Operator expression  base + factor * p0  with the time-translation
// generator p0 = i d/dt only as a right factor. Generators of the first and
// third sets carry p0; they are turned into p0-free operators by on-shell
// reduction, p0 -> H, valid on solutions of i d/dt Psi = H Psi.
class OffShellOperator {
 public:
  OffShellOperator(CanonicalOperator base, CanonicalOperator p0_factor);
  explicit OffShellOperator(const CanonicalOperator& base);
  // The bare operator p0.
  static OffShellOperator p0(int dim);

  const CanonicalOperator& base() const { return base_; }
  const CanonicalOperator& p0_factor() const { return factor_; }
  bool has_p0() const { return !factor_.terms().empty(); }

  friend OffShellOperator operator+(const OffShellOperator& a, const OffShellOperator& b);
  friend OffShellOperator operator-(const OffShellOperator& a, const OffShellOperator& b);
  // Left multiplication keeps p0 a right factor.
  friend OffShellOperator operator*(const CanonicalOperator& left, const OffShellOperator& o);
  // Right multiplication would move p0 out of the right-factor position.
  // Throws UnsupportedForm unless this operator is p0-free.
  friend OffShellOperator operator*(const OffShellOperator& o, const CanonicalOperator& right);

 private:
  CanonicalOperator base_;
  CanonicalOperator factor_;
};

CanonicalOperator on_shell_reduce(const OffShellOperator& o, const MomentumFunction& hamiltonian);

}  // namespace relsym
