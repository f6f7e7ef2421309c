#pragma once

// A family of ten generators {P0, P_a, J_ab, J_0a} together with the
// Hamiltonian of the equation it acts on.

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "relsym/canonical_operator.hpp"

namespace relsym {

enum class SetLabel { Q1, Q2, Q3, Q4 };
enum class Picture { Original, Canonical };
enum class Equation { Dirac, Maxwell };

std::string to_string(SetLabel label);
std::string to_string(Picture picture);
std::string to_string(Equation equation);
// Throw ConfigurationError on unknown names.
SetLabel parse_set_label(std::string_view name);
Picture parse_picture(std::string_view name);
Equation parse_equation(std::string_view name);

// Rotation pairs in storage order: (1,2), (1,3), (2,3); 0-based axes.
inline constexpr std::array<std::array<int, 2>, 3> kRotationPairs{{{0, 1}, {0, 2}, {1, 2}}};
// Slot of the pair (a, b), a != b, in kRotationPairs, with the sign of the
// reordering (J_ba = -J_ab).
std::pair<int, int> rotation_slot(int a, int b);

struct Generator {
  std::string name;
  CanonicalOperator op;
};

struct OperatorSet {
  Equation equation = Equation::Dirac;
  SetLabel label = SetLabel::Q1;
  Picture picture = Picture::Original;
  int dim = 4;
  double mass = 1.0;

  MomentumFunction hamiltonian;          // governs i d/dt Psi = H Psi
  CanonicalOperator p0;                  // on-shell reduced
  std::array<CanonicalOperator, 3> p;    // P_1..P_3
  std::array<CanonicalOperator, 3> rotation;  // J_12, J_13, J_23
  std::array<CanonicalOperator, 3> boost;     // J_01, J_02, J_03
  std::array<MomentumFunction, 3> spin;       // S_12, S_13, S_23 as constants

  // P0, P1, P2, P3, J12, J13, J23, J01, J02, J03.
  std::vector<Generator> generators() const;
  std::string description() const;
};

}  // namespace relsym
