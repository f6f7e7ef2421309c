#include "relsym/operator_set.hpp"

#include "relsym/errors.hpp"

namespace relsym {

std::string to_string(SetLabel label) {
  switch (label) {
    case SetLabel::Q1: return "q1";
    case SetLabel::Q2: return "q2";
    case SetLabel::Q3: return "q3";
    case SetLabel::Q4: return "q4";
  }
  return "?";
}

std::string to_string(Picture picture) {
  return picture == Picture::Original ? "original" : "canonical";
}

std::string to_string(Equation equation) {
  return equation == Equation::Dirac ? "dirac" : "maxwell";
}

SetLabel parse_set_label(std::string_view name) {
  if (name == "q1") return SetLabel::Q1;
  if (name == "q2") return SetLabel::Q2;
  if (name == "q3") return SetLabel::Q3;
  if (name == "q4") return SetLabel::Q4;
  throw ConfigurationError("unknown generator set '" + std::string(name) + "' (q1|q2|q3|q4)");
}

Picture parse_picture(std::string_view name) {
  if (name == "original") return Picture::Original;
  if (name == "canonical") return Picture::Canonical;
  throw ConfigurationError("unknown representation '" + std::string(name) +
                           "' (original|canonical)");
}

Equation parse_equation(std::string_view name) {
  if (name == "dirac") return Equation::Dirac;
  if (name == "maxwell") return Equation::Maxwell;
  throw ConfigurationError("unknown equation '" + std::string(name) + "' (dirac|maxwell)");
}

std::pair<int, int> rotation_slot(int a, int b) {
  if (a == b || a < 0 || b < 0 || a > 2 || b > 2)
    throw IndexError("rotation_slot: need distinct axes in 0..2");
  const int lo = std::min(a, b), hi = std::max(a, b);
  const int slot = lo == 0 ? hi - 1 : 2;
  return {slot, a < b ? 1 : -1};
}

std::vector<Generator> OperatorSet::generators() const {
  std::vector<Generator> out;
  out.push_back({"P0", p0});
  for (int a = 0; a < 3; ++a) out.push_back({"P" + std::to_string(a + 1), p[a]});
  for (int k = 0; k < 3; ++k) {
    const auto [a, b] = kRotationPairs[k];
    out.push_back({"J" + std::to_string(a + 1) + std::to_string(b + 1), rotation[k]});
  }
  for (int a = 0; a < 3; ++a) out.push_back({"J0" + std::to_string(a + 1), boost[a]});
  return out;
}

std::string OperatorSet::description() const {
  return to_string(equation) + " " + to_string(label) + " " + to_string(picture);
}

}  // namespace relsym
