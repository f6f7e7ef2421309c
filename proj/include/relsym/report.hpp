#pragma once

// Machine-readable record of a verification run.

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "relsym/algebra.hpp"

namespace relsym {

enum class ItemKind {
  Bound,    // asserted: residual <= bound
  Control,  // asserted: residual >= bound (negative control must fail)
  Info      // measured and reported only
};

struct ReportItem {
  std::string name;
  double residual = 0.0;
  ItemKind kind = ItemKind::Bound;
  double bound = 0.0;

  bool ok() const;
};

struct ReportParams {
  int n = 0;
  double l = 0.0;
  double mass = 0.0;
  double tol = 0.0;
  std::uint64_t seed = 0;
};

struct StructureCoefficient {
  std::string basis;
  Complex measured;
  Complex expected;
};

// Expansion of one commutator over the generator basis plus spin matrices.
struct StructureEntry {
  std::string left;
  std::string right;
  std::vector<StructureCoefficient> coefficients;  // entries with |measured| or |expected| > 0
  double expansion_residual = 0.0;
  double coefficient_error = 0.0;
};

struct CheckReport {
  std::string check;
  ReportParams params;
  std::vector<ReportItem> items;
  std::vector<StructureEntry> structure_constants;
  double wall_time_s = 0.0;

  void add_bound(std::string name, double residual, double bound);
  void add_control(std::string name, double residual, double floor);
  void add_info(std::string name, double value);

  // Largest residual among asserted upper-bounded items.
  double max_residual() const;
  // Every asserted item holds (and at least one item is asserted).
  bool pass() const;
  // Names of asserted items that do not hold.
  std::vector<std::string> failures() const;
  const ReportItem* find(const std::string& name) const;
};

nlohmann::ordered_json to_json(const CheckReport& report);
nlohmann::ordered_json items_json(const CheckReport& report);
// Throws Error if the file cannot be written.
void emit_report(const CheckReport& report, const std::filesystem::path& path);
// {"reports": [...], "pass": bool}
void emit_reports(std::span<const CheckReport> reports, const std::filesystem::path& path);

}  // namespace relsym
