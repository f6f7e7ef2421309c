#include "relsym/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "relsym/errors.hpp"

namespace relsym {

namespace {

const char* kind_name(ItemKind kind) {
  switch (kind) {
    case ItemKind::Bound: return "bound";
    case ItemKind::Control: return "control";
    case ItemKind::Info: return "info";
  }
  return "?";
}

nlohmann::ordered_json complex_json(Complex c) { return nlohmann::ordered_json::array({c.real(), c.imag()}); }

// JSON has no NaN/Inf; report them as strings so a broken run stays visible.
nlohmann::ordered_json number_json(double x) {
  if (std::isfinite(x)) return x;
  return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
}

void write_json(const nlohmann::ordered_json& doc, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open report file " + path.string());
  out << doc.dump(2) << '\n';
  if (!out) throw Error("cannot write report file " + path.string());
}

}  // namespace

bool ReportItem::ok() const {
  switch (kind) {
    case ItemKind::Bound: return residual <= bound;  // false for NaN
    case ItemKind::Control: return residual >= bound;
    case ItemKind::Info: return true;
  }
  return false;
}

void CheckReport::add_bound(std::string name, double residual, double bound) {
  items.push_back({std::move(name), residual, ItemKind::Bound, bound});
}

void CheckReport::add_control(std::string name, double residual, double floor) {
  items.push_back({std::move(name), residual, ItemKind::Control, floor});
}

void CheckReport::add_info(std::string name, double value) {
  items.push_back({std::move(name), value, ItemKind::Info, 0.0});
}

double CheckReport::max_residual() const {
  double worst = 0.0;
  for (const auto& item : items) {
    if (item.kind != ItemKind::Bound) continue;
    if (std::isnan(item.residual)) return item.residual;
    worst = std::max(worst, item.residual);
  }
  return worst;
}

bool CheckReport::pass() const {
  bool any = false;
  for (const auto& item : items) {
    if (item.kind == ItemKind::Info) continue;
    any = true;
    if (!item.ok()) return false;
  }
  return any;
}

std::vector<std::string> CheckReport::failures() const {
  std::vector<std::string> out;
  for (const auto& item : items)
    if (!item.ok()) out.push_back(item.name);
  return out;
}

const ReportItem* CheckReport::find(const std::string& name) const {
  auto it = std::find_if(items.begin(), items.end(), [&](const auto& i) { return i.name == name; });
  return it == items.end() ? nullptr : &*it;
}

nlohmann::ordered_json items_json(const CheckReport& report) {
  auto items = nlohmann::ordered_json::array();
  for (const auto& item : report.items) {
    nlohmann::ordered_json j;
    j["name"] = item.name;
    j["residual"] = number_json(item.residual);
    j["kind"] = kind_name(item.kind);
    if (item.kind != ItemKind::Info) j["bound"] = item.bound;
    items.push_back(std::move(j));
  }
  return items;
}

nlohmann::ordered_json to_json(const CheckReport& report) {
  nlohmann::ordered_json doc;
  doc["check"] = report.check;
  doc["params"] = {{"n", report.params.n},
                   {"l", report.params.l},
                   {"mass", report.params.mass},
                   {"tol", report.params.tol},
                   {"seed", report.params.seed}};
  doc["items"] = items_json(report);
  if (!report.structure_constants.empty()) {
    auto table = nlohmann::ordered_json::array();
    for (const auto& entry : report.structure_constants) {
      nlohmann::ordered_json e;
      e["pair"] = {entry.left, entry.right};
      auto coeffs = nlohmann::ordered_json::object();
      for (const auto& c : entry.coefficients)
        coeffs[c.basis] = {{"measured", complex_json(c.measured)},
                           {"expected", complex_json(c.expected)}};
      e["coefficients"] = std::move(coeffs);
      e["expansion_residual"] = number_json(entry.expansion_residual);
      e["coefficient_error"] = number_json(entry.coefficient_error);
      table.push_back(std::move(e));
    }
    doc["structure_constants"] = std::move(table);
  }
  doc["max_residual"] = number_json(report.max_residual());
  doc["pass"] = report.pass();
  doc["wall_time_s"] = report.wall_time_s;
  return doc;
}

void emit_report(const CheckReport& report, const std::filesystem::path& path) {
  write_json(to_json(report), path);
}

void emit_reports(std::span<const CheckReport> reports, const std::filesystem::path& path) {
  nlohmann::ordered_json doc;
  auto list = nlohmann::ordered_json::array();
  bool pass = !reports.empty();
  for (const auto& r : reports) {
    list.push_back(to_json(r));
    pass = pass && r.pass();
  }
  doc["reports"] = std::move(list);
  doc["pass"] = pass;
  write_json(doc, path);
}

}  // namespace relsym
