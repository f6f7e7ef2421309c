// relsym: command-line front end for the verification checks.
//
// Exit status: 0 every asserted item holds, 1 an assertion failed,
// 2 usage or configuration error.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "relsym/boost_flow.hpp"
#include "relsym/sampling.hpp"
#include "relsym/suite.hpp"
#include "relsym/verify.hpp"

namespace {

using namespace relsym;

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

void print_summary(const CheckReport& report) {
  std::cout << report.check << ": " << (report.pass() ? "PASS" : "FAIL")
            << "  max_residual=" << report.max_residual() << "  (" << report.wall_time_s << " s)\n";
  for (const auto& name : report.failures()) {
    const auto* item = report.find(name);
    std::cout << "  failed " << name << " residual=" << item->residual << " bound=" << item->bound
              << '\n';
  }
}

int finish(const CheckReport& report, const std::string& out) {
  if (out.empty())
    std::cout << to_json(report).dump(2) << '\n';
  else
    emit_report(report, out);
  print_summary(report);
  return report.pass() ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of the Dirac and Maxwell generator sets"};
  app.set_config("--config", "", "key=value file; command-line flags take precedence");
  app.require_subcommand(1);

  const std::vector<std::string> sets{"q1", "q2", "q3", "q4"};
  const std::vector<std::string> reps{"original", "canonical"};

  InvarianceConfig inv;
  std::string inv_equation = "dirac", inv_set = "q1", inv_rep = "original", inv_out;
  auto* invariance = app.add_subcommand("invariance", "check that a generator set maps solutions to solutions");
  invariance->add_option("--equation", inv_equation)->check(CLI::IsMember({"dirac", "maxwell"}));
  invariance->add_option("--set", inv_set)->check(CLI::IsMember(sets));
  invariance->add_option("--rep", inv_rep)->check(CLI::IsMember(reps));
  invariance->add_option("--grid", inv.n, "points per axis (power of two)");
  invariance->add_option("--box", inv.l, "box side length");
  invariance->add_option("--mass", inv.mass);
  invariance->add_option("--tol", inv.tol);
  invariance->add_option("--seed", inv.seed);
  invariance->add_option("--fields", inv.fields, "number of test fields (>= 3)");
  invariance->add_option("--out", inv_out, "report path (stdout if omitted)");

  std::string alg_set = "q3", alg_rep = "canonical", alg_out;
  double alg_mass = 1.0, alg_tol = 1e-8;
  std::size_t alg_samples = 225;
  auto* algebra = app.add_subcommand("algebra", "extract structure constants of a generator set");
  algebra->add_option("--set", alg_set)->check(CLI::IsMember(sets));
  algebra->add_option("--rep", alg_rep)->check(CLI::IsMember(reps));
  algebra->add_option("--mass", alg_mass);
  algebra->add_option("--samples", alg_samples);
  algebra->add_option("--tol", alg_tol);
  algebra->add_option("--out", alg_out);

  double o4_mass = 1.0;
  std::size_t o4_samples = 225;
  std::string o4_out;
  auto* o4 = app.add_subcommand("o4", "check the nonlocal O(4) spin operators");
  o4->add_option("--mass", o4_mass);
  o4->add_option("--samples", o4_samples);
  o4->add_option("--out", o4_out);

  BoostConfig boost;
  std::string boost_set = "q3", boost_out;
  int boost_axis = 1;
  std::optional<double> theta, velocity;
  auto* boost_cmd = app.add_subcommand("boost", "integrate a boost flow and check the mixing of <P0>, <p_a>");
  boost_cmd->add_option("--set", boost_set)->check(CLI::IsMember(sets));
  boost_cmd->add_option("--axis", boost_axis)->check(CLI::IsMember({1, 2, 3}));
  auto* theta_opt = boost_cmd->add_option("--theta", theta, "rapidity");
  auto* velocity_opt = boost_cmd->add_option("--velocity", velocity, "velocity, theta = artanh|V|");
  theta_opt->excludes(velocity_opt);
  boost_cmd->add_option("--dtheta", boost.dtheta);
  boost_cmd->add_option("--mass", boost.mass);
  boost_cmd->add_option("--out", boost_out);

  std::uint64_t all_seed = 42;
  std::string all_out;
  auto* all = app.add_subcommand("all", "run the full suite");
  all->add_option("--seed", all_seed);
  all->add_option("--out", all_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*invariance) {
      inv.equation = parse_equation(inv_equation);
      inv.label = parse_set_label(inv_set);
      inv.picture = parse_picture(inv_rep);
      return finish(run_invariance(inv), inv_out);
    }
    if (*algebra) {
      if (alg_samples < 1) throw ConfigurationError("--samples must be positive");
      DiracContext ctx;
      try {
        ctx = build_context(alg_mass);
      } catch (const PreconditionError& e) {
        throw ConfigurationError(e.what());
      }
      const auto set = build_set(parse_set_label(alg_set), ctx, parse_picture(alg_rep));
      const auto samples = momentum_samples(alg_samples);
      return finish(check_algebra(set, samples, alg_tol), alg_out);
    }
    if (*o4) {
      if (o4_samples < 1) throw ConfigurationError("--samples must be positive");
      DiracContext ctx;
      try {
        ctx = build_context(o4_mass);
      } catch (const PreconditionError& e) {
        throw ConfigurationError(e.what());
      }
      auto report = check_o4(ctx, momentum_samples(o4_samples));
      report.params.tol = 1e-10;
      return finish(report, o4_out);
    }
    if (*boost_cmd) {
      boost.label = parse_set_label(boost_set);
      boost.axis = boost_axis - 1;
      if (velocity) boost.theta = rapidity_from_velocity(*velocity);
      if (theta) boost.theta = *theta;
      if (!(boost.theta >= 0)) throw ConfigurationError("--theta must be non-negative");
      auto report = run_boost(boost);
      if (velocity) report.add_info("velocity", *velocity);
      report.add_info("theta", boost.theta);
      return finish(report, boost_out);
    }
    if (*all) {
      const auto reports = run_all(all_seed);
      bool pass = true;
      for (const auto& r : reports) {
        print_summary(r);
        pass = pass && r.pass();
      }
      if (!all_out.empty()) emit_reports(reports, all_out);
      std::cout << (pass ? "ALL PASS" : "SOME CHECKS FAILED") << '\n';
      return pass ? 0 : kExitFail;
    }
  } catch (const ConfigurationError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
