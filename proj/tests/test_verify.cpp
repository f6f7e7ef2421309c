#include "doctest.h"

#include <cmath>
#include <limits>

#include "relsym/boost_flow.hpp"
#include "relsym/parallel.hpp"
#include "relsym/sampling.hpp"
#include "relsym/verify.hpp"

using namespace relsym;

TEST_CASE("report semantics") {
  CheckReport r;
  CHECK_FALSE(r.pass());  // nothing asserted
  r.add_info("note", 5.0);
  CHECK_FALSE(r.pass());
  r.add_bound("small", 1e-9, 1e-8);
  r.add_control("control", 0.5, 1e-2);
  CHECK(r.pass());
  CHECK(r.max_residual() == 1e-9);
  r.add_bound("nan", std::numeric_limits<double>::quiet_NaN(), 1.0);
  CHECK_FALSE(r.pass());
  REQUIRE(r.failures().size() == 1);
  CHECK(r.failures()[0] == "nan");
  CheckReport c;
  c.add_control("weak control", 1e-3, 1e-2);
  CHECK_FALSE(c.pass());
  const auto j = to_json(r);
  CHECK(j["items"].size() == 4);
  CHECK(j["items"][3]["residual"] == "nan");
}

TEST_CASE("momentum samples") {
  const auto lattice = lattice_momentum_samples();
  CHECK(lattice.size() == 125);
  const auto standard = standard_momentum_samples();
  CHECK(standard.size() == 225);
  for (const auto& p : standard) CHECK(p.norm() <= 5.0 + 1e-12);
  CHECK(standard == standard_momentum_samples());
  CHECK(momentum_samples(10).size() == 10);
  CHECK(momentum_samples(300).size() == 300);
  const auto ball = random_ball_samples(50, 2.0, 3);
  CHECK(ball != random_ball_samples(50, 2.0, 4));
}

TEST_CASE("parallel_for covers the range once") {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k) ++hits[k];
  });
  for (int h : hits) CHECK(h == 1);
  CHECK(thread_count() >= 1);
}

TEST_CASE("context and structure checks pass") {
  const auto samples = standard_momentum_samples();
  CHECK(check_clifford().pass());
  CHECK(check_clifford(GammaRepresentation::Weyl).pass());
  const auto ctx = build_context(1.0);
  CHECK(check_context(ctx, samples).pass());
  CHECK(check_conjugation(ctx, samples).pass());
  CHECK(check_o4(ctx, samples).pass());
  CHECK(check_maxwell_structure(build_maxwell_context(), samples).pass());
}

TEST_CASE("the deformed boost bracket carries +i S") {
  const auto ctx = build_context(1.0);
  const auto samples = momentum_samples(60);
  for (auto label : {SetLabel::Q1, SetLabel::Q3}) {
    const auto report = check_algebra(build_set(label, ctx, Picture::Original), samples);
    CHECK(report.pass());
    bool found = false;
    for (const auto& entry : report.structure_constants) {
      if (entry.left != "J01" || entry.right != "J02") continue;
      for (const auto& c : entry.coefficients)
        if (c.basis == "S12") {
          found = true;
          CHECK(std::abs(c.measured - (label == SetLabel::Q3 ? kI : Complex(0.0))) < 1e-8);
        }
    }
    if (label == SetLabel::Q3) CHECK(found);
  }
}

TEST_CASE("invariance rejects grids the fields do not fit") {
  InvarianceConfig config;
  config.n = 16;
  config.l = 6;
  CHECK_THROWS_AS(run_invariance(config), ConfigurationError);
  config = InvarianceConfig{};
  config.equation = Equation::Maxwell;
  config.label = SetLabel::Q3;
  CHECK_THROWS_AS(run_invariance(config), ConfigurationError);
}

TEST_CASE("test fields are seeded") {
  GridSpec g;
  g.n = 32;
  g.length = 16;
  TestFieldOptions options;
  options.count = 2;
  const auto a = dirac_test_fields(g, options);
  const auto b = dirac_test_fields(g, options);
  REQUIRE(a.size() == 2);
  CHECK(a[0].values() == b[0].values());
  options.seed = 43;
  CHECK(dirac_test_fields(g, options)[0].values() != a[0].values());
}

TEST_CASE("rapidity from velocity") {
  volatile double v = 0.46;  // keep atanh a runtime call, as in the library
  CHECK(rapidity_from_velocity(v) == std::atanh(v));
  CHECK(std::abs(std::tanh(rapidity_from_velocity(-0.3)) - 0.3) < 1e-15);
  CHECK_THROWS_AS(rapidity_from_velocity(1.0), ConfigurationError);
  CHECK_THROWS_AS(rapidity_from_velocity(std::nan("")), ConfigurationError);
}

TEST_CASE("boost flows need the canonical picture") {
  const auto ctx = build_context(1.0);
  GridSpec g;
  g.n = 32;
  g.length = 16;
  const auto psi = boost_test_state(g, 0, 0.5);
  CHECK_THROWS_AS(boost_flow(build_set(SetLabel::Q1, ctx, Picture::Original), 0, psi, {}),
                  ConfigurationError);
  FlowOptions bad;
  bad.dtheta = 0;
  CHECK_THROWS_AS(boost_flow(build_set(SetLabel::Q1, ctx, Picture::Canonical), 0, psi, bad),
                  ConfigurationError);
}
