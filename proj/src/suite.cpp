#include "relsym/suite.hpp"

#include "relsym/boost_flow.hpp"
#include "relsym/sampling.hpp"
#include "relsym/verify.hpp"

namespace relsym {

std::vector<CheckReport> run_all(std::uint64_t seed) {
  std::vector<CheckReport> reports;
  const auto samples = standard_momentum_samples();

  reports.push_back(check_clifford(GammaRepresentation::DiracPauli));
  auto weyl = check_clifford(GammaRepresentation::Weyl);
  weyl.check += " weyl";
  reports.push_back(std::move(weyl));

  const auto ctx = build_context(1.0);
  reports.push_back(check_context(ctx, samples));
  const auto weyl_ctx = build_context(1.0, GammaRepresentation::Weyl);
  auto weyl_context = check_context(weyl_ctx, samples);
  weyl_context.check += " weyl";
  reports.push_back(std::move(weyl_context));

  for (auto picture : {Picture::Original, Picture::Canonical})
    for (auto label : {SetLabel::Q1, SetLabel::Q2, SetLabel::Q3, SetLabel::Q4}) {
      InvarianceConfig config;
      config.label = label;
      config.picture = picture;
      config.seed = seed;
      reports.push_back(run_invariance(config));
    }
  reports.push_back(check_conjugation(ctx, samples));

  for (auto picture : {Picture::Original, Picture::Canonical})
    for (auto label : {SetLabel::Q1, SetLabel::Q2, SetLabel::Q3, SetLabel::Q4})
      reports.push_back(check_algebra(build_set(label, ctx, picture), samples));

  reports.push_back(check_o4(ctx, samples));
  auto weyl_o4 = check_o4(weyl_ctx, samples);
  weyl_o4.check += " weyl";
  reports.push_back(std::move(weyl_o4));

  const auto maxwell = build_maxwell_context();
  reports.push_back(check_maxwell_structure(maxwell, samples));
  for (auto picture : {Picture::Original, Picture::Canonical})
    for (auto label : {SetLabel::Q1, SetLabel::Q2}) {
      InvarianceConfig config;
      config.equation = Equation::Maxwell;
      config.label = label;
      config.picture = picture;
      config.seed = seed;
      reports.push_back(run_invariance(config));
    }

  for (auto label : {SetLabel::Q1, SetLabel::Q2, SetLabel::Q3, SetLabel::Q4}) {
    BoostConfig config;
    config.label = label;
    reports.push_back(run_boost(config));
  }

  const GridSpec grid = cross_validation_grid();
  TestFieldOptions field_options;
  field_options.count = 1;
  field_options.seed = seed;
  const auto fields = dirac_test_fields(grid, field_options);
  // The wide grid is slow; q3 carries the deformed boost bracket. The full
  // list of sets is covered by the acceptance run.
  for (auto picture : {Picture::Original, Picture::Canonical})
    reports.push_back(cross_validate(build_set(SetLabel::Q3, ctx, picture), fields, 0.3));
  for (auto& r : reports) r.params.seed = seed;
  return reports;
}

}  // namespace relsym
