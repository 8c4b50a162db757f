#include <gtest/gtest.h>

#include <cmath>

#include "graphmat/harness.hpp"
#include "graphmat/presets.hpp"

using namespace graphmat;

namespace {

ExperimentConfig config(const ShapeGraph& h, std::vector<std::size_t> grid, Mode mode, std::size_t trials = 3) {
  ExperimentConfig c;
  c.shape = h;
  c.shape_ref = "test";
  c.n_grid = std::move(grid);
  c.mode = mode;
  c.trials = trials;
  c.master_seed = 42;
  return c;
}

}  // namespace

TEST(Validate, RejectsBadConfigs) {
  auto c = config(shapes::single_edge(), {}, Mode::estimate);
  EXPECT_THROW(validate(c), Error);
  c.n_grid = {0};
  EXPECT_THROW(validate(c), Error);
  c.n_grid = {8};
  c.epsilon = 1.5;
  EXPECT_THROW(validate(c), Error);
  c.epsilon = 0.1;
  c.mode = Mode::moments;
  c.moment_k = 5;
  EXPECT_THROW(validate(c), Error);
  c.moment_k = 2;
  EXPECT_NO_THROW(validate(c));
}

TEST(Statistics, MedianAndMean) {
  EXPECT_EQ(median({3, 1, 2}), 2);
  EXPECT_EQ(median({4, 1, 2, 3}), 2.5);
  EXPECT_TRUE(std::isnan(median({})));
  const auto [m, se] = mean_and_standard_error({1, 2, 3, 4});
  EXPECT_DOUBLE_EQ(m, 2.5);
  EXPECT_NEAR(se, std::sqrt(5.0 / 3.0 / 4.0), 1e-12);
}

TEST(Statistics, FitLine) {
  const auto fit = fit_line({1, 2, 3, 4}, {3, 5, 7, 9});
  EXPECT_NEAR(fit.slope, 2.0, 1e-12);
  EXPECT_NEAR(fit.intercept, 1.0, 1e-12);
  EXPECT_NEAR(fit.stderr_slope, 0.0, 1e-12);
  EXPECT_THROW(fit_line({1, 2}, {1, 2}), Error);
  EXPECT_THROW(fit_line({1, 1, 1}, {1, 2, 3}), Error);
  const auto ll = fit_loglog({10, 100, 1000}, {std::sqrt(10.0), 10.0, std::sqrt(1000.0)});
  EXPECT_NEAR(ll.slope, 0.5, 1e-12);
}

TEST(RunExperiment, BoundModeOneReportPerN) {
  const auto rep = run_experiment(config(shapes::figure_1a(), {16, 32, 64}, Mode::bound));
  ASSERT_EQ(rep.bounds.size(), 3u);
  EXPECT_TRUE(rep.records.empty());
  EXPECT_EQ(rep.bounds[1].n, 32u);
  const std::string csv = report_csv(rep);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "n,epsilon,theorem,upper_bound,lower_scale,general_value,bipartite_value");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
}

TEST(RunExperiment, RecordCountAndNoViolations) {
  const auto rep = run_experiment(config(shapes::single_edge(), {16, 32}, Mode::estimate, 4));
  EXPECT_EQ(rep.records.size(), 8u);
  EXPECT_EQ(rep.violations, 0u);
  EXPECT_EQ(rep.errors, 0u);
  EXPECT_FALSE(rep.hard_failure);
  for (const auto& r : rep.records) {
    EXPECT_GT(r.measured, 0.0);
    EXPECT_LE(r.measured, static_cast<double>(r.upper_bound));
  }
}

TEST(RunExperiment, DeterministicAcrossWorkerCounts) {
  auto c = config(shapes::path3(), {12, 20}, Mode::estimate, 5);
  c.workers = 1;
  const std::string a = report_csv(run_experiment(c));
  EXPECT_EQ(a, report_csv(run_experiment(c)));
  for (unsigned w : {2u, 8u}) {
    c.workers = w;
    EXPECT_EQ(report_csv(run_experiment(c)), a) << "workers=" << w;
  }
  c.master_seed = 43;
  EXPECT_NE(report_csv(run_experiment(c)), a);
}

TEST(RunExperiment, TightnessSlopeForSingleEdge) {
  auto c = config(shapes::single_edge(), {64, 128, 256, 512}, Mode::tightness, 5);
  const auto rep = run_experiment(c);
  ASSERT_TRUE(rep.slope.has_value());
  EXPECT_DOUBLE_EQ(rep.expected_slope, 0.5);
  EXPECT_GE(rep.slope->slope, 0.35);
  EXPECT_LE(rep.slope->slope, 0.65);
  EXPECT_EQ(rep.medians.size(), 4u);
}

TEST(RunExperiment, MomentsAgreeWithExact) {
  auto c = config(shapes::single_edge(), {5, 6}, Mode::moments, 200);
  const auto rep = run_experiment(c);
  ASSERT_EQ(rep.moments.size(), 2u);
  for (const auto& m : rep.moments) EXPECT_TRUE(m.agrees) << "n=" << m.n;
  EXPECT_FALSE(rep.hard_failure);
}

TEST(RunExperiment, CapturesErrorsPerRecord) {
  auto c = config(shapes::figure_1a(), {30}, Mode::moments, 2);
  c.cap_entries = 10;
  const auto rep = run_experiment(c);
  EXPECT_GT(rep.errors, 0u);
  EXPECT_TRUE(rep.hard_failure);
  for (const auto& r : rep.records) EXPECT_NE(r.status, "ok");
  ASSERT_EQ(rep.moments.size(), 1u);
  EXPECT_FALSE(rep.moments[0].agrees);
}

TEST(RunExperiment, SummaryHasKeys) {
  const auto rep = run_experiment(config(shapes::single_edge(), {16}, Mode::estimate, 2));
  const std::string s = report_summary(rep);
  EXPECT_NE(s.find("violations=0"), std::string::npos);
  EXPECT_NE(s.find("mode=estimate"), std::string::npos);
}

TEST(Presets, QuickSuitesPass) {
  PresetOptions o;
  o.seed = 7;
  o.count = 100;
  for (const char* name : {"konig", "menger", "constraint", "partition", "moment-closed", "moment-inequality"}) {
    const auto r = run_preset(name, o);
    EXPECT_TRUE(r.passed) << name;
    EXPECT_FALSE(r.details.empty()) << name;
  }
}

TEST(Presets, UnknownNameThrows) {
  EXPECT_THROW(run_preset("nope"), Error);
  EXPECT_EQ(preset_names().size(), 12u);
}
