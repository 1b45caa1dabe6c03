#include <gtest/gtest.h>

#include "lbstats/bootstrap.hpp"
#include "lbstats/io/config.hpp"
#include "lbstats/io/custom_metric.hpp"
#include "lbstats/metrics.hpp"

namespace lbstats::io {
namespace {

TEST(CustomMetric, LoadsPluginSymbols) {
  const auto metric = load_custom_metric(LBSTATS_TEST_PLUGIN);
  EXPECT_EQ(metric->name, "match-rate");
  ASSERT_TRUE(metric->score_labels);
  ASSERT_TRUE(metric->score_values);
  const std::vector<std::string_view> gold{"a", "b", "c", "a"};
  const std::vector<std::string_view> pred{"a", "c", "c", "b"};
  EXPECT_DOUBLE_EQ(metric->score_labels(gold, pred), 0.5);
  const std::vector<double> g{1, 2, 3};
  const std::vector<double> p{1, 4, 2};
  EXPECT_DOUBLE_EQ(metric->score_values(g, p), 5.0 / 3);
}

TEST(CustomMetric, AgreesWithAccuracyThroughTheEngine) {
  RunConfig config;
  config.metric = std::string("custom:") + LBSTATS_TEST_PLUGIN;
  const auto spec = make_score_spec(config);
  EXPECT_EQ(spec.metric, MetricKind::custom);
  const auto table = PredictionTable::classification(
      {"A", "B", "C", "A", "B", "B", "C", "A"},
      {{"x", {"A", "B", "B", "A", "C", "B", "C", "C"}}, {"y", {"A", "A", "A", "A", "A", "A", "A", "A"}}});
  EXPECT_DOUBLE_EQ(score(table, 0, spec), score(table, 0, ScoreSpec::accuracy()));
  BootstrapPlan plan;
  plan.replicates = 200;
  plan.seed = 8;
  const auto custom = distributions(table, spec, plan);
  const auto builtin = distributions(table, ScoreSpec::accuracy(), plan);
  for (std::size_t s = 0; s < 2; ++s) {
    for (std::size_t r = 0; r < 200; ++r) {
      EXPECT_NEAR(custom[s].values[r], builtin[s].values[r], 1e-15);
    }
  }
}

TEST(CustomMetric, LowerBetterDirectionForErrors) {
  RunConfig config;
  config.metric = std::string("custom:") + LBSTATS_TEST_PLUGIN;
  config.direction = Direction::lower_better;
  const auto spec = make_score_spec(config);
  EXPECT_EQ(spec.direction, Direction::lower_better);
  EXPECT_FALSE(spec.capped_at_one);
  const auto table = PredictionTable::regression({1, 2, 3}, {{"r", {1, 4, 2}}});
  EXPECT_DOUBLE_EQ(score(table, 0, spec), 5.0 / 3);
}

TEST(CustomMetric, BadPathsAreConfigErrors) {
  EXPECT_THROW(load_custom_metric("/no/such/plugin.so"), ConfigError);
  // A shared library without either scoring symbol.
  EXPECT_THROW(load_custom_metric("libm.so.6"), ConfigError);
}

}  // namespace
}  // namespace lbstats::io
