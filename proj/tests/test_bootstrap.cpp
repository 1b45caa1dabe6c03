#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <numeric>
#include <random>

#include "lbstats/bootstrap.hpp"
#include "oracle.hpp"

namespace lbstats {
namespace {

class IdentitySampler final : public IndexSampler {
 public:
  void fill(std::size_t, std::span<std::uint32_t> out) const override {
    std::iota(out.begin(), out.end(), 0u);
  }
};

PredictionTable bernoulli_table(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution hit(p);
  std::vector<std::string> gold(n), pred(n);
  for (std::size_t i = 0; i < n; ++i) {
    gold[i] = (i % 2) ? "A" : "B";
    pred[i] = hit(rng) ? gold[i] : (gold[i] == "A" ? "B" : "A");
  }
  return PredictionTable::classification(gold, {{"sys", pred}, {"gold", gold}});
}

TEST(ResampleIndices, SingleRowAlwaysZero) {
  const ResamplePlan plan{1, 50, 3};
  for (std::size_t r = 0; r < 50; ++r) EXPECT_EQ(resample_indices(plan, r), std::vector<std::uint32_t>{0});
}

TEST(ResampleIndices, DeterministicAndRangeChecked) {
  const ResamplePlan plan{37, 10, 99};
  EXPECT_EQ(resample_indices(plan, 4), resample_indices(plan, 4));
  EXPECT_NE(resample_indices(plan, 4), resample_indices(plan, 5));
  EXPECT_THROW(resample_indices(plan, 10), std::out_of_range);
  EXPECT_THROW(resample_indices(ResamplePlan{0, 10, 0}, 0), std::invalid_argument);
}

TEST(ResampleIndices, IndexFrequenciesAreUniform) {
  const ResamplePlan plan{10, 100000, 2024};
  std::vector<std::size_t> counts(10);
  for (std::size_t r = 0; r < plan.replicates; ++r) {
    for (auto i : resample_indices(plan, r)) ++counts[i];
  }
  for (auto c : counts) {
    const double frequency = static_cast<double>(c) / 1e6;
    EXPECT_NEAR(frequency, 0.10, 0.005);
  }
}

TEST(Distribution, PerfectPredictorIsAlwaysOne) {
  const auto table = bernoulli_table(120, 0.7, 1);
  BootstrapPlan plan;
  plan.replicates = 500;
  const auto dist = distribution(table, "gold", ScoreSpec::macro_f1({"A", "B"}), plan);
  for (double v : dist.values) ASSERT_EQ(v, 1.0);
  EXPECT_EQ(dist.observed, 1.0);
  EXPECT_THROW(distribution(table, "missing", ScoreSpec::accuracy(), plan), std::out_of_range);
}

TEST(Distribution, IdentityStubReproducesObserved) {
  const auto table = bernoulli_table(50, 0.6, 2);
  BootstrapPlan plan;
  plan.replicates = 1;
  const IdentitySampler stub;
  const auto dist = distribution(table, "sys", ScoreSpec::accuracy(), plan, {1, &stub});
  ASSERT_EQ(dist.values.size(), 1u);
  EXPECT_EQ(dist.values[0], dist.observed);
}

TEST(Distribution, ReplicatesShareIndicesAcrossSystems) {
  const auto table = bernoulli_table(40, 0.6, 3);
  BootstrapPlan plan;
  plan.replicates = 25;
  plan.seed = 17;
  const auto spec = ScoreSpec::macro_f1({"A", "B"});
  const auto dists = distributions(table, spec, plan);
  const ResamplePlan rp{table.size(), plan.replicates, plan.seed};
  for (std::size_t r = 0; r < plan.replicates; ++r) {
    const auto idx = resample_indices(rp, r);
    for (std::size_t s = 0; s < table.system_count(); ++s) {
      EXPECT_EQ(dists[s].values[r], score_on_indices(table, s, spec, idx));
    }
  }
}

TEST(Distribution, BitIdenticalAcrossWorkerCounts) {
  const auto table = bernoulli_table(300, 0.75, 4);
  BootstrapPlan plan;
  plan.replicates = 3001;
  plan.seed = 5;
  const auto spec = ScoreSpec::f1_of_class("A");
  const auto reference = distributions(table, spec, plan, {1, nullptr});
  for (unsigned workers : {2u, 3u, 8u, 13u}) {
    const auto other = distributions(table, spec, plan, {workers, nullptr});
    for (std::size_t s = 0; s < reference.size(); ++s) {
      ASSERT_EQ(reference[s].values, other[s].values) << workers << " workers";
    }
  }
}

TEST(Distribution, BernoulliAccuracyMatchesBinomialTheory) {
  const std::size_t n = 200;
  const auto table = bernoulli_table(n, 0.8, 6);
  BootstrapPlan plan;
  plan.replicates = 10000;
  plan.seed = 77;
  const auto dist = distribution(table, "sys", ScoreSpec::accuracy(), plan);
  const auto ci = percentile_ci(dist, 0.95);
  const double p = dist.observed;
  EXPECT_NEAR(ci.mean, p, 0.01);
  const double analytic = 2 * 1.959963985 * std::sqrt(p * (1 - p) / static_cast<double>(n));
  EXPECT_NEAR((ci.uci - ci.lci) / analytic, 1.0, 0.15);
}

TEST(PercentileInterval, ConstantValues) {
  const std::vector<double> v(10, 0.3);
  const auto ci = percentile_interval(v, 0.95);
  EXPECT_EQ(ci.lci, 0.3);
  EXPECT_EQ(ci.mean, 0.3);
  EXPECT_EQ(ci.uci, 0.3);
}

TEST(PercentileInterval, OneToHundredUsesLinearInterpolation) {
  std::vector<double> v(100);
  std::iota(v.begin(), v.end(), 1.0);
  const auto ci = percentile_interval(v, 0.95);
  EXPECT_NEAR(ci.lci, oracle::quantile(v, 0.025), 1e-12);
  EXPECT_NEAR(ci.uci, oracle::quantile(v, 0.975), 1e-12);
  EXPECT_NEAR(ci.lci, 3.475, 1e-12);
  EXPECT_NEAR(ci.uci, 97.525, 1e-12);
  EXPECT_DOUBLE_EQ(ci.mean, 50.5);
}

TEST(PercentileInterval, RandomSamplesMatchOracleAndNest) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> z;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> v(2 + rng() % 500);
    for (auto& x : v) x = z(rng);
    for (double c : {0.5, 0.9, 0.95, 0.99}) {
      const auto ci = percentile_interval(v, c);
      EXPECT_NEAR(ci.lci, oracle::quantile(v, (1 - c) / 2), 1e-12);
      EXPECT_NEAR(ci.uci, oracle::quantile(v, 1 - (1 - c) / 2), 1e-12);
      EXPECT_LE(ci.lci, ci.mean);
      EXPECT_LE(ci.mean, ci.uci);
    }
    const auto narrow = percentile_interval(v, 0.8);
    const auto wide = percentile_interval(v, 0.95);
    EXPECT_LE(wide.lci, narrow.lci);
    EXPECT_GE(wide.uci, narrow.uci);
  }
}

TEST(PercentileInterval, NeedsTwoValues) {
  const std::vector<double> one{1.0};
  EXPECT_THROW(percentile_interval(one, 0.95), std::invalid_argument);
}

TEST(ParallelBlocks, CoversRangeAndPropagatesErrors) {
  std::vector<std::atomic<int>> hits(1000);
  parallel_blocks(1000, 7, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) ++hits[i];
  });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  EXPECT_THROW(parallel_blocks(100, 4,
                               [](std::size_t b, std::size_t) {
                                 if (b > 0) throw std::runtime_error("boom");
                               }),
               std::runtime_error);
}

}  // namespace
}  // namespace lbstats
