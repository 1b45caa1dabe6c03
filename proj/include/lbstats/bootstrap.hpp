// Copyright 2026 The lbstats Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "lbstats/data_model.hpp"
#include "lbstats/metrics.hpp"

namespace lbstats {

inline constexpr std::string_view kQuantileRule = "linear-interpolation (h = (B-1)q)";
inline constexpr std::string_view kIntervalMethod = "percentile";

struct ResamplePlan {
  std::size_t n = 0;
  std::size_t replicates = 0;
  std::uint64_t seed = 0;
};

struct SamplingDistribution {
  std::vector<double> values;  // one per replicate, indexed by replicate id
  double observed = 0.0;
};

/// Source of resample indices for a replicate. Implementations must be pure
/// in the replicate id and safe to call from several threads.
class IndexSampler {
 public:
  virtual ~IndexSampler() = default;
  virtual void fill(std::size_t replicate, std::span<std::uint32_t> out) const = 0;
};

/// n uniform draws from [0, n) on the Philox stream (seed, replicate).
class PhiloxSampler final : public IndexSampler {
 public:
  explicit PhiloxSampler(ResamplePlan plan);
  void fill(std::size_t replicate, std::span<std::uint32_t> out) const override;

 private:
  ResamplePlan plan_;
};

/// Throws std::out_of_range when replicate >= plan.replicates, and
/// std::invalid_argument for n == 0 or n >= 2^32.
std::vector<std::uint32_t> resample_indices(const ResamplePlan& plan, std::size_t replicate);

struct EngineOptions {
  unsigned workers = 0;                   // 0 = BootstrapPlan::workers, then hardware
  const IndexSampler* sampler = nullptr;  // nullptr = PhiloxSampler
};

/// Number of threads actually used for a worker hint.
unsigned resolve_workers(unsigned hint) noexcept;

/// Runs `body(begin, end)` over contiguous replicate blocks on up to
/// `workers` threads. Blocks are disjoint and cover [0, count).
void parallel_blocks(std::size_t count, unsigned workers,
                     const std::function<void(std::size_t, std::size_t)>& body);

/// Sampling distributions of every system in the table. Replicate r uses the
/// same resample for every system. Results do not depend on worker count.
std::vector<SamplingDistribution> distributions(const PredictionTable& table,
                                                const ScoreSpec& spec, const BootstrapPlan& plan,
                                                const EngineOptions& options = {});

/// Distribution of a single system; identical to the matching entry of
/// distributions(). Throws std::out_of_range for an unknown system.
SamplingDistribution distribution(const PredictionTable& table, std::string_view system,
                                  const ScoreSpec& spec, const BootstrapPlan& plan,
                                  const EngineOptions& options = {});

struct Interval {
  double lci = 0.0;
  double mean = 0.0;
  double uci = 0.0;
};

/// Empirical q-quantile of ascending `sorted` by linear interpolation between
/// order statistics at position h = (size - 1) q.
double quantile_sorted(std::span<const double> sorted, double q);

/// (1-c)/2 and 1-(1-c)/2 quantiles and the arithmetic mean of `values`.
/// Throws std::invalid_argument for fewer than two values.
Interval percentile_interval(std::span<const double> values, double confidence);

inline Interval percentile_ci(const SamplingDistribution& dist, double confidence) {
  return percentile_interval(dist.values, confidence);
}

}  // namespace lbstats
