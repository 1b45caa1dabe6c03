// Copyright 2026 The lbstats Authors.
// SPDX-License-Identifier: Apache-2.0

#include "lbstats/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "lbstats/kernels.hpp"
#include "lbstats/rng.hpp"

namespace lbstats {

PhiloxSampler::PhiloxSampler(ResamplePlan plan) : plan_(plan) {
  if (plan.n == 0) throw std::invalid_argument("resample size must be at least 1");
  if (plan.n > std::numeric_limits<std::uint32_t>::max()) {
    throw std::invalid_argument("resample size exceeds 2^32 - 1");
  }
}

void PhiloxSampler::fill(std::size_t replicate, std::span<std::uint32_t> out) const {
  PhiloxStream stream(plan_.seed, replicate);
  const auto bound = static_cast<std::uint32_t>(plan_.n);
  for (auto& index : out) index = stream.uniform_below(bound);
}

std::vector<std::uint32_t> resample_indices(const ResamplePlan& plan, std::size_t replicate) {
  if (replicate >= plan.replicates) {
    throw std::out_of_range("replicate id " + std::to_string(replicate) + " >= B = " +
                            std::to_string(plan.replicates));
  }
  std::vector<std::uint32_t> out(plan.n);
  PhiloxSampler(plan).fill(replicate, out);
  return out;
}

unsigned resolve_workers(unsigned hint) noexcept {
  if (hint != 0) return hint;
  const unsigned hardware = std::thread::hardware_concurrency();
  return hardware == 0 ? 1 : hardware;
}

void parallel_blocks(std::size_t count, unsigned workers,
                     const std::function<void(std::size_t, std::size_t)>& body) {
  if (count == 0) return;
  const std::size_t threads = std::min<std::size_t>(std::max(1u, workers), count);
  if (threads == 1) {
    body(0, count);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
      const std::size_t begin = count * t / threads;
      const std::size_t end = count * (t + 1) / threads;
      pool.emplace_back([&, begin, end] {
        try {
          body(begin, end);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

std::vector<SamplingDistribution> distributions(const PredictionTable& table,
                                                const ScoreSpec& spec, const BootstrapPlan& plan,
                                                const EngineOptions& options) {
  plan.check();
  const TableScorer scorer(table, spec);
  const std::size_t n = table.size();
  const std::size_t systems = table.system_count();
  const std::size_t replicates = plan.replicates;

  const ResamplePlan resample_plan{n, replicates, plan.seed};
  const PhiloxSampler default_sampler(resample_plan);
  const IndexSampler& sampler = options.sampler ? *options.sampler : default_sampler;

  std::vector<SamplingDistribution> out(systems);
  for (std::size_t s = 0; s < systems; ++s) {
    out[s].observed = scorer.observed(s);
    out[s].values.resize(replicates);
  }

  const unsigned workers = resolve_workers(options.workers ? options.workers : plan.workers);
  parallel_blocks(replicates, workers, [&](std::size_t begin, std::size_t end) {
    std::vector<std::uint32_t> indices(n);
    std::vector<std::int32_t> weights(n);
    std::vector<double> scores(systems);
    for (std::size_t r = begin; r < end; ++r) {
      sampler.fill(r, indices);
      std::fill(weights.begin(), weights.end(), 0);
      kernels::accumulate_multiplicities(indices, weights);
      scorer.score_all(Resample{indices, weights}, scores);
      for (std::size_t s = 0; s < systems; ++s) out[s].values[r] = scores[s];
    }
  });
  return out;
}

SamplingDistribution distribution(const PredictionTable& table, std::string_view system,
                                  const ScoreSpec& spec, const BootstrapPlan& plan,
                                  const EngineOptions& options) {
  const std::size_t index = table.system_index(system);
  const PredictionTable single = table.select(std::span<const std::size_t>(&index, 1));
  return std::move(distributions(single, spec, plan, options).front());
}

double quantile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw std::invalid_argument("quantile of an empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("quantile level outside [0, 1]");
  const double h = static_cast<double>(sorted.size() - 1) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = h - static_cast<double>(lo);
  if (frac == 0.0 || sorted[lo] == sorted[hi]) return sorted[lo];
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

Interval percentile_interval(std::span<const double> values, double confidence) {
  if (values.size() < 2) {
    throw std::invalid_argument("percentile interval needs at least two replicates");
  }
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw std::invalid_argument("confidence must lie strictly between 0 and 1");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double tail = (1.0 - confidence) / 2.0;
  Interval out;
  out.lci = quantile_sorted(sorted, tail);
  out.uci = quantile_sorted(sorted, 1.0 - tail);
  if (sorted.front() == sorted.back()) {
    out.mean = sorted.front();
  } else {
    const double mean = kernels::sum(values) / static_cast<double>(values.size());
    out.mean = std::clamp(mean, sorted.front(), sorted.back());
  }
  return out;
}

}  // namespace lbstats
