// Copyright 2026 The lbstats Authors.
// SPDX-License-Identifier: Apache-2.0

#include "lbstats/inference.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "lbstats/kernels.hpp"

namespace lbstats {

PairedDelta paired_difference(const SamplingDistribution& reference,
                              const SamplingDistribution& competitor, std::string reference_name,
                              std::string competitor_name, Direction direction,
                              Orientation orientation) {
  if (reference.values.size() != competitor.values.size()) {
    throw std::invalid_argument("paired distributions have different replicate counts");
  }
  const double sign = orientation_sign(direction);
  const SamplingDistribution* ref = &reference;
  const SamplingDistribution* comp = &competitor;

  PairedDelta out;
  out.self_comparison = reference_name == competitor_name;
  if (orientation == Orientation::winner_first && sign * (ref->observed - comp->observed) < 0.0) {
    std::swap(ref, comp);
    std::swap(reference_name, competitor_name);
    out.reoriented = true;
  }
  out.reference = std::move(reference_name);
  out.competitor = std::move(competitor_name);
  out.observed_delta = sign * (ref->observed - comp->observed);
  out.delta_values.resize(ref->values.size());
  for (std::size_t r = 0; r < ref->values.size(); ++r) {
    out.delta_values[r] = sign * (ref->values[r] - comp->values[r]);
  }
  return out;
}

PairedDelta paired_difference(const PredictionTable& table, const ScoreSpec& spec,
                              const BootstrapPlan& plan, std::string_view reference,
                              std::string_view competitor, const EngineOptions& options,
                              Orientation orientation) {
  const std::size_t ref = table.system_index(reference);
  const std::size_t comp = table.system_index(competitor);
  if (ref == comp) {
    const PredictionTable single = table.select(std::span<const std::size_t>(&ref, 1));
    const auto dists = distributions(single, spec, plan, options);
    return paired_difference(dists[0], dists[0], std::string(reference), std::string(competitor),
                             spec.direction, orientation);
  }
  const std::size_t pair[2] = {ref, comp};
  const PredictionTable both = table.select(pair);
  const auto dists = distributions(both, spec, plan, options);
  return paired_difference(dists[0], dists[1], std::string(reference), std::string(competitor),
                           spec.direction, orientation);
}

DifferenceInterval difference_ci(const PairedDelta& pd, double confidence) {
  const Interval interval = percentile_interval(pd.delta_values, confidence);
  return {interval.lci, interval.mean, interval.uci, interval.lci <= 0.0 && 0.0 <= interval.uci};
}

double p_value(const PairedDelta& pd, PValueRule rule) {
  const std::size_t replicates = pd.delta_values.size();
  if (replicates == 0) throw std::invalid_argument("p-value of an empty delta distribution");
  // Identical systems: no replicate separates them, so there is no evidence.
  if (pd.observed_delta == 0.0 &&
      std::all_of(pd.delta_values.begin(), pd.delta_values.end(), [](double d) { return d == 0.0; })) {
    return 1.0;
  }
  const std::size_t exceed = kernels::count_greater(pd.delta_values, 2.0 * pd.observed_delta);
  if (rule == PValueRule::smoothed) {
    return static_cast<double>(exceed + 1) / static_cast<double>(replicates + 1);
  }
  return static_cast<double>(exceed) / static_cast<double>(replicates);
}

std::string_view to_string(Stars stars) {
  switch (stars) {
    case Stars::none: return "";
    case Stars::dagger: return "†";
    case Stars::one: return "*";
    case Stars::two: return "**";
    case Stars::three: return "***";
  }
  return "";
}

Stars significance_stars(double p) {
  if (p < 0.001) return Stars::three;
  if (p < 0.01) return Stars::two;
  if (p < 0.05) return Stars::one;
  if (p < 0.1) return Stars::dagger;
  return Stars::none;
}

std::vector<std::size_t> rank_systems(std::span<const double> observed, Direction direction) {
  std::vector<std::size_t> order(observed.size());
  std::iota(order.begin(), order.end(), 0);
  const double sign = orientation_sign(direction);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return sign * observed[a] > sign * observed[b];
  });
  return order;
}

DifferenceMatrix difference_matrix(std::span<const std::string> names,
                                   std::span<const SamplingDistribution> dists,
                                   Direction direction, PValueRule rule) {
  if (names.size() != dists.size()) throw std::invalid_argument("names/distributions mismatch");
  if (names.size() < 2) throw std::invalid_argument("difference matrix needs at least 2 systems");
  std::vector<double> observed;
  for (const auto& d : dists) observed.push_back(d.observed);
  const auto order = rank_systems(observed, direction);

  DifferenceMatrix out;
  for (std::size_t index : order) out.order.push_back(names[index]);
  out.rows.resize(order.size());
  for (std::size_t i = 1; i < order.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const auto pd = paired_difference(dists[order[j]], dists[order[i]], names[order[j]],
                                        names[order[i]], direction, Orientation::as_given);
      MatrixEntry entry;
      entry.delta = pd.observed_delta;
      entry.p_value = p_value(pd, rule);
      entry.stars = significance_stars(entry.p_value);
      out.rows[i].push_back(entry);
    }
  }
  return out;
}

DifferenceMatrix difference_matrix(const PredictionTable& table, const ScoreSpec& spec,
                                   const BootstrapPlan& plan, const EngineOptions& options,
                                   PValueRule rule) {
  if (table.system_count() < 2) {
    throw std::invalid_argument("difference matrix needs at least 2 systems");
  }
  const auto dists = distributions(table, spec, plan, options);
  return difference_matrix(table.system_names(), dists, spec.direction, rule);
}

}  // namespace lbstats
