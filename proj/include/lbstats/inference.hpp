// Copyright 2026 The lbstats Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lbstats/bootstrap.hpp"
#include "lbstats/data_model.hpp"

namespace lbstats {

/// Per-replicate score differences of two systems evaluated on the same
/// resamples. Positive always means the reference did better.
struct PairedDelta {
  std::string reference;
  std::string competitor;
  std::vector<double> delta_values;
  double observed_delta = 0.0;
  bool reoriented = false;       // caller's order was swapped to winner-first
  bool self_comparison = false;  // reference == competitor
};

enum class Orientation {
  winner_first,  // swap so that observed_delta >= 0
  as_given,      // keep the caller's order; observed_delta may be negative
};

/// Builds the paired delta from two distributions produced by the same
/// bootstrap run. Throws std::invalid_argument if the replicate counts differ.
PairedDelta paired_difference(const SamplingDistribution& reference,
                              const SamplingDistribution& competitor, std::string reference_name,
                              std::string competitor_name, Direction direction,
                              Orientation orientation = Orientation::winner_first);

/// Runs the bootstrap for both systems on shared resamples.
PairedDelta paired_difference(const PredictionTable& table, const ScoreSpec& spec,
                              const BootstrapPlan& plan, std::string_view reference,
                              std::string_view competitor, const EngineOptions& options = {},
                              Orientation orientation = Orientation::winner_first);

struct DifferenceInterval {
  double lci = 0.0;
  double mean = 0.0;
  double uci = 0.0;
  bool contains_zero = true;
};

DifferenceInterval difference_ci(const PairedDelta& pd, double confidence);

enum class PValueRule {
  strict,    // count(delta > 2 delta_obs) / B
  smoothed,  // (count + 1) / (B + 1)
};

/// Fraction of replicates whose difference exceeds twice the observed one.
/// With observed_delta == 0 this is the fraction of strictly positive deltas,
/// except that an all-zero distribution (identical systems) gives 1.
double p_value(const PairedDelta& pd, PValueRule rule = PValueRule::strict);

enum class Stars { none, dagger, one, two, three };

/// "", "†", "*", "**", "***"
std::string_view to_string(Stars stars);

/// *** p < .001, ** p < .01, * p < .05, † p < .1.
Stars significance_stars(double p);

/// Systems in best-first order of observed score; equal scores keep their
/// input order. Returns indices into `observed`.
std::vector<std::size_t> rank_systems(std::span<const double> observed, Direction direction);

struct MatrixEntry {
  double delta = 0.0;  // rank-j system minus rank-i system, sign-adjusted
  double p_value = 1.0;
  Stars stars = Stars::none;
};

/// Lower triangle over systems ordered best-first: row i holds entries for
/// columns j < i.
struct DifferenceMatrix {
  std::vector<std::string> order;
  std::vector<std::vector<MatrixEntry>> rows;

  const MatrixEntry& at(std::size_t row, std::size_t column) const {
    return rows.at(row).at(column);
  }
};

DifferenceMatrix difference_matrix(std::span<const std::string> names,
                                   std::span<const SamplingDistribution> dists,
                                   Direction direction, PValueRule rule = PValueRule::strict);

/// Throws std::invalid_argument with fewer than two systems.
DifferenceMatrix difference_matrix(const PredictionTable& table, const ScoreSpec& spec,
                                   const BootstrapPlan& plan, const EngineOptions& options = {},
                                   PValueRule rule = PValueRule::strict);

}  // namespace lbstats
