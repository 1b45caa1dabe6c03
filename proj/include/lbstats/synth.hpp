// Copyright 2026 The lbstats Authors.
// SPDX-License-Identifier: Apache-2.0

// Synthetic competitions with known population scores, used to check the
// coverage and calibration of the bootstrap machinery.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lbstats/data_model.hpp"

namespace lbstats {

/// Each gold element is replaced, with probability `corruption`, by a draw
/// from row gold of `kernel`; otherwise the system predicts it exactly.
struct SystemModel {
  std::string name;
  double corruption = 0.0;
  /// kernel[gold][pred]; rows are normalized. Empty = uniform over the
  /// other labels.
  std::vector<std::vector<double>> kernel;
};

struct SynthConfig {
  std::size_t n = 0;
  TaskKind task_kind = TaskKind::classification;
  /// Outcome values. For regression each label must parse as a number.
  std::vector<std::string> labels;
  /// Gold distribution over labels; normalized. Empty = uniform.
  std::vector<double> label_weights;
  std::vector<SystemModel> systems;
  std::uint64_t seed = 0;
};

/// Throws std::invalid_argument describing the first problem found.
void check(const SynthConfig& config);

/// Deterministic in the whole config, seed included.
PredictionTable generate(const SynthConfig& config);

/// Large-n limit of the system's score under the corruption model. For F1
/// this is the F1 of the expected confusion proportions. Custom metrics have
/// no closed form and throw std::invalid_argument.
double population_score(const SynthConfig& config, std::size_t system, const ScoreSpec& spec);

struct CalibrationOptions {
  std::size_t coverage_system = 0;
  /// Systems compared under the null; default (0, 1) when there are two.
  std::optional<std::pair<std::size_t, std::size_t>> null_pair;
  unsigned workers = 0;
};

struct CalibrationSummary {
  std::size_t trials = 0;
  double population_score = 0.0;
  std::size_t covered = 0;
  double coverage = 0.0;
  /// One per trial: the 2-delta p-value with the null pair's first system
  /// fixed as reference, so negative observed deltas are kept.
  std::vector<double> null_p_values;
  double ks_distance = 0.0;            // null p-values vs Uniform(0, 1)
  std::vector<std::size_t> p_histogram;  // ten equal bins on [0, 1]
};

/// Runs the full bootstrap on `trials` fresh synthetic datasets. Trial t uses
/// data seed derive_seed(config.seed, ., t) and bootstrap seed
/// derive_seed(plan.seed, ., t).
CalibrationSummary calibrate(const SynthConfig& config, const ScoreSpec& spec,
                             const BootstrapPlan& plan, std::size_t trials,
                             const CalibrationOptions& options = {});

/// Kolmogorov-Smirnov distance of a sample's ECDF from Uniform(0, 1).
double ks_uniform(std::span<const double> sample);

struct TargetScoreOptions {
  /// When set, the result differs from `anchor` in exactly `disagreements`
  /// rows.
  std::optional<std::vector<std::string>> anchor;
  std::size_t disagreements = 0;
  double tolerance = 5e-5;
  std::uint64_t seed = 0;
  std::size_t max_steps = 2'000'000;
};

/// Classification predictions over `labels` whose score against `gold`
/// is within tolerance of `target`, found by randomized local search over
/// single-row label changes. Throws std::runtime_error when the search does
/// not converge.
std::vector<std::string> predictions_with_score(std::span<const std::string> gold,
                                                std::span<const std::string> labels,
                                                const ScoreSpec& spec, double target,
                                                const TargetScoreOptions& options);

}  // namespace lbstats
