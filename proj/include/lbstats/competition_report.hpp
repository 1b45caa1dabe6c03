// Copyright 2026 The lbstats Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lbstats/bootstrap.hpp"
#include "lbstats/corrections.hpp"
#include "lbstats/data_model.hpp"
#include "lbstats/inference.hpp"

namespace lbstats {

/// Competition-level summary: statistical ties, dispersion and headroom.
struct CompetitionReport {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t possible_comparisons = 0;
  std::map<CorrectionMethod, std::size_t> ties_with_winner;
  std::map<CorrectionMethod, std::size_t> ties_all_pairs;
  double win_med_gap = 0.0;
  std::optional<double> cv;  // absent when the mean score is zero
  bool cv_comparable = true; // false for unbounded lower-better metrics
  std::optional<double> ppi;
  double alpha = 0.05;

  // Reproducibility record.
  std::string metric;
  Direction direction = Direction::higher_better;
  FamilyPolicy policy = FamilyPolicy::per_reference;
  std::uint64_t seed = 0;
  std::size_t replicates = 0;
  double confidence = 0.95;
  std::string winner;
  std::vector<std::string> excluded;
  /// Groups of systems with equal observed scores, ranked by column order.
  std::vector<std::vector<std::string>> ranking_ties;
  std::vector<std::string> notes;
};

/// 100 * s / mean with the sample standard deviation (divisor m - 1).
/// Throws std::invalid_argument for m < 2 or a zero mean.
double cv(std::span<const double> scores);

/// 100 * (1 - winner) for capped higher-better metrics, else absent.
std::optional<double> ppi(double winner_score, const ScoreSpec& spec);

/// |score_1 - score_mid| with mid = floor(m/2) + 1 in 1-based best-first
/// ranking. Throws std::invalid_argument for m < 2.
double win_med_gap(std::span<const double> ranked_scores);

/// All-pairs adjusted p-values keyed by correction method.
using AdjustedPValues = std::map<CorrectionMethod, std::map<PairId, double>>;

struct TieCounts {
  std::map<CorrectionMethod, std::size_t> with_winner;
  std::map<CorrectionMethod, std::size_t> all_pairs;
};

/// A pair is tied when its (adjusted) p >= alpha.
TieCounts tie_counts(const AdjustedPValues& adjusted, const std::string& winner, double alpha);

struct AnalysisOptions {
  FamilyPolicy policy = FamilyPolicy::per_reference;
  std::vector<CorrectionMethod> corrections = {CorrectionMethod::none,
                                               CorrectionMethod::bonferroni,
                                               CorrectionMethod::holm, CorrectionMethod::bh};
  std::string gold_alias = "Gold_Standard";
  PValueRule p_rule = PValueRule::strict;
  bool keep_samples = false;
  EngineOptions engine;
};

/// Everything one pipeline run produces, in best-first order.
struct Analysis {
  std::vector<std::string> ranked;
  std::vector<PerformanceSummary> performance;
  std::vector<DifferenceSummary> vs_winner;     // winner vs ranks 2..m
  std::vector<PairedDelta> winner_deltas;       // aligned with vs_winner
  std::vector<DifferenceSummary> pairs;         // every (i, j), i < j
  DifferenceMatrix matrix;
  std::vector<PValueFamily> families;
  AdjustedPValues adjusted;
  CompetitionReport report;
};

/// Bootstraps every competitor once, then derives intervals, paired
/// differences, p-values, corrections and the report from that single run.
/// Throws ValidationError when fewer than two competitors remain after the
/// gold-standard alias is excluded.
Analysis analyze(const PredictionTable& table, const ScoreSpec& spec, const BootstrapPlan& plan,
                 const AnalysisOptions& options = {});

inline CompetitionReport build_report(const PredictionTable& table, const ScoreSpec& spec,
                                      const BootstrapPlan& plan,
                                      const AnalysisOptions& options = {}) {
  return analyze(table, spec, plan, options).report;
}

}  // namespace lbstats
