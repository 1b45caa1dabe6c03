// Copyright 2026 The lbstats Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lbstats/data_model.hpp"

namespace lbstats {

struct ClassCounts {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
};

struct ConfusionCounts {
  std::vector<ClassCounts> per_label;  // indexed by label code
  std::int64_t correct = 0;
  std::int64_t total = 0;
};

ConfusionCounts confusion_counts(std::span<const std::int32_t> gold,
                                 std::span<const std::int32_t> pred, std::size_t label_count);

/// 2tp / (2tp + fp + fn); nullopt when the denominator is zero.
std::optional<double> f1(const ClassCounts& counts);

/// Mean F1 over `classes` (label codes). Labels outside `classes` still feed
/// the fp/fn of the listed ones but contribute no term of their own.
double subset_macro_f1(const ConfusionCounts& counts, std::span<const std::int32_t> classes,
                       ZeroDivision zero_division);

/// A bootstrap resample given both as drawn indices and as per-row
/// multiplicities. weights[i] == count of i in indices.
struct Resample {
  std::span<const std::uint32_t> indices;
  std::span<const std::int32_t> weights;
};

/// Scores every system of a table under one ScoreSpec, prepared once so that
/// each resample costs a handful of kernel passes per system.
class TableScorer {
 public:
  /// Throws std::invalid_argument if the spec cannot score the table.
  TableScorer(const PredictionTable& table, const ScoreSpec& spec);

  const PredictionTable& table() const noexcept { return *table_; }
  const ScoreSpec& spec() const noexcept { return spec_; }

  /// Score on the original sample.
  double observed(std::size_t system) const;
  double score(std::size_t system, const Resample& resample) const;
  /// out[s] = score(s, resample) for every system; gold counts shared.
  void score_all(const Resample& resample, std::span<double> out) const;

 private:
  struct GoldCounts {
    std::vector<std::int64_t> per_class;  // aligned with class_codes_
  };
  GoldCounts gold_counts(const Resample& resample) const;
  double score_with(std::size_t system, const Resample& resample, const GoldCounts& gold) const;
  double score_custom(std::size_t system, const Resample& resample) const;

  const PredictionTable* table_;
  ScoreSpec spec_;
  std::vector<std::int32_t> class_codes_;
  std::vector<std::vector<std::int32_t>> hit_codes_;   // pred code where correct, else -1
  std::vector<std::vector<std::int32_t>> correct_;     // 1 where correct, else 0
  std::vector<std::vector<double>> abs_error_;         // regression
  std::vector<std::uint32_t> identity_indices_;
  std::vector<std::int32_t> unit_weights_;
};

/// Score of one system of a table.
double score(const PredictionTable& table, std::size_t system, const ScoreSpec& spec);

/// Score of one system on the resample gold[indices], pred[indices].
/// Throws std::out_of_range for an index >= n.
double score_on_indices(const PredictionTable& table, std::size_t system, const ScoreSpec& spec,
                        std::span<const std::uint32_t> indices);

/// Outcome-vector forms. Labels are trimmed before comparison.
double score(std::span<const std::string> gold, std::span<const std::string> pred,
             const ScoreSpec& spec);
double score(std::span<const double> gold, std::span<const double> pred, const ScoreSpec& spec);
double score_on_indices(std::span<const std::string> gold, std::span<const std::string> pred,
                        const ScoreSpec& spec, std::span<const std::uint32_t> indices);
double score_on_indices(std::span<const double> gold, std::span<const double> pred,
                        const ScoreSpec& spec, std::span<const std::uint32_t> indices);

}  // namespace lbstats
