// Copyright 2026 The lbstats Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lbstats {

// ---------------------------------------------------------------------------
// Errors. Precondition failures on pure operations use std::invalid_argument /
// std::out_of_range; the classes below carry the CLI exit-code categories.
// ---------------------------------------------------------------------------

struct Violation;

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  ValidationError(const std::string& message);

  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  std::vector<Violation> violations_;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// PredictionTable
// ---------------------------------------------------------------------------

enum class TaskKind { classification, regression };

std::string_view to_string(TaskKind kind);

struct Violation {
  enum class Kind {
    empty_table,
    length_mismatch,
    empty_name,
    duplicate_name,
    missing_value,
    non_numeric,
    label_outside_set,
  };

  Kind kind;
  std::string column;           // system name, or the gold column name
  std::optional<std::size_t> row;
  std::string message;
};

std::string_view to_string(Violation::Kind kind);

/// One unchecked input column. A disengaged cell is a missing value.
struct RawColumn {
  std::string name;
  std::vector<std::optional<std::string>> cells;
};

/// Column-oriented input as it arrives from a file or caller, before any
/// invariant has been checked.
struct RawTable {
  TaskKind task_kind = TaskKind::classification;
  RawColumn gold;
  std::vector<RawColumn> systems;
};

/// Trims ASCII whitespace on both ends. Labels are compared after trimming.
std::string trim(std::string_view text);

/// Every invariant violation in `raw`, with column and row context. An empty
/// result means PredictionTable::from_raw will succeed.
std::vector<Violation> validate(const RawTable& raw);

/// Gold outcomes plus named per-system predictions, all of length n.
///
/// Immutable after construction. Classification outcomes are stored as dense
/// codes into label_set(); regression outcomes as doubles.
class PredictionTable {
 public:
  /// Throws ValidationError carrying every violation if `raw` is invalid.
  static PredictionTable from_raw(const RawTable& raw);

  static PredictionTable classification(
      std::vector<std::string> gold,
      std::vector<std::pair<std::string, std::vector<std::string>>> systems);

  static PredictionTable regression(
      std::vector<double> gold,
      std::vector<std::pair<std::string, std::vector<double>>> systems);

  TaskKind task_kind() const noexcept { return task_kind_; }
  std::size_t size() const noexcept { return n_; }
  std::size_t system_count() const noexcept { return names_.size(); }

  const std::vector<std::string>& system_names() const noexcept { return names_; }
  const std::string& system_name(std::size_t index) const { return names_.at(index); }
  std::optional<std::size_t> find_system(std::string_view name) const;
  /// Throws std::out_of_range naming the system when absent.
  std::size_t system_index(std::string_view name) const;

  /// Classification only: first-appearance order in gold, then across
  /// systems in column order.
  const std::vector<std::string>& label_set() const noexcept { return labels_; }
  std::optional<std::int32_t> label_code(std::string_view label) const;

  std::span<const std::int32_t> gold_codes() const noexcept { return gold_codes_; }
  std::span<const std::int32_t> codes(std::size_t system) const { return codes_.at(system); }
  std::span<const double> gold_values() const noexcept { return gold_values_; }
  std::span<const double> values(std::size_t system) const { return values_.at(system); }

  /// Copy keeping only the listed systems, in the listed order.
  PredictionTable select(std::span<const std::size_t> systems) const;

 private:
  PredictionTable() = default;
  friend std::vector<Violation> validate(const PredictionTable& table);

  TaskKind task_kind_ = TaskKind::classification;
  std::size_t n_ = 0;
  std::vector<std::string> names_;
  std::vector<std::string> labels_;
  std::vector<std::int32_t> gold_codes_;
  std::vector<std::vector<std::int32_t>> codes_;
  std::vector<double> gold_values_;
  std::vector<std::vector<double>> values_;
};

/// Re-checks a constructed table. Always empty for a table that was built
/// through one of the factories.
std::vector<Violation> validate(const PredictionTable& table);

// ---------------------------------------------------------------------------
// ScoreSpec
// ---------------------------------------------------------------------------

enum class MetricKind { accuracy, f1_of_class, macro_f1, mae, custom };
enum class Direction { higher_better, lower_better };

/// What F1 does for a class with tp = fp = fn = 0.
enum class ZeroDivision {
  zero,     // F1 = 0, still counted in the macro average
  exclude,  // dropped from the macro average
};

std::string_view to_string(Direction direction);

/// Scoring function for metrics that live outside the library. Exactly one
/// of the two callbacks is used, depending on the table's task kind.
struct CustomMetric {
  std::string name;
  std::function<double(std::span<const std::string_view> gold,
                       std::span<const std::string_view> pred)>
      score_labels;
  std::function<double(std::span<const double> gold, std::span<const double> pred)>
      score_values;
};

struct ScoreSpec {
  MetricKind metric = MetricKind::accuracy;
  std::vector<std::string> classes;  // f1_of_class: one label; macro_f1: the subset
  Direction direction = Direction::higher_better;
  bool capped_at_one = true;
  ZeroDivision zero_division = ZeroDivision::zero;
  std::shared_ptr<const CustomMetric> custom;

  static ScoreSpec accuracy();
  static ScoreSpec f1_of_class(std::string label);
  static ScoreSpec macro_f1(std::vector<std::string> labels);
  static ScoreSpec mae();
  static ScoreSpec custom_metric(std::shared_ptr<const CustomMetric> metric,
                                 Direction direction, bool capped_at_one);

  /// Canonical text form, e.g. "macro-f1:FAVOR,AGAINST".
  std::string describe() const;
};

/// Throws std::invalid_argument when `spec` cannot score `table`.
void require_compatible(const ScoreSpec& spec, const PredictionTable& table);

/// The best attainable value of the metric, when it has one.
std::optional<double> ideal_value(const ScoreSpec& spec);

/// +1 for higher_better, -1 for lower_better. Multiplying a score difference
/// by this makes positive mean "first argument is better".
inline double orientation_sign(Direction direction) {
  return direction == Direction::higher_better ? 1.0 : -1.0;
}

// ---------------------------------------------------------------------------
// Bootstrap configuration and result records
// ---------------------------------------------------------------------------

struct BootstrapPlan {
  std::size_t replicates = 10000;
  double confidence = 0.95;
  std::uint64_t seed = 0;
  double alpha = 0.05;
  unsigned workers = 0;  // 0 = hardware concurrency

  /// Throws std::invalid_argument on replicates < 1, confidence or alpha
  /// outside (0, 1).
  void check() const;
};

enum class CorrectionMethod { none, bonferroni, holm, bh };

std::string_view to_string(CorrectionMethod method);
std::optional<CorrectionMethod> parse_correction(std::string_view text);

struct PerformanceSummary {
  std::string system;
  double observed = 0.0;
  double boot_mean = 0.0;
  double lci = 0.0;
  double uci = 0.0;
  std::vector<double> boot_samples;  // empty unless retained
};

struct DifferenceSummary {
  std::string reference;
  std::string competitor;
  double observed_delta = 0.0;  // positive = reference better
  double boot_mean = 0.0;
  double lci = 0.0;
  double uci = 0.0;
  bool contains_zero = true;
  double p_value = 1.0;
  std::map<CorrectionMethod, double> adjusted_p;
  bool reoriented = false;
};

}  // namespace lbstats
