// Copyright 2026 The lbstats Authors.
// SPDX-License-Identifier: Apache-2.0

#include "lbstats/metrics.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string_view>

#include "lbstats/kernels.hpp"

namespace lbstats {

ConfusionCounts confusion_counts(std::span<const std::int32_t> gold,
                                 std::span<const std::int32_t> pred, std::size_t label_count) {
  if (gold.size() != pred.size()) throw std::invalid_argument("gold/pred length mismatch");
  ConfusionCounts counts;
  counts.per_label.resize(label_count);
  counts.total = static_cast<std::int64_t>(gold.size());
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const auto g = static_cast<std::size_t>(gold[i]);
    const auto p = static_cast<std::size_t>(pred[i]);
    if (g >= label_count || p >= label_count) throw std::out_of_range("label code out of range");
    if (g == p) {
      ++counts.per_label[g].tp;
      ++counts.correct;
    } else {
      ++counts.per_label[p].fp;
      ++counts.per_label[g].fn;
    }
  }
  return counts;
}

std::optional<double> f1(const ClassCounts& counts) {
  const std::int64_t denominator = 2 * counts.tp + counts.fp + counts.fn;
  if (denominator == 0) return std::nullopt;
  return 2.0 * static_cast<double>(counts.tp) / static_cast<double>(denominator);
}

double subset_macro_f1(const ConfusionCounts& counts, std::span<const std::int32_t> classes,
                       ZeroDivision zero_division) {
  if (classes.empty()) throw std::invalid_argument("F1 class subset is empty");
  double total = 0.0;
  std::size_t terms = 0;
  for (std::int32_t code : classes) {
    const auto value = f1(counts.per_label.at(static_cast<std::size_t>(code)));
    if (value) {
      total += *value;
      ++terms;
    } else if (zero_division == ZeroDivision::zero) {
      ++terms;
    }
  }
  return terms == 0 ? 0.0 : total / static_cast<double>(terms);
}

// ---------------------------------------------------------------------------

TableScorer::TableScorer(const PredictionTable& table, const ScoreSpec& spec)
    : table_(&table), spec_(spec) {
  require_compatible(spec, table);
  const std::size_t n = table.size();
  identity_indices_.resize(n);
  std::iota(identity_indices_.begin(), identity_indices_.end(), 0u);
  unit_weights_.assign(n, 1);

  if (spec.metric == MetricKind::custom) return;

  if (table.task_kind() == TaskKind::regression) {
    const auto gold = table.gold_values();
    for (std::size_t s = 0; s < table.system_count(); ++s) {
      const auto pred = table.values(s);
      std::vector<double> err(n);
      for (std::size_t i = 0; i < n; ++i) err[i] = std::abs(gold[i] - pred[i]);
      abs_error_.push_back(std::move(err));
    }
    return;
  }

  for (const auto& label : spec.classes) class_codes_.push_back(*table.label_code(label));
  const auto gold = table.gold_codes();
  for (std::size_t s = 0; s < table.system_count(); ++s) {
    const auto pred = table.codes(s);
    std::vector<std::int32_t> hit(n), correct(n);
    for (std::size_t i = 0; i < n; ++i) {
      const bool ok = pred[i] == gold[i];
      hit[i] = ok ? pred[i] : -1;
      correct[i] = ok ? 1 : 0;
    }
    hit_codes_.push_back(std::move(hit));
    correct_.push_back(std::move(correct));
  }
}

TableScorer::GoldCounts TableScorer::gold_counts(const Resample& resample) const {
  GoldCounts out;
  out.per_class.reserve(class_codes_.size());
  for (std::int32_t code : class_codes_) {
    out.per_class.push_back(
        kernels::weighted_count_eq(resample.weights, table_->gold_codes(), code));
  }
  return out;
}

double TableScorer::score_with(std::size_t system, const Resample& resample,
                               const GoldCounts& gold) const {
  const auto total = static_cast<double>(resample.indices.size());
  switch (spec_.metric) {
    case MetricKind::accuracy:
      return static_cast<double>(kernels::weighted_count_eq(resample.weights, correct_[system], 1)) /
             total;
    case MetricKind::mae:
      return kernels::weighted_sum(resample.weights, abs_error_[system]) / total;
    case MetricKind::f1_of_class:
    case MetricKind::macro_f1: {
      const auto pred = table_->codes(system);
      double sum = 0.0;
      std::size_t terms = 0;
      for (std::size_t k = 0; k < class_codes_.size(); ++k) {
        const std::int32_t code = class_codes_[k];
        ClassCounts counts;
        counts.tp = kernels::weighted_count_eq(resample.weights, hit_codes_[system], code);
        counts.fp = kernels::weighted_count_eq(resample.weights, pred, code) - counts.tp;
        counts.fn = gold.per_class[k] - counts.tp;
        if (const auto value = f1(counts)) {
          sum += *value;
          ++terms;
        } else if (spec_.zero_division == ZeroDivision::zero) {
          ++terms;
        }
      }
      return terms == 0 ? 0.0 : sum / static_cast<double>(terms);
    }
    case MetricKind::custom:
      return score_custom(system, resample);
  }
  return 0.0;
}

double TableScorer::score_custom(std::size_t system, const Resample& resample) const {
  const auto& metric = *spec_.custom;
  const std::size_t m = resample.indices.size();
  if (table_->task_kind() == TaskKind::classification) {
    const auto& labels = table_->label_set();
    const auto gold = table_->gold_codes();
    const auto pred = table_->codes(system);
    std::vector<std::string_view> g(m), p(m);
    for (std::size_t i = 0; i < m; ++i) {
      g[i] = labels[static_cast<std::size_t>(gold[resample.indices[i]])];
      p[i] = labels[static_cast<std::size_t>(pred[resample.indices[i]])];
    }
    return metric.score_labels(g, p);
  }
  const auto gold = table_->gold_values();
  const auto pred = table_->values(system);
  std::vector<double> g(m), p(m);
  for (std::size_t i = 0; i < m; ++i) {
    g[i] = gold[resample.indices[i]];
    p[i] = pred[resample.indices[i]];
  }
  return metric.score_values(g, p);
}

double TableScorer::observed(std::size_t system) const {
  return score(system, Resample{identity_indices_, unit_weights_});
}

double TableScorer::score(std::size_t system, const Resample& resample) const {
  if (system >= table_->system_count()) throw std::out_of_range("system index out of range");
  return score_with(system, resample, gold_counts(resample));
}

void TableScorer::score_all(const Resample& resample, std::span<double> out) const {
  const GoldCounts gold = gold_counts(resample);
  for (std::size_t s = 0; s < table_->system_count(); ++s) out[s] = score_with(s, resample, gold);
}

// ---------------------------------------------------------------------------

double score(const PredictionTable& table, std::size_t system, const ScoreSpec& spec) {
  return TableScorer(table, spec).observed(system);
}

double score_on_indices(const PredictionTable& table, std::size_t system, const ScoreSpec& spec,
                        std::span<const std::uint32_t> indices) {
  if (indices.empty()) throw std::invalid_argument("empty resample");
  std::vector<std::int32_t> weights(table.size(), 0);
  for (std::uint32_t index : indices) {
    if (index >= table.size()) {
      throw std::out_of_range("resample index " + std::to_string(index) + " >= n = " +
                              std::to_string(table.size()));
    }
  }
  kernels::accumulate_multiplicities(indices, weights);
  return TableScorer(table, spec).score(system, Resample{indices, weights});
}

namespace {

PredictionTable pair_table(std::span<const std::string> gold, std::span<const std::string> pred) {
  if (gold.empty()) throw std::invalid_argument("empty outcome vectors");
  if (gold.size() != pred.size()) throw std::invalid_argument("gold/pred length mismatch");
  return PredictionTable::classification({gold.begin(), gold.end()},
                                         {{"pred", {pred.begin(), pred.end()}}});
}

PredictionTable pair_table(std::span<const double> gold, std::span<const double> pred) {
  if (gold.empty()) throw std::invalid_argument("empty outcome vectors");
  if (gold.size() != pred.size()) throw std::invalid_argument("gold/pred length mismatch");
  return PredictionTable::regression({gold.begin(), gold.end()},
                                     {{"pred", {pred.begin(), pred.end()}}});
}

}  // namespace

double score(std::span<const std::string> gold, std::span<const std::string> pred,
             const ScoreSpec& spec) {
  return score(pair_table(gold, pred), 0, spec);
}

double score(std::span<const double> gold, std::span<const double> pred, const ScoreSpec& spec) {
  return score(pair_table(gold, pred), 0, spec);
}

double score_on_indices(std::span<const std::string> gold, std::span<const std::string> pred,
                        const ScoreSpec& spec, std::span<const std::uint32_t> indices) {
  return score_on_indices(pair_table(gold, pred), 0, spec, indices);
}

double score_on_indices(std::span<const double> gold, std::span<const double> pred,
                        const ScoreSpec& spec, std::span<const std::uint32_t> indices) {
  return score_on_indices(pair_table(gold, pred), 0, spec, indices);
}

}  // namespace lbstats
