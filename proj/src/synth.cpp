// Copyright 2026 The lbstats Authors.
// SPDX-License-Identifier: Apache-2.0

#include "lbstats/synth.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "lbstats/bootstrap.hpp"
#include "lbstats/inference.hpp"
#include "lbstats/metrics.hpp"
#include "lbstats/rng.hpp"

namespace lbstats {

namespace {

enum Purpose : std::uint64_t {
  kGoldStream = 1,
  kSystemStream = 2,
  kTrialData = 3,
  kTrialBootstrap = 4,
  kSearch = 5,
};

std::vector<double> normalized(std::vector<double> weights) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  for (auto& w : weights) w /= total;
  return weights;
}

std::vector<double> gold_distribution(const SynthConfig& config) {
  if (config.label_weights.empty()) {
    return std::vector<double>(config.labels.size(), 1.0 / static_cast<double>(config.labels.size()));
  }
  return normalized(config.label_weights);
}

/// Row-normalized kernel, uniform over the other labels when unspecified.
std::vector<std::vector<double>> kernel_of(const SystemModel& model, std::size_t labels) {
  if (!model.kernel.empty()) {
    std::vector<std::vector<double>> out;
    for (const auto& row : model.kernel) out.push_back(normalized(row));
    return out;
  }
  std::vector<std::vector<double>> out(labels, std::vector<double>(labels, 0.0));
  for (std::size_t g = 0; g < labels; ++g) {
    if (labels == 1) {
      out[g][g] = 1.0;
      continue;
    }
    for (std::size_t p = 0; p < labels; ++p) {
      if (p != g) out[g][p] = 1.0 / static_cast<double>(labels - 1);
    }
  }
  return out;
}

std::size_t draw(PhiloxStream& stream, std::span<const double> cumulative) {
  const double u = stream.uniform01();
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()),
                               cumulative.size() - 1);
}

std::vector<double> cumulative_of(std::span<const double> probabilities) {
  std::vector<double> out(probabilities.size());
  std::partial_sum(probabilities.begin(), probabilities.end(), out.begin());
  return out;
}

double parse_label_value(const std::string& label) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(label.data(), label.data() + label.size(), value);
  if (ec != std::errc() || ptr != label.data() + label.size()) {
    throw std::invalid_argument("regression label '" + label + "' is not a number");
  }
  return value;
}

bool valid_weights(std::span<const double> weights) {
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) return false;
    total += w;
  }
  return total > 0.0;
}

}  // namespace

void check(const SynthConfig& config) {
  if (config.n == 0) throw std::invalid_argument("synthetic test size must be at least 1");
  if (config.labels.empty()) throw std::invalid_argument("synthetic config has no labels");
  const std::size_t labels = config.labels.size();
  if (!config.label_weights.empty()) {
    if (config.label_weights.size() != labels || !valid_weights(config.label_weights)) {
      throw std::invalid_argument("label weights must be one non-negative weight per label");
    }
  }
  if (config.task_kind == TaskKind::regression) {
    for (const auto& label : config.labels) parse_label_value(label);
  }
  for (const auto& system : config.systems) {
    if (!(system.corruption >= 0.0 && system.corruption <= 1.0)) {
      throw std::invalid_argument("corruption probability of '" + system.name +
                                  "' outside [0, 1]");
    }
    if (!system.kernel.empty()) {
      if (system.kernel.size() != labels) {
        throw std::invalid_argument("kernel of '" + system.name + "' needs one row per label");
      }
      for (const auto& row : system.kernel) {
        if (row.size() != labels || !valid_weights(row)) {
          throw std::invalid_argument("kernel row of '" + system.name + "' is not a distribution");
        }
      }
    }
  }
}

PredictionTable generate(const SynthConfig& config) {
  check(config);
  const std::size_t labels = config.labels.size();
  const auto gold_cdf = cumulative_of(gold_distribution(config));

  std::vector<std::size_t> gold(config.n);
  {
    PhiloxStream stream(derive_seed(config.seed, kGoldStream, 0), 0);
    for (auto& g : gold) g = draw(stream, gold_cdf);
  }

  RawTable raw;
  raw.task_kind = config.task_kind;
  raw.gold.name = "y";
  for (std::size_t g : gold) raw.gold.cells.emplace_back(config.labels[g]);

  for (std::size_t s = 0; s < config.systems.size(); ++s) {
    const auto& model = config.systems[s];
    std::vector<std::vector<double>> kernel_cdf;
    for (const auto& row : kernel_of(model, labels)) kernel_cdf.push_back(cumulative_of(row));
    PhiloxStream stream(derive_seed(config.seed, kSystemStream, s), 0);
    RawColumn column{model.name, {}};
    column.cells.reserve(config.n);
    for (std::size_t g : gold) {
      std::size_t pred = g;
      if (stream.uniform01() < model.corruption) pred = draw(stream, kernel_cdf[g]);
      column.cells.emplace_back(config.labels[pred]);
    }
    raw.systems.push_back(std::move(column));
  }
  return PredictionTable::from_raw(raw);
}

double population_score(const SynthConfig& config, std::size_t system, const ScoreSpec& spec) {
  check(config);
  const std::size_t labels = config.labels.size();
  const auto prior = gold_distribution(config);
  const auto& model = config.systems.at(system);
  const auto kernel = kernel_of(model, labels);

  // joint[g][p] = P(gold = g, pred = p)
  std::vector<std::vector<double>> joint(labels, std::vector<double>(labels, 0.0));
  for (std::size_t g = 0; g < labels; ++g) {
    for (std::size_t p = 0; p < labels; ++p) {
      joint[g][p] = prior[g] * ((g == p ? 1.0 - model.corruption : 0.0) +
                                model.corruption * kernel[g][p]);
    }
  }

  auto code_of = [&](const std::string& label) {
    const auto it = std::find(config.labels.begin(), config.labels.end(), label);
    if (it == config.labels.end()) {
      throw std::invalid_argument("class '" + label + "' is not a synthetic label");
    }
    return static_cast<std::size_t>(it - config.labels.begin());
  };

  switch (spec.metric) {
    case MetricKind::accuracy: {
      double total = 0.0;
      for (std::size_t g = 0; g < labels; ++g) total += joint[g][g];
      return total;
    }
    case MetricKind::f1_of_class:
    case MetricKind::macro_f1: {
      if (spec.classes.empty()) throw std::invalid_argument("F1 class subset is empty");
      double total = 0.0;
      std::size_t terms = 0;
      for (const auto& label : spec.classes) {
        const std::size_t c = code_of(label);
        double predicted = 0.0;
        for (std::size_t g = 0; g < labels; ++g) predicted += joint[g][c];
        const double denominator = prior[c] + predicted;
        if (denominator > 0.0) {
          total += 2.0 * joint[c][c] / denominator;
          ++terms;
        } else if (spec.zero_division == ZeroDivision::zero) {
          ++terms;
        }
      }
      return terms == 0 ? 0.0 : total / static_cast<double>(terms);
    }
    case MetricKind::mae: {
      std::vector<double> values;
      for (const auto& label : config.labels) values.push_back(parse_label_value(label));
      double total = 0.0;
      for (std::size_t g = 0; g < labels; ++g) {
        for (std::size_t p = 0; p < labels; ++p) total += joint[g][p] * std::abs(values[g] - values[p]);
      }
      return total;
    }
    case MetricKind::custom:
      break;
  }
  throw std::invalid_argument("custom metrics have no closed-form population score");
}

double ks_uniform(std::span<const double> sample) {
  if (sample.empty()) throw std::invalid_argument("KS distance of an empty sample");
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  double distance = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double x = std::clamp(sorted[i], 0.0, 1.0);
    distance = std::max(distance, static_cast<double>(i + 1) / n - x);
    distance = std::max(distance, x - static_cast<double>(i) / n);
  }
  return distance;
}

CalibrationSummary calibrate(const SynthConfig& config, const ScoreSpec& spec,
                             const BootstrapPlan& plan, std::size_t trials,
                             const CalibrationOptions& options) {
  check(config);
  plan.check();
  if (trials < 1) throw std::invalid_argument("calibration needs at least one trial");
  if (options.coverage_system >= config.systems.size()) {
    throw std::invalid_argument("coverage system index out of range");
  }
  auto null_pair = options.null_pair;
  if (!null_pair && config.systems.size() >= 2) null_pair = std::make_pair(0, 1);
  if (null_pair && (null_pair->first >= config.systems.size() ||
                    null_pair->second >= config.systems.size())) {
    throw std::invalid_argument("null pair index out of range");
  }

  CalibrationSummary summary;
  summary.trials = trials;
  summary.population_score = population_score(config, options.coverage_system, spec);

  std::vector<char> covered(trials, 0);
  std::vector<double> p_values(trials, 0.0);
  parallel_blocks(trials, resolve_workers(options.workers), [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      SynthConfig trial_config = config;
      trial_config.seed = derive_seed(config.seed, kTrialData, t);
      const PredictionTable table = generate(trial_config);
      BootstrapPlan trial_plan = plan;
      trial_plan.seed = derive_seed(plan.seed, kTrialBootstrap, t);
      const auto dists = distributions(table, spec, trial_plan, EngineOptions{1, nullptr});
      const Interval interval = percentile_ci(dists[options.coverage_system], plan.confidence);
      covered[t] = interval.lci <= summary.population_score &&
                   summary.population_score <= interval.uci;
      if (null_pair) {
        const auto pd = paired_difference(dists[null_pair->first], dists[null_pair->second],
                                          "a", "b", spec.direction, Orientation::as_given);
        p_values[t] = p_value(pd);
      }
    }
  });

  summary.covered = static_cast<std::size_t>(std::count(covered.begin(), covered.end(), 1));
  summary.coverage = static_cast<double>(summary.covered) / static_cast<double>(trials);
  if (null_pair) {
    summary.null_p_values = p_values;
    summary.ks_distance = ks_uniform(p_values);
    summary.p_histogram.assign(10, 0);
    for (double p : p_values) {
      ++summary.p_histogram[std::min<std::size_t>(static_cast<std::size_t>(p * 10.0), 9)];
    }
  }
  return summary;
}

// ---------------------------------------------------------------------------

namespace {

double score_from_confusion(const std::vector<std::vector<std::int64_t>>& confusion,
                            const std::vector<std::int64_t>& gold_totals,
                            const std::vector<std::int64_t>& pred_totals,
                            std::span<const std::size_t> classes, const ScoreSpec& spec,
                            std::int64_t n) {
  if (spec.metric == MetricKind::accuracy) {
    std::int64_t correct = 0;
    for (std::size_t c = 0; c < confusion.size(); ++c) correct += confusion[c][c];
    return static_cast<double>(correct) / static_cast<double>(n);
  }
  double total = 0.0;
  std::size_t terms = 0;
  for (std::size_t c : classes) {
    const ClassCounts counts{confusion[c][c], pred_totals[c] - confusion[c][c],
                             gold_totals[c] - confusion[c][c]};
    if (const auto value = f1(counts)) {
      total += *value;
      ++terms;
    } else if (spec.zero_division == ZeroDivision::zero) {
      ++terms;
    }
  }
  return terms == 0 ? 0.0 : total / static_cast<double>(terms);
}

}  // namespace

std::vector<std::string> predictions_with_score(std::span<const std::string> gold,
                                                std::span<const std::string> labels,
                                                const ScoreSpec& spec, double target,
                                                const TargetScoreOptions& options) {
  if (gold.empty()) throw std::invalid_argument("empty gold vector");
  if (labels.size() < 2) throw std::invalid_argument("need at least two labels");
  if (spec.metric != MetricKind::accuracy && spec.metric != MetricKind::f1_of_class &&
      spec.metric != MetricKind::macro_f1) {
    throw std::invalid_argument("targeted predictions support accuracy and F1 metrics");
  }
  auto code_of = [&](const std::string& label) {
    const auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) throw std::invalid_argument("label '" + label + "' not in label list");
    return static_cast<std::size_t>(it - labels.begin());
  };
  const std::size_t n = gold.size();
  const std::size_t k = labels.size();
  std::vector<std::size_t> g(n), cur(n), anchor;
  for (std::size_t i = 0; i < n; ++i) g[i] = code_of(gold[i]);
  std::vector<std::size_t> classes;
  for (const auto& label : spec.classes) classes.push_back(code_of(label));
  if (spec.metric != MetricKind::accuracy && classes.empty()) {
    throw std::invalid_argument("F1 class subset is empty");
  }

  if (options.anchor) {
    if (options.anchor->size() != n) throw std::invalid_argument("anchor length mismatch");
    if (options.disagreements > n) throw std::invalid_argument("more disagreements than rows");
    for (const auto& label : *options.anchor) anchor.push_back(code_of(label));
    cur = anchor;
  } else {
    cur = g;
  }

  std::vector<std::vector<std::int64_t>> confusion(k, std::vector<std::int64_t>(k, 0));
  std::vector<std::int64_t> gold_totals(k, 0), pred_totals(k, 0);
  for (std::size_t i = 0; i < n; ++i) {
    ++confusion[g[i]][cur[i]];
    ++gold_totals[g[i]];
    ++pred_totals[cur[i]];
  }
  std::size_t disagree = 0;
  if (options.anchor) {
    for (std::size_t i = 0; i < n; ++i) disagree += cur[i] != anchor[i] ? 1 : 0;
  }
  const auto nn = static_cast<std::int64_t>(n);
  // One disagreement off target weighs as much as one row's share of score.
  const double disagreement_weight = 1.0 / static_cast<double>(n);
  auto objective = [&](double score, std::size_t dis) {
    double value = std::abs(score - target);
    if (options.anchor) {
      value += disagreement_weight *
               std::abs(static_cast<double>(dis) - static_cast<double>(options.disagreements));
    }
    return value;
  };
  auto done = [&](double score, std::size_t dis) {
    return std::abs(score - target) <= options.tolerance &&
           (!options.anchor || dis == options.disagreements);
  };

  auto set_row = [&](std::size_t i, std::size_t to, std::size_t& dis) {
    const std::size_t from = cur[i];
    --confusion[g[i]][from];
    ++confusion[g[i]][to];
    --pred_totals[from];
    ++pred_totals[to];
    if (options.anchor) dis = dis - (from != anchor[i] ? 1 : 0) + (to != anchor[i] ? 1 : 0);
    cur[i] = to;
  };

  double score = score_from_confusion(confusion, gold_totals, pred_totals, classes, spec, nn);
  double current = objective(score, disagree);
  PhiloxStream stream(derive_seed(options.seed, kSearch, 0), 0);
  // Annealing: the temperature falls geometrically from a few rows' worth of
  // score to well below the tolerance, then restarts.
  const double hot = 4.0 / static_cast<double>(n);
  const double cold = options.tolerance / 10.0;
  const std::size_t cycle = std::max<std::size_t>(20'000, 100 * n);
  struct Change {
    std::size_t row, before;
  };
  for (std::size_t step = 0; step < options.max_steps && !done(score, disagree); ++step) {
    const double phase = static_cast<double>(step % cycle) / static_cast<double>(cycle);
    const double temperature = hot * std::pow(cold / hot, phase);
    Change changes[2];
    const std::size_t moves = stream.uniform01() < 0.5 ? 1 : 2;
    std::size_t dis = disagree;
    for (std::size_t m = 0; m < moves; ++m) {
      const std::size_t i = stream.uniform_below(static_cast<std::uint32_t>(n));
      std::size_t next = stream.uniform_below(static_cast<std::uint32_t>(k - 1));
      if (next >= cur[i]) ++next;
      changes[m] = {i, cur[i]};
      set_row(i, next, dis);
    }
    const double candidate_score =
        score_from_confusion(confusion, gold_totals, pred_totals, classes, spec, nn);
    const double candidate = objective(candidate_score, dis);
    const bool accept = candidate <= current ||
                        stream.uniform01() < std::exp(-(candidate - current) / temperature);
    if (accept) {
      score = candidate_score;
      current = candidate;
      disagree = dis;
    } else {
      for (std::size_t m = moves; m-- > 0;) set_row(changes[m].row, changes[m].before, dis);
    }
  }
  if (!done(score, disagree)) {
    throw std::runtime_error("targeted prediction search did not converge (score " +
                             std::to_string(score) + ", target " + std::to_string(target) + ")");
  }
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t c : cur) out.push_back(labels[c]);
  return out;
}

}  // namespace lbstats
