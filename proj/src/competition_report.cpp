// Copyright 2026 The lbstats Authors.
// SPDX-License-Identifier: Apache-2.0

#include "lbstats/competition_report.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "lbstats/metrics.hpp"

namespace lbstats {

double cv(std::span<const double> scores) {
  const std::size_t m = scores.size();
  if (m < 2) throw std::invalid_argument("coefficient of variation needs at least 2 scores");
  const double mean = std::accumulate(scores.begin(), scores.end(), 0.0) / static_cast<double>(m);
  if (mean == 0.0) throw std::invalid_argument("coefficient of variation of a zero-mean sample");
  double squares = 0.0;
  for (double s : scores) squares += (s - mean) * (s - mean);
  const double sd = std::sqrt(squares / static_cast<double>(m - 1));
  return 100.0 * sd / mean;
}

std::optional<double> ppi(double winner_score, const ScoreSpec& spec) {
  if (!spec.capped_at_one || spec.direction != Direction::higher_better) return std::nullopt;
  return 100.0 * (1.0 - winner_score);
}

double win_med_gap(std::span<const double> ranked_scores) {
  const std::size_t m = ranked_scores.size();
  if (m < 2) throw std::invalid_argument("|win - med| needs at least 2 scores");
  return std::abs(ranked_scores[0] - ranked_scores[m / 2]);
}

TieCounts tie_counts(const AdjustedPValues& adjusted, const std::string& winner, double alpha) {
  TieCounts out;
  for (const auto& [method, values] : adjusted) {
    std::size_t with_winner = 0;
    std::size_t all = 0;
    for (const auto& [pair, p] : values) {
      if (p < alpha) continue;
      ++all;
      if (pair.reference == winner || pair.competitor == winner) ++with_winner;
    }
    out.with_winner[method] = with_winner;
    out.all_pairs[method] = all;
  }
  return out;
}

Analysis analyze(const PredictionTable& table, const ScoreSpec& spec, const BootstrapPlan& plan,
                 const AnalysisOptions& options) {
  plan.check();
  if (plan.replicates < 2) {
    throw std::invalid_argument("intervals need at least 2 bootstrap replicates");
  }
  if (options.corrections.empty()) throw std::invalid_argument("no correction methods requested");

  CompetitionReport report;
  report.n = table.size();
  report.alpha = plan.alpha;
  report.metric = spec.describe();
  report.direction = spec.direction;
  report.policy = options.policy;
  report.seed = plan.seed;
  report.replicates = plan.replicates;
  report.confidence = plan.confidence;

  // Gold-standard pseudo-competitor: excluded by name, and only when perfect.
  std::vector<std::size_t> kept;
  {
    const TableScorer scorer(table, spec);
    const auto ideal = ideal_value(spec);
    for (std::size_t s = 0; s < table.system_count(); ++s) {
      const auto& name = table.system_name(s);
      if (!options.gold_alias.empty() && name == options.gold_alias) {
        if (ideal && scorer.observed(s) == *ideal) {
          report.excluded.push_back(name);
          continue;
        }
        report.notes.push_back("system '" + name +
                               "' matches the gold-standard alias but is not a perfect "
                               "predictor; kept as a competitor");
      }
      kept.push_back(s);
    }
  }
  if (kept.size() < 2) {
    throw ValidationError("fewer than 2 competitors after excluding the gold standard (have " +
                          std::to_string(kept.size()) + ")");
  }

  const PredictionTable competitors = table.select(kept);
  const auto dists = distributions(competitors, spec, plan, options.engine);
  const auto& names = competitors.system_names();

  std::vector<double> observed;
  for (const auto& d : dists) observed.push_back(d.observed);
  const auto order = rank_systems(observed, spec.direction);

  Analysis out;
  const std::size_t m = order.size();
  for (std::size_t index : order) out.ranked.push_back(names[index]);

  for (std::size_t i = 0; i < m;) {
    std::size_t j = i + 1;
    while (j < m && observed[order[j]] == observed[order[i]]) ++j;
    if (j - i > 1) {
      std::vector<std::string> group;
      for (std::size_t k = i; k < j; ++k) group.push_back(names[order[k]]);
      report.ranking_ties.push_back(std::move(group));
    }
    i = j;
  }

  for (std::size_t index : order) {
    const Interval interval = percentile_ci(dists[index], plan.confidence);
    PerformanceSummary summary;
    summary.system = names[index];
    summary.observed = dists[index].observed;
    summary.boot_mean = interval.mean;
    summary.lci = interval.lci;
    summary.uci = interval.uci;
    if (options.keep_samples) summary.boot_samples = dists[index].values;
    out.performance.push_back(std::move(summary));
  }

  // Every ranked pair, best-first, so observed deltas are never negative.
  std::map<PairId, double> raw;
  std::map<PairId, std::size_t> pair_slot;
  out.matrix.order = out.ranked;
  out.matrix.rows.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      auto pd = paired_difference(dists[order[i]], dists[order[j]], names[order[i]],
                                  names[order[j]], spec.direction, Orientation::as_given);
      const DifferenceInterval interval = difference_ci(pd, plan.confidence);
      DifferenceSummary summary;
      summary.reference = pd.reference;
      summary.competitor = pd.competitor;
      summary.observed_delta = pd.observed_delta;
      summary.boot_mean = interval.mean;
      summary.lci = interval.lci;
      summary.uci = interval.uci;
      summary.contains_zero = interval.contains_zero;
      summary.p_value = p_value(pd, options.p_rule);
      raw[{summary.reference, summary.competitor}] = summary.p_value;
      pair_slot[{summary.reference, summary.competitor}] = out.pairs.size();
      out.pairs.push_back(summary);
      if (i == 0) out.winner_deltas.push_back(std::move(pd));
    }
  }

  out.families = build_families(out.ranked, raw, options.policy);
  for (CorrectionMethod method : options.corrections) {
    auto& target = out.adjusted[method];
    for (const auto& family : out.families) {
      for (auto& [pair, p] : adjust(family, method)) target[pair] = p;
    }
    for (const auto& [pair, p] : target) out.pairs[pair_slot.at(pair)].adjusted_p[method] = p;
  }

  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const auto& pair = out.pairs[pair_slot.at({out.ranked[j], out.ranked[i]})];
      out.matrix.rows[i].push_back(
          {pair.observed_delta, pair.p_value, significance_stars(pair.p_value)});
    }
  }
  for (const auto& pair : out.pairs) {
    if (pair.reference == out.ranked.front()) out.vs_winner.push_back(pair);
  }

  std::vector<double> ranked_scores;
  for (const auto& summary : out.performance) ranked_scores.push_back(summary.observed);
  report.m = m;
  report.possible_comparisons = m * (m - 1) / 2;
  report.winner = out.ranked.front();
  const TieCounts ties = tie_counts(out.adjusted, report.winner, plan.alpha);
  report.ties_with_winner = ties.with_winner;
  report.ties_all_pairs = ties.all_pairs;
  report.win_med_gap = win_med_gap(ranked_scores);
  const double mean =
      std::accumulate(ranked_scores.begin(), ranked_scores.end(), 0.0) / static_cast<double>(m);
  if (mean != 0.0) {
    report.cv = cv(ranked_scores);
  } else {
    report.notes.push_back("CV undefined: mean competitor score is zero");
  }
  report.cv_comparable = spec.capped_at_one || spec.direction == Direction::higher_better;
  if (!report.cv_comparable) {
    report.notes.push_back("CV of an unbounded lower-better metric; not comparable across metrics");
  }
  report.ppi = ppi(ranked_scores.front(), spec);
  if (!report.ranking_ties.empty()) {
    report.notes.push_back("equal observed scores ranked by input column order");
  }
  out.report = std::move(report);
  return out;
}

}  // namespace lbstats
