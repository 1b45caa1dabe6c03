// Copyright 2026 The lbstats Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lbstats/competition_report.hpp"
#include "lbstats/data_model.hpp"
#include "lbstats/io/csv.hpp"
#include "lbstats/synth.hpp"

namespace lbstats::io {

enum class OutputFormat { json, md, csv, svg };

std::string_view to_string(OutputFormat format);
std::optional<OutputFormat> parse_output_format(std::string_view text);
std::string_view to_string(TaskOverride task);
std::optional<TaskOverride> parse_task(std::string_view text);

/// Everything a pipeline run needs. Field names mirror the CLI flags and the
/// JSON config keys (dashes become underscores in JSON).
struct RunConfig {
  std::filesystem::path input;
  std::string gold_column = "y";
  std::string metric = "accuracy";  // accuracy | f1:<c> | macro-f1:<c1,...> | mae | custom:<path>
  std::optional<Direction> direction;  // default follows the metric
  bool capped_at_one = true;           // custom metrics only
  TaskOverride task = TaskOverride::automatic;
  ZeroDivision zero_division = ZeroDivision::zero;
  BootstrapPlan plan;
  std::vector<CorrectionMethod> corrections = {CorrectionMethod::none,
                                               CorrectionMethod::bonferroni,
                                               CorrectionMethod::holm, CorrectionMethod::bh};
  FamilyPolicy policy = FamilyPolicy::per_reference;
  std::string gold_alias = "Gold_Standard";
  PValueRule p_rule = PValueRule::strict;
  std::size_t histogram_bins = 0;  // 0 = square-root rule
  std::filesystem::path out_dir = "lbstats-out";
  std::set<OutputFormat> formats = {OutputFormat::json, OutputFormat::md, OutputFormat::csv,
                                    OutputFormat::svg};
};

/// Throws ConfigError naming the offending field.
void check(const RunConfig& config);

/// Builds the ScoreSpec for the metric string. custom:<path> loads a plugin.
/// Throws ConfigError on an unknown or malformed metric.
ScoreSpec make_score_spec(const RunConfig& config);

/// Reads keys present in `json` over `base`. Throws ConfigError on unknown
/// keys or wrongly typed values.
RunConfig run_config_from_json(const nlohmann::json& json, RunConfig base = {});
nlohmann::json to_json(const RunConfig& config);

/// Synthetic-competition config: {"n", "task", "labels", "label_weights",
/// "seed", "systems": [{"name", "corruption", "kernel"}]}.
SynthConfig synth_config_from_json(const nlohmann::json& json);
nlohmann::json to_json(const SynthConfig& config);

/// Throws IoError if unreadable, ConfigError if not valid JSON.
nlohmann::json load_json_file(const std::filesystem::path& path);

}  // namespace lbstats::io
