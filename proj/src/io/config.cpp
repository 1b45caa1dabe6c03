// Copyright 2026 The lbstats Authors.
// SPDX-License-Identifier: Apache-2.0

#include "lbstats/io/config.hpp"

#include <fstream>
#include <sstream>

#include "lbstats/io/custom_metric.hpp"

namespace lbstats::io {

using nlohmann::json;

std::string_view to_string(OutputFormat format) {
  switch (format) {
    case OutputFormat::json: return "json";
    case OutputFormat::md: return "md";
    case OutputFormat::csv: return "csv";
    case OutputFormat::svg: return "svg";
  }
  return "unknown";
}

std::optional<OutputFormat> parse_output_format(std::string_view text) {
  if (text == "json") return OutputFormat::json;
  if (text == "md" || text == "markdown") return OutputFormat::md;
  if (text == "csv") return OutputFormat::csv;
  if (text == "svg") return OutputFormat::svg;
  return std::nullopt;
}

std::string_view to_string(TaskOverride task) {
  switch (task) {
    case TaskOverride::automatic: return "auto";
    case TaskOverride::classification: return "classification";
    case TaskOverride::regression: return "regression";
  }
  return "unknown";
}

std::optional<TaskOverride> parse_task(std::string_view text) {
  if (text == "auto") return TaskOverride::automatic;
  if (text == "classification") return TaskOverride::classification;
  if (text == "regression") return TaskOverride::regression;
  return std::nullopt;
}

namespace {

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    out.push_back(trim(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::optional<Direction> parse_direction(std::string_view text) {
  if (text == "higher" || text == "higher_better" || text == "higher-better") {
    return Direction::higher_better;
  }
  if (text == "lower" || text == "lower_better" || text == "lower-better") {
    return Direction::lower_better;
  }
  return std::nullopt;
}

template <class T>
T get_as(const json& value, std::string_view key) {
  try {
    return value.get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config key '" + std::string(key) + "' has the wrong type");
  }
}

std::vector<std::string> string_list(const json& value, std::string_view key) {
  if (value.is_string()) return split_list(value.get<std::string>());
  return get_as<std::vector<std::string>>(value, key);
}

}  // namespace

void check(const RunConfig& config) {
  if (config.input.empty()) throw ConfigError("no input file given (--input)");
  if (config.gold_column.empty()) throw ConfigError("gold column name is empty");
  if (config.plan.replicates < 2) throw ConfigError("--samples must be at least 2");
  if (!(config.plan.confidence > 0.0 && config.plan.confidence < 1.0)) {
    throw ConfigError("--confidence must lie strictly between 0 and 1");
  }
  if (!(config.plan.alpha > 0.0 && config.plan.alpha < 1.0)) {
    throw ConfigError("--alpha must lie strictly between 0 and 1");
  }
  if (config.corrections.empty()) throw ConfigError("--corrections must name at least one method");
  if (config.formats.empty()) throw ConfigError("--formats must name at least one format");
  if (config.out_dir.empty()) throw ConfigError("--out-dir is empty");
}

ScoreSpec make_score_spec(const RunConfig& config) {
  const std::string& metric = config.metric;
  ScoreSpec spec;
  if (metric == "accuracy") {
    spec = ScoreSpec::accuracy();
  } else if (metric == "mae") {
    spec = ScoreSpec::mae();
  } else if (metric.starts_with("f1:")) {
    const std::string label = trim(std::string_view(metric).substr(3));
    if (label.empty()) throw ConfigError("metric f1:<class> needs a class");
    spec = ScoreSpec::f1_of_class(label);
  } else if (metric.starts_with("macro-f1:")) {
    auto labels = split_list(std::string_view(metric).substr(9));
    for (const auto& label : labels) {
      if (label.empty()) throw ConfigError("empty class name in '" + metric + "'");
    }
    spec = ScoreSpec::macro_f1(std::move(labels));
  } else if (metric.starts_with("custom:")) {
    const std::filesystem::path path = std::string_view(metric).substr(7);
    if (path.empty()) throw ConfigError("metric custom:<path> needs a path");
    spec = ScoreSpec::custom_metric(load_custom_metric(path),
                                    config.direction.value_or(Direction::higher_better),
                                    config.capped_at_one);
  } else {
    throw ConfigError("unknown metric '" + metric +
                      "' (expected accuracy, f1:<class>, macro-f1:<c1,c2,...>, mae, "
                      "custom:<path>)");
  }
  if (config.direction && *config.direction != spec.direction) {
    if (spec.metric == MetricKind::mae) throw ConfigError("mae is always lower-better");
    spec.direction = *config.direction;
  }
  // A lower-better score has no ceiling to measure headroom against.
  if (spec.direction == Direction::lower_better) spec.capped_at_one = false;
  spec.zero_division = config.zero_division;
  return spec;
}

RunConfig run_config_from_json(const json& in, RunConfig config) {
  if (!in.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : in.items()) {
    if (key == "input") {
      config.input = get_as<std::string>(value, key);
    } else if (key == "gold_col") {
      config.gold_column = get_as<std::string>(value, key);
    } else if (key == "metric") {
      config.metric = get_as<std::string>(value, key);
    } else if (key == "direction") {
      const auto direction = parse_direction(get_as<std::string>(value, key));
      if (!direction) throw ConfigError("direction must be 'higher' or 'lower'");
      config.direction = direction;
    } else if (key == "capped_at_one") {
      config.capped_at_one = get_as<bool>(value, key);
    } else if (key == "task") {
      const auto task = parse_task(get_as<std::string>(value, key));
      if (!task) throw ConfigError("task must be auto, classification or regression");
      config.task = *task;
    } else if (key == "zero_division") {
      const auto text = get_as<std::string>(value, key);
      if (text == "zero") {
        config.zero_division = ZeroDivision::zero;
      } else if (text == "exclude") {
        config.zero_division = ZeroDivision::exclude;
      } else {
        throw ConfigError("zero_division must be 'zero' or 'exclude'");
      }
    } else if (key == "samples") {
      config.plan.replicates = get_as<std::size_t>(value, key);
    } else if (key == "seed") {
      config.plan.seed = get_as<std::uint64_t>(value, key);
    } else if (key == "alpha") {
      config.plan.alpha = get_as<double>(value, key);
    } else if (key == "confidence") {
      config.plan.confidence = get_as<double>(value, key);
    } else if (key == "workers") {
      config.plan.workers = get_as<unsigned>(value, key);
    } else if (key == "corrections") {
      config.corrections.clear();
      for (const auto& name : string_list(value, key)) {
        const auto method = parse_correction(name);
        if (!method) throw ConfigError("unknown correction '" + name + "'");
        config.corrections.push_back(*method);
      }
    } else if (key == "family") {
      const auto policy = parse_family_policy(get_as<std::string>(value, key));
      if (!policy) throw ConfigError("family must be vs-winner, per-reference or global");
      config.policy = *policy;
    } else if (key == "gold_alias") {
      config.gold_alias = get_as<std::string>(value, key);
    } else if (key == "p_rule") {
      const auto text = get_as<std::string>(value, key);
      if (text == "strict") {
        config.p_rule = PValueRule::strict;
      } else if (text == "smoothed") {
        config.p_rule = PValueRule::smoothed;
      } else {
        throw ConfigError("p_rule must be 'strict' or 'smoothed'");
      }
    } else if (key == "bins") {
      config.histogram_bins = get_as<std::size_t>(value, key);
    } else if (key == "out_dir") {
      config.out_dir = get_as<std::string>(value, key);
    } else if (key == "formats") {
      config.formats.clear();
      for (const auto& name : string_list(value, key)) {
        const auto format = parse_output_format(name);
        if (!format) throw ConfigError("unknown output format '" + name + "'");
        config.formats.insert(*format);
      }
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  return config;
}

json to_json(const RunConfig& config) {
  json out;
  out["input"] = config.input.string();
  out["gold_col"] = config.gold_column;
  out["metric"] = config.metric;
  if (config.direction) {
    out["direction"] = *config.direction == Direction::higher_better ? "higher" : "lower";
  }
  out["capped_at_one"] = config.capped_at_one;
  out["task"] = std::string(to_string(config.task));
  out["zero_division"] = config.zero_division == ZeroDivision::zero ? "zero" : "exclude";
  out["samples"] = config.plan.replicates;
  out["seed"] = config.plan.seed;
  out["alpha"] = config.plan.alpha;
  out["confidence"] = config.plan.confidence;
  out["workers"] = config.plan.workers;
  json corrections = json::array();
  for (auto method : config.corrections) corrections.push_back(std::string(to_string(method)));
  out["corrections"] = corrections;
  out["family"] = std::string(to_string(config.policy));
  out["gold_alias"] = config.gold_alias;
  out["p_rule"] = config.p_rule == PValueRule::strict ? "strict" : "smoothed";
  out["bins"] = config.histogram_bins;
  out["out_dir"] = config.out_dir.string();
  json formats = json::array();
  for (auto format : config.formats) formats.push_back(std::string(to_string(format)));
  out["formats"] = formats;
  return out;
}

SynthConfig synth_config_from_json(const json& in) {
  if (!in.is_object()) throw ConfigError("synthetic config must be a JSON object");
  SynthConfig config;
  for (const auto& [key, value] : in.items()) {
    if (key == "n") {
      config.n = get_as<std::size_t>(value, key);
    } else if (key == "task") {
      const auto text = get_as<std::string>(value, key);
      if (text == "classification") {
        config.task_kind = TaskKind::classification;
      } else if (text == "regression") {
        config.task_kind = TaskKind::regression;
      } else {
        throw ConfigError("task must be classification or regression");
      }
    } else if (key == "labels") {
      config.labels = get_as<std::vector<std::string>>(value, key);
    } else if (key == "label_weights") {
      config.label_weights = get_as<std::vector<double>>(value, key);
    } else if (key == "seed") {
      config.seed = get_as<std::uint64_t>(value, key);
    } else if (key == "systems") {
      if (!value.is_array()) throw ConfigError("'systems' must be an array");
      for (const auto& item : value) {
        if (!item.is_object()) throw ConfigError("each system must be an object");
        SystemModel model;
        for (const auto& [field, v] : item.items()) {
          if (field == "name") {
            model.name = get_as<std::string>(v, field);
          } else if (field == "corruption") {
            model.corruption = get_as<double>(v, field);
          } else if (field == "kernel") {
            model.kernel = get_as<std::vector<std::vector<double>>>(v, field);
          } else {
            throw ConfigError("unknown system key '" + field + "'");
          }
        }
        config.systems.push_back(std::move(model));
      }
    } else {
      throw ConfigError("unknown synthetic config key '" + key + "'");
    }
  }
  try {
    check(config);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return config;
}

json to_json(const SynthConfig& config) {
  json out;
  out["n"] = config.n;
  out["task"] = std::string(to_string(config.task_kind));
  out["labels"] = config.labels;
  if (!config.label_weights.empty()) out["label_weights"] = config.label_weights;
  out["seed"] = config.seed;
  json systems = json::array();
  for (const auto& model : config.systems) {
    json item{{"name", model.name}, {"corruption", model.corruption}};
    if (!model.kernel.empty()) item["kernel"] = model.kernel;
    systems.push_back(item);
  }
  out["systems"] = systems;
  return out;
}

json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

}  // namespace lbstats::io
