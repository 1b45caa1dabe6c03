// Copyright 2026 The lbstats Authors.
// SPDX-License-Identifier: Apache-2.0

#include "lbstats/io/pipeline.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <system_error>

#include "lbstats/bootstrap.hpp"
#include "lbstats/io/csv.hpp"
#include "lbstats/io/svg.hpp"
#include "lbstats/io/tables.hpp"
#include "lbstats/rng.hpp"

namespace lbstats::io {

using nlohmann::json;

int exit_code_for(const std::exception_ptr& error) {
  try {
    std::rethrow_exception(error);
  } catch (const ValidationError&) {
    return kExitValidation;
  } catch (const IoError&) {
    return kExitIo;
  } catch (const ConfigError&) {
    return kExitConfig;
  } catch (...) {
    return kExitConfig;
  }
}

namespace {

template <class Fn>
auto stage(const char* name, Fn&& fn) -> decltype(fn()) {
  const std::string prefix = std::string(name) + ": ";
  try {
    return fn();
  } catch (const ValidationError& e) {
    throw ValidationError(prefix + e.what());
  } catch (const IoError& e) {
    throw IoError(prefix + e.what());
  } catch (const std::exception& e) {
    throw ConfigError(prefix + e.what());
  }
}

class Writer {
 public:
  explicit Writer(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw IoError("cannot create output directory '" + dir_.string() + "': " + ec.message());
  }

  void put(const std::string& name, const std::string& content) {
    const auto path = dir_ / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << content;
    out.close();
    if (!out) throw IoError("error while writing '" + path.string() + "'");
    written_.push_back(path);
  }

  void put_json(const std::string& name, const json& value) { put(name, value.dump(2) + "\n"); }

  std::vector<std::filesystem::path> take() { return std::move(written_); }

 private:
  std::filesystem::path dir_;
  std::vector<std::filesystem::path> written_;
};

std::string p_rule_name(PValueRule rule) {
  return rule == PValueRule::strict ? "strict: count(delta > 2 delta_obs) / B"
                                    : "smoothed: (count(delta > 2 delta_obs) + 1) / (B + 1)";
}

}  // namespace

json manifest_json(const RunConfig& config, const ScoreSpec& spec, const PredictionTable& table) {
  json corrections = json::array();
  for (auto method : config.corrections) corrections.push_back(std::string(to_string(method)));
  json formats = json::array();
  for (auto format : config.formats) formats.push_back(std::string(to_string(format)));
  return {{"tool", "lbstats"},
          {"input", config.input.filename().string()},
          {"gold_column", config.gold_column},
          {"task", std::string(to_string(table.task_kind()))},
          {"n", table.size()},
          {"systems", table.system_names()},
          {"metric", spec.describe()},
          {"direction", std::string(to_string(spec.direction))},
          {"capped_at_one", spec.capped_at_one},
          {"zero_division", spec.zero_division == ZeroDivision::zero ? "zero" : "exclude"},
          {"samples", config.plan.replicates},
          {"seed", config.plan.seed},
          {"alpha", config.plan.alpha},
          {"confidence", config.plan.confidence},
          {"interval_method", std::string(kIntervalMethod)},
          {"quantile_rule", std::string(kQuantileRule)},
          {"rng_family", std::string(kRngFamily)},
          {"resampling", "paired: one index vector per replicate shared by all systems"},
          {"p_value_rule", p_rule_name(config.p_rule)},
          {"family_policy", std::string(to_string(config.policy))},
          {"corrections", corrections},
          {"gold_alias", config.gold_alias},
          {"histogram_bins", config.histogram_bins == 0 ? json("sqrt(B)")
                                                        : json(config.histogram_bins)},
          {"formats", formats}};
}

PipelineResult run_pipeline(const RunConfig& config) {
  stage("config", [&] { check(config); });
  const PredictionTable table =
      stage("load", [&] { return load_table(config.input, config.gold_column, config.task); });
  return run_pipeline(config, table);
}

PipelineResult run_pipeline(const RunConfig& config, const PredictionTable& table) {
  const ScoreSpec spec = stage("metric", [&] {
    check(config);
    ScoreSpec s = make_score_spec(config);
    require_compatible(s, table);
    return s;
  });

  AnalysisOptions options;
  options.policy = config.policy;
  options.corrections = config.corrections;
  options.gold_alias = config.gold_alias;
  options.p_rule = config.p_rule;
  PipelineResult result;
  result.analysis = stage("analysis", [&] { return analyze(table, spec, config.plan, options); });
  const Analysis& analysis = result.analysis;

  stage("write", [&] {
    Writer writer(config.out_dir);
    const auto wants = [&](OutputFormat f) { return config.formats.contains(f); };

    struct Named {
      const char* name;
      TextTable table;
      json data;
    };
    const Named tables[] = {
        {"performance", performance_table(analysis), performance_json(analysis)},
        {"differences", differences_table(analysis), differences_json(analysis)},
        {"difference_matrix", matrix_table(analysis), matrix_json(analysis)},
        {"pvalues", pvalues_table(analysis), pvalues_json(analysis)},
        {"report", report_table(analysis), report_json(analysis.report)},
    };
    for (const auto& t : tables) {
      const std::string base = t.name;
      if (wants(OutputFormat::json)) writer.put_json(base + ".json", t.data);
      if (wants(OutputFormat::md)) writer.put(base + ".md", to_markdown(t.table));
      if (wants(OutputFormat::csv)) writer.put(base + ".csv", to_csv(t.table));
    }

    if (wants(OutputFormat::svg)) {
      const auto forest = render_forest_plot(analysis.performance, spec.direction);
      writer.put("forest_plot.svg", forest.svg);
      writer.put_json("forest_plot.data.json", forest.data);
      const auto diff = render_difference_plot(analysis.vs_winner);
      writer.put("difference_plot.svg", diff.svg);
      writer.put_json("difference_plot.data.json", diff.data);
      for (std::size_t k = 0; k < analysis.winner_deltas.size(); ++k) {
        char stem[48];
        std::snprintf(stem, sizeof stem, "delta_histogram_%02zu", k + 2);
        auto plot = render_delta_histogram(analysis.winner_deltas[k], config.histogram_bins);
        plot.data["p_value"] = analysis.vs_winner[k].p_value;
        writer.put(std::string(stem) + ".svg", plot.svg);
        writer.put_json(std::string(stem) + ".data.json", plot.data);
      }
    }
    writer.put_json("manifest.json", manifest_json(config, spec, table));
    result.written = writer.take();
  });
  return result;
}

}  // namespace lbstats::io
