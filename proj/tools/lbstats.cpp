// Copyright 2026 The lbstats Authors.
// SPDX-License-Identifier: Apache-2.0

// lbstats: bootstrap confidence intervals, paired significance tests and
// competition reports for predictions on a single test set.
//
//   lbstats --input preds.csv --metric macro-f1:FAVOR,AGAINST --out-dir out
//   lbstats synth --config synth.json --output table.csv
//   lbstats calibrate --config synth.json --trials 500 --samples 2000

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "lbstats/io/config.hpp"
#include "lbstats/io/csv.hpp"
#include "lbstats/io/pipeline.hpp"
#include "lbstats/kernels.hpp"
#include "lbstats/synth.hpp"

namespace {

using namespace lbstats;
using lbstats::io::RunConfig;

struct RunFlags {
  std::string config;
  std::string input;
  std::string gold_col;
  std::string metric;
  std::string direction;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double alpha = 0.0;
  double confidence = 0.0;
  std::vector<std::string> corrections;
  std::string family;
  std::string gold_alias;
  std::string out_dir;
  std::vector<std::string> formats;
  std::string task;
  unsigned workers = 0;
  std::size_t bins = 0;
  std::string zero_division;
  bool smooth_p = false;
};

void add_run_flags(CLI::App& app, RunFlags& f) {
  app.add_option("--config", f.config, "JSON config file; command-line flags override it");
  app.add_option("--input", f.input, "CSV with a gold column and one column per system");
  app.add_option("--gold-col", f.gold_col, "Name of the gold column (default y)");
  app.add_option("--metric", f.metric,
                 "accuracy | f1:<class> | macro-f1:<c1,c2,...> | mae | custom:<path>");
  app.add_option("--direction", f.direction, "higher | lower (default follows the metric)")
      ->check(CLI::IsMember({"higher", "lower"}));
  app.add_option("--samples", f.samples, "Bootstrap replicates B (default 10000)");
  app.add_option("--seed", f.seed, "Master seed (default 0)");
  app.add_option("--alpha", f.alpha, "Significance level for ties (default 0.05)");
  app.add_option("--confidence", f.confidence, "Interval confidence level (default 0.95)");
  app.add_option("--corrections", f.corrections, "Subset of none,bonferroni,holm,bh")
      ->delimiter(',');
  app.add_option("--family", f.family, "vs-winner | per-reference | global")
      ->check(CLI::IsMember({"vs-winner", "per-reference", "global"}));
  app.add_option("--gold-alias", f.gold_alias, "Gold-standard pseudo-system to exclude");
  app.add_option("--out-dir", f.out_dir, "Output directory (default lbstats-out)");
  app.add_option("--formats", f.formats, "Subset of json,md,csv,svg")->delimiter(',');
  app.add_option("--task", f.task, "auto | classification | regression")
      ->check(CLI::IsMember({"auto", "classification", "regression"}));
  app.add_option("--workers", f.workers, "Bootstrap threads (0 = all cores)");
  app.add_option("--bins", f.bins, "Histogram bins (0 = square-root rule)");
  app.add_option("--zero-division", f.zero_division, "F1 of an empty class: zero | exclude")
      ->check(CLI::IsMember({"zero", "exclude"}));
  app.add_flag("--smooth-p", f.smooth_p, "Use (count + 1) / (B + 1) p-values");
}

RunConfig build_run_config(const CLI::App& app, const RunFlags& f) {
  RunConfig config;
  if (!f.config.empty()) config = io::run_config_from_json(io::load_json_file(f.config));

  const auto given = [&](const char* name) { return app.count(name) > 0; };
  nlohmann::json overrides = nlohmann::json::object();
  if (given("--input")) overrides["input"] = f.input;
  if (given("--gold-col")) overrides["gold_col"] = f.gold_col;
  if (given("--metric")) overrides["metric"] = f.metric;
  if (given("--direction")) overrides["direction"] = f.direction;
  if (given("--samples")) overrides["samples"] = f.samples;
  if (given("--seed")) overrides["seed"] = f.seed;
  if (given("--alpha")) overrides["alpha"] = f.alpha;
  if (given("--confidence")) overrides["confidence"] = f.confidence;
  if (given("--corrections")) overrides["corrections"] = f.corrections;
  if (given("--family")) overrides["family"] = f.family;
  if (given("--gold-alias")) overrides["gold_alias"] = f.gold_alias;
  if (given("--out-dir")) overrides["out_dir"] = f.out_dir;
  if (given("--formats")) overrides["formats"] = f.formats;
  if (given("--task")) overrides["task"] = f.task;
  if (given("--workers")) overrides["workers"] = f.workers;
  if (given("--bins")) overrides["bins"] = f.bins;
  if (given("--zero-division")) overrides["zero_division"] = f.zero_division;
  if (f.smooth_p) overrides["p_rule"] = "smoothed";
  return io::run_config_from_json(overrides, std::move(config));
}

int run(const CLI::App& app, const RunFlags& flags) {
  const RunConfig config = build_run_config(app, flags);
  const auto result = io::run_pipeline(config);
  const auto& report = result.analysis.report;
  std::printf("winner: %s (%zu competitors, n = %zu)\n", report.winner.c_str(), report.m,
              report.n);
  std::printf("wrote %zu files to %s\n", result.written.size(), config.out_dir.c_str());
  return io::kExitOk;
}

struct SynthFlags {
  std::string config;
  std::string output;
  std::string gold_col = "y";
  std::optional<std::uint64_t> seed;
};

int synth(const SynthFlags& f) {
  SynthConfig config = io::synth_config_from_json(io::load_json_file(f.config));
  if (f.seed) config.seed = *f.seed;
  const PredictionTable table = generate(config);
  if (f.output.empty() || f.output == "-") {
    io::write_table_csv(table, std::cout, f.gold_col);
    return io::kExitOk;
  }
  std::ofstream out(f.output, std::ios::binary);
  if (!out) throw IoError("cannot open '" + f.output + "' for writing");
  io::write_table_csv(table, out, f.gold_col);
  if (!out.flush()) throw IoError("error while writing '" + f.output + "'");
  return io::kExitOk;
}

struct CalibrateFlags {
  std::string config;
  std::string metric = "accuracy";
  std::size_t trials = 500;
  std::size_t samples = 2000;
  std::uint64_t seed = 0;
  double confidence = 0.95;
  unsigned workers = 0;
  std::size_t coverage_system = 0;
  std::vector<std::size_t> null_pair;
};

int calibrate_command(const CalibrateFlags& f) {
  const SynthConfig synth_config = io::synth_config_from_json(io::load_json_file(f.config));
  RunConfig metric_config;
  metric_config.metric = f.metric;
  const ScoreSpec spec = io::make_score_spec(metric_config);
  BootstrapPlan plan;
  plan.replicates = f.samples;
  plan.seed = f.seed;
  plan.confidence = f.confidence;
  plan.workers = f.workers;

  CalibrationOptions options;
  options.coverage_system = f.coverage_system;
  options.workers = f.workers;
  if (!f.null_pair.empty()) {
    if (f.null_pair.size() != 2) throw ConfigError("--null-pair takes two system indices");
    options.null_pair = std::pair{f.null_pair[0], f.null_pair[1]};
  }
  const CalibrationSummary summary = [&] {
    try {
      return calibrate(synth_config, spec, plan, f.trials, options);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }();
  nlohmann::json out{{"trials", summary.trials},
                     {"population_score", summary.population_score},
                     {"covered", summary.covered},
                     {"coverage", summary.coverage},
                     {"ks_distance", summary.ks_distance},
                     {"p_histogram", summary.p_histogram}};
  std::cout << out.dump(2) << "\n";
  return io::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bootstrap inference for single-test-set competition results", "lbstats"};
  app.set_version_flag("--version", "lbstats 0.1.0");
  RunFlags run_flags;
  add_run_flags(app, run_flags);

  std::string kernels;
  app.add_option("--kernels", kernels, "Force kernel ISA: scalar | avx2")
      ->check(CLI::IsMember({"scalar", "avx2"}));

  SynthFlags synth_flags;
  auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic competition as CSV");
  synth_cmd->add_option("--config", synth_flags.config, "Synthetic config JSON")->required();
  synth_cmd->add_option("--output,-o", synth_flags.output, "Output CSV (default stdout)");
  synth_cmd->add_option("--gold-col", synth_flags.gold_col, "Gold column name");
  synth_cmd->add_option("--seed", synth_flags.seed, "Override the config seed");

  CalibrateFlags cal;
  auto* cal_cmd = app.add_subcommand("calibrate", "CI coverage and null p-value calibration");
  cal_cmd->add_option("--config", cal.config, "Synthetic config JSON")->required();
  cal_cmd->add_option("--metric", cal.metric, "Metric, as for the main command");
  cal_cmd->add_option("--trials", cal.trials, "Synthetic datasets (default 500)");
  cal_cmd->add_option("--samples", cal.samples, "Bootstrap replicates (default 2000)");
  cal_cmd->add_option("--seed", cal.seed, "Bootstrap master seed");
  cal_cmd->add_option("--confidence", cal.confidence, "Interval confidence level");
  cal_cmd->add_option("--workers", cal.workers, "Threads over trials (0 = all cores)");
  cal_cmd->add_option("--coverage-system", cal.coverage_system, "System index for coverage");
  cal_cmd->add_option("--null-pair", cal.null_pair, "Two system indices, e.g. 0,1")
      ->delimiter(',');
  app.require_subcommand(0, 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? io::kExitOk : io::kExitConfig;
  }

  try {
    if (!kernels.empty()) {
      const auto isa = kernels == "avx2" ? kernels::Isa::avx2 : kernels::Isa::scalar;
      if (!kernels::select(isa)) throw ConfigError("kernel ISA '" + kernels + "' not supported here");
    }
    if (*synth_cmd) return synth(synth_flags);
    if (*cal_cmd) return calibrate_command(cal);
    return run(app, run_flags);
  } catch (...) {
    const auto error = std::current_exception();
    try {
      std::rethrow_exception(error);
    } catch (const std::exception& e) {
      std::fprintf(stderr, "lbstats: error: %s\n", e.what());
    } catch (...) {
      std::fprintf(stderr, "lbstats: error: unknown failure\n");
    }
    return io::exit_code_for(error);
  }
}
