// Copyright 2026 The lbstats Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <exception>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "lbstats/competition_report.hpp"
#include "lbstats/io/config.hpp"

namespace lbstats::io {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 1,
  kExitConfig = 2,
  kExitIo = 3,
};

/// Maps a caught exception to the CLI exit code. Unknown exceptions and
/// precondition failures (std::invalid_argument, std::out_of_range) count as
/// configuration errors.
int exit_code_for(const std::exception_ptr& error);

struct PipelineResult {
  Analysis analysis;
  std::vector<std::filesystem::path> written;  // in write order
};

/// Records everything that determines the outputs besides the input bytes.
/// Worker count and kernel ISA are left out: they do not change any output.
nlohmann::json manifest_json(const RunConfig& config, const ScoreSpec& spec,
                             const PredictionTable& table);

/// Loads, analyzes and writes every requested artifact under config.out_dir.
/// Errors keep their type (ValidationError, ConfigError, IoError) and carry
/// the failing stage in the message: "<stage>: <detail>".
PipelineResult run_pipeline(const RunConfig& config);

/// Runs the analysis on an in-memory table and writes the artifacts.
PipelineResult run_pipeline(const RunConfig& config, const PredictionTable& table);

}  // namespace lbstats::io
