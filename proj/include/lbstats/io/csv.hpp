// Copyright 2026 The lbstats Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "lbstats/data_model.hpp"

namespace lbstats::io {

/// Comma-separated text with a header row. Fields may be double-quoted;
/// a doubled quote inside a quoted field is a literal quote.
struct CsvDocument {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  /// Per row and cell: true when the field was written without quotes and
  /// is empty, i.e. a missing value.
  std::vector<std::vector<bool>> missing;
};

/// Throws ValidationError for an empty document, an unterminated quote, or a
/// row whose field count differs from the header.
CsvDocument parse_csv(std::string_view text);

/// Throws IoError when the file cannot be read.
CsvDocument read_csv_file(const std::filesystem::path& path);

std::string csv_escape(std::string_view field);
std::string csv_line(const std::vector<std::string>& fields);

enum class TaskOverride { automatic, classification, regression };

/// Gold column becomes gold; every other column is a system, in file order.
/// With TaskOverride::automatic the table is a regression table when every
/// non-missing cell parses as a number.
/// Throws ConfigError for a missing gold column and ValidationError for
/// malformed content (including a column mixing numeric and non-numeric
/// cells under automatic detection).
PredictionTable table_from_csv(const CsvDocument& document, std::string_view gold_column,
                               TaskOverride task = TaskOverride::automatic);

PredictionTable load_table(const std::filesystem::path& path, std::string_view gold_column = "y",
                           TaskOverride task = TaskOverride::automatic);

/// Writes gold (as `gold_column`) followed by every system column.
void write_table_csv(const PredictionTable& table, std::ostream& out,
                     std::string_view gold_column = "y");

}  // namespace lbstats::io
