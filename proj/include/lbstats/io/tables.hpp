// Copyright 2026 The lbstats Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lbstats/competition_report.hpp"

namespace lbstats::io {

/// A rendered table: header plus rows of already-formatted cells.
struct TextTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  bool operator==(const TextTable&) const = default;
};

/// Fixed-point text with round-half-even; "-0.0000" is written as "0.0000".
std::string format_fixed(double value, int decimals = 4);

/// rank, system, score, lci, mean, uci
TextTable performance_table(const Analysis& analysis);
/// reference, competitor, difference, lci, mean, uci, contains_zero
TextTable differences_table(const Analysis& analysis);
/// Lower triangle: row label, then one column per rank 1..m-1. Cells hold
/// the difference (column minus row) and its stars.
TextTable matrix_table(const Analysis& analysis);
/// reference, competitor, difference, p-value, then one column per requested
/// correction. "FDR" repeats the BH column. Pairs outside every family of the
/// policy have empty adjusted cells.
TextTable pvalues_table(const Analysis& analysis);
/// field, value
TextTable report_table(const Analysis& analysis);

std::string to_markdown(const TextTable& table);
std::string to_csv(const TextTable& table);

/// Inverses of the two writers. Throw ValidationError on malformed input.
TextTable parse_markdown_table(std::string_view text);
TextTable parse_csv_table(std::string_view text);

/// Full-precision JSON forms.
nlohmann::json performance_json(const Analysis& analysis);
nlohmann::json differences_json(const Analysis& analysis);
nlohmann::json matrix_json(const Analysis& analysis);
nlohmann::json pvalues_json(const Analysis& analysis);
nlohmann::json report_json(const CompetitionReport& report);

}  // namespace lbstats::io
