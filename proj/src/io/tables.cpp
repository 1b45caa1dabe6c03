// Copyright 2026 The lbstats Authors.
// SPDX-License-Identifier: Apache-2.0

#include "lbstats/io/tables.hpp"

#include <cmath>
#include <cstdio>

#include "lbstats/io/csv.hpp"

namespace lbstats::io {

using nlohmann::json;

std::string format_fixed(double value, int decimals) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  double rounded = round_half_even(value, decimals);
  if (rounded == 0.0) rounded = 0.0;  // drop the sign of -0
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", decimals, rounded);
  return buffer;
}

namespace {

std::string correction_label(CorrectionMethod method) {
  switch (method) {
    case CorrectionMethod::none: return "none";
    case CorrectionMethod::bonferroni: return "Bonferroni";
    case CorrectionMethod::holm: return "Holm";
    case CorrectionMethod::bh: return "BH";
  }
  return "unknown";
}

/// Requested corrections in report order, with FDR inserted as a BH alias.
struct AdjustedColumn {
  std::string label;
  CorrectionMethod method;
};

std::vector<AdjustedColumn> adjusted_columns(const Analysis& analysis) {
  std::vector<AdjustedColumn> out;
  const auto has = [&](CorrectionMethod m) { return analysis.adjusted.contains(m); };
  if (has(CorrectionMethod::bonferroni)) out.push_back({"Bonferroni", CorrectionMethod::bonferroni});
  if (has(CorrectionMethod::bh)) out.push_back({"FDR", CorrectionMethod::bh});
  if (has(CorrectionMethod::holm)) out.push_back({"Holm", CorrectionMethod::holm});
  if (has(CorrectionMethod::bh)) out.push_back({"BH", CorrectionMethod::bh});
  return out;
}

std::string optional_fixed(const std::optional<double>& value) {
  return value ? format_fixed(*value) : "";
}

std::string escape_markdown(std::string_view cell) {
  std::string out;
  for (char c : cell) {
    if (c == '|' || c == '\\') out.push_back('\\');
    out.push_back(c == '\n' ? ' ' : c);
  }
  return out;
}

std::vector<std::string> split_markdown_row(std::string_view line) {
  std::string trimmed = trim(line);
  if (trimmed.size() < 2 || trimmed.front() != '|' || trimmed.back() != '|') {
    throw ValidationError("markdown table row must start and end with '|': " + trimmed);
  }
  std::vector<std::string> cells;
  std::string cell;
  for (std::size_t i = 1; i + 1 < trimmed.size(); ++i) {
    const char c = trimmed[i];
    if (c == '\\' && i + 2 < trimmed.size()) {
      cell.push_back(trimmed[++i]);
    } else if (c == '|') {
      cells.push_back(trim(cell));
      cell.clear();
    } else {
      cell.push_back(c);
    }
  }
  cells.push_back(trim(cell));
  return cells;
}

json optional_json(const std::optional<double>& value) {
  return value ? json(*value) : json(nullptr);
}

json corrections_json(const std::map<CorrectionMethod, std::size_t>& counts) {
  json out = json::object();
  for (const auto& [method, count] : counts) out[std::string(to_string(method))] = count;
  return out;
}

}  // namespace

TextTable performance_table(const Analysis& analysis) {
  TextTable table{{"rank", "system", "score", "lci", "mean", "uci"}, {}};
  for (std::size_t i = 0; i < analysis.performance.size(); ++i) {
    const auto& p = analysis.performance[i];
    table.rows.push_back({std::to_string(i + 1), p.system, format_fixed(p.observed),
                          format_fixed(p.lci), format_fixed(p.boot_mean), format_fixed(p.uci)});
  }
  return table;
}

TextTable differences_table(const Analysis& analysis) {
  TextTable table{{"reference", "competitor", "difference", "lci", "mean", "uci", "contains_zero"},
                  {}};
  for (const auto& d : analysis.vs_winner) {
    table.rows.push_back({d.reference, d.competitor, format_fixed(d.observed_delta),
                          format_fixed(d.lci), format_fixed(d.boot_mean), format_fixed(d.uci),
                          d.contains_zero ? "true" : "false"});
  }
  return table;
}

TextTable matrix_table(const Analysis& analysis) {
  const auto& order = analysis.matrix.order;
  TextTable table;
  table.columns.push_back("system");
  for (std::size_t j = 0; j + 1 < order.size(); ++j) table.columns.push_back(order[j]);
  for (std::size_t i = 1; i < order.size(); ++i) {
    std::vector<std::string> row{order[i]};
    for (std::size_t j = 0; j + 1 < order.size(); ++j) {
      if (j >= i) {
        row.emplace_back();
        continue;
      }
      const auto& entry = analysis.matrix.at(i, j);
      std::string cell = format_fixed(entry.delta);
      const auto stars = to_string(entry.stars);
      if (!stars.empty()) cell += " " + std::string(stars);
      row.push_back(std::move(cell));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

TextTable pvalues_table(const Analysis& analysis) {
  const auto columns = adjusted_columns(analysis);
  TextTable table{{"reference", "competitor", "difference", "p-value"}, {}};
  for (const auto& column : columns) table.columns.push_back(column.label);
  for (const auto& pair : analysis.pairs) {
    std::vector<std::string> row{pair.reference, pair.competitor,
                                 format_fixed(pair.observed_delta), format_fixed(pair.p_value)};
    for (const auto& column : columns) {
      const auto it = pair.adjusted_p.find(column.method);
      row.push_back(it == pair.adjusted_p.end() ? "" : format_fixed(it->second));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

TextTable report_table(const Analysis& analysis) {
  const auto& r = analysis.report;
  TextTable table{{"field", "value"}, {}};
  auto add = [&](std::string field, std::string value) {
    table.rows.push_back({std::move(field), std::move(value)});
  };
  add("test size (n)", std::to_string(r.n));
  add("competitors (m)", std::to_string(r.m));
  add("possible comparisons", std::to_string(r.possible_comparisons));
  for (const auto& [method, count] : r.ties_with_winner) {
    add("ties with winner (" + correction_label(method) + ")", std::to_string(count));
  }
  for (const auto& [method, count] : r.ties_all_pairs) {
    add("ties all pairs (" + correction_label(method) + ")", std::to_string(count));
  }
  add("|win-med|", format_fixed(r.win_med_gap));
  add(r.cv_comparable ? "CV" : "CV (not comparable)", optional_fixed(r.cv));
  add("PPI", optional_fixed(r.ppi));
  add("alpha", format_fixed(r.alpha));
  add("winner", r.winner);
  add("metric", r.metric);
  add("direction", std::string(to_string(r.direction)));
  add("family policy", std::string(to_string(r.policy)));
  add("replicates", std::to_string(r.replicates));
  add("confidence", format_fixed(r.confidence));
  add("seed", std::to_string(r.seed));
  std::string excluded;
  for (const auto& name : r.excluded) excluded += (excluded.empty() ? "" : ";") + name;
  add("excluded", excluded);
  return table;
}

std::string to_markdown(const TextTable& table) {
  auto line = [](const std::vector<std::string>& cells) {
    std::string out = "|";
    for (const auto& cell : cells) out += " " + escape_markdown(cell) + " |";
    return out + "\n";
  };
  std::string out = line(table.columns);
  out += "|";
  for (std::size_t i = 0; i < table.columns.size(); ++i) out += " --- |";
  out += "\n";
  for (const auto& row : table.rows) out += line(row);
  return out;
}

std::string to_csv(const TextTable& table) {
  std::string out = csv_line(table.columns);
  for (const auto& row : table.rows) out += csv_line(row);
  return out;
}

TextTable parse_markdown_table(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line = trim(text.substr(start, end - start));
    if (!line.empty()) lines.push_back(std::move(line));
    start = end + 1;
  }
  if (lines.size() < 2) throw ValidationError("markdown table needs a header and a rule line");
  TextTable table;
  table.columns = split_markdown_row(lines[0]);
  if (split_markdown_row(lines[1]).size() != table.columns.size()) {
    throw ValidationError("markdown rule line does not match the header");
  }
  for (std::size_t i = 2; i < lines.size(); ++i) {
    auto row = split_markdown_row(lines[i]);
    if (row.size() != table.columns.size()) {
      throw ValidationError("markdown row " + std::to_string(i - 1) + " has " +
                            std::to_string(row.size()) + " cells, header has " +
                            std::to_string(table.columns.size()));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

TextTable parse_csv_table(std::string_view text) {
  CsvDocument doc = parse_csv(text);
  return TextTable{std::move(doc.header), std::move(doc.rows)};
}

json performance_json(const Analysis& analysis) {
  json rows = json::array();
  for (std::size_t i = 0; i < analysis.performance.size(); ++i) {
    const auto& p = analysis.performance[i];
    json row{{"rank", i + 1},        {"system", p.system}, {"score", p.observed},
             {"lci", p.lci},         {"mean", p.boot_mean}, {"uci", p.uci}};
    if (!p.boot_samples.empty()) row["boot_samples"] = p.boot_samples;
    rows.push_back(std::move(row));
  }
  return rows;
}

json differences_json(const Analysis& analysis) {
  json rows = json::array();
  for (const auto& d : analysis.vs_winner) {
    rows.push_back({{"reference", d.reference},
                    {"competitor", d.competitor},
                    {"difference", d.observed_delta},
                    {"lci", d.lci},
                    {"mean", d.boot_mean},
                    {"uci", d.uci},
                    {"contains_zero", d.contains_zero}});
  }
  return rows;
}

json matrix_json(const Analysis& analysis) {
  json rows = json::array();
  const auto& order = analysis.matrix.order;
  for (std::size_t i = 1; i < order.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const auto& entry = analysis.matrix.at(i, j);
      rows.push_back({{"row", order[i]},
                      {"column", order[j]},
                      {"difference", entry.delta},
                      {"p_value", entry.p_value},
                      {"stars", std::string(to_string(entry.stars))}});
    }
  }
  return json{{"order", order}, {"entries", rows}};
}

json pvalues_json(const Analysis& analysis) {
  const auto columns = adjusted_columns(analysis);
  json rows = json::array();
  for (const auto& pair : analysis.pairs) {
    json adjusted = json::object();
    for (const auto& column : columns) {
      const auto it = pair.adjusted_p.find(column.method);
      adjusted[column.label] = it == pair.adjusted_p.end() ? json(nullptr) : json(it->second);
    }
    rows.push_back({{"reference", pair.reference},
                    {"competitor", pair.competitor},
                    {"difference", pair.observed_delta},
                    {"p_value", pair.p_value},
                    {"adjusted", adjusted}});
  }
  return rows;
}

json report_json(const CompetitionReport& r) {
  json ties_groups = json::array();
  for (const auto& group : r.ranking_ties) ties_groups.push_back(group);
  return {{"n", r.n},
          {"m", r.m},
          {"possible_comparisons", r.possible_comparisons},
          {"ties_with_winner", corrections_json(r.ties_with_winner)},
          {"ties_all_pairs", corrections_json(r.ties_all_pairs)},
          {"win_med_gap", r.win_med_gap},
          {"cv", optional_json(r.cv)},
          {"cv_comparable", r.cv_comparable},
          {"ppi", optional_json(r.ppi)},
          {"alpha", r.alpha},
          {"winner", r.winner},
          {"metric", r.metric},
          {"direction", std::string(to_string(r.direction))},
          {"family_policy", std::string(to_string(r.policy))},
          {"seed", r.seed},
          {"replicates", r.replicates},
          {"confidence", r.confidence},
          {"excluded", r.excluded},
          {"ranking_ties", ties_groups},
          {"notes", r.notes}};
}

}  // namespace lbstats::io
