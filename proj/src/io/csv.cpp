// Copyright 2026 The lbstats Authors.
// SPDX-License-Identifier: Apache-2.0

#include "lbstats/io/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace lbstats::io {

namespace {

struct Field {
  std::string text;
  bool quoted = false;
};

bool looks_numeric(std::string_view text) {
  const std::string trimmed = trim(text);
  if (trimmed.empty()) return false;
  const char* first = trimmed.data();
  const char* last = first + trimmed.size();
  if (*first == '+') ++first;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  return ec == std::errc() && ptr == last && std::isfinite(value);
}

}  // namespace

CsvDocument parse_csv(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

  std::vector<std::vector<Field>> records;
  std::vector<Field> record;
  Field field;
  bool in_quotes = false;
  bool line_has_content = false;
  std::size_t line = 1;

  auto end_field = [&] {
    record.push_back(std::move(field));
    field = Field{};
  };
  auto end_record = [&] {
    if (line_has_content) {
      end_field();
      records.push_back(std::move(record));
    }
    record.clear();
    field = Field{};
    line_has_content = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.text.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.text.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        field.quoted = true;
        line_has_content = true;
        break;
      case ',':
        line_has_content = true;
        end_field();
        break;
      case '\r':
        break;
      case '\n':
        end_record();
        ++line;
        break;
      default:
        line_has_content = true;
        field.text.push_back(c);
    }
  }
  if (in_quotes) throw ValidationError("unterminated quoted field starting near line " +
                                       std::to_string(line));
  end_record();

  if (records.empty()) throw ValidationError("empty CSV input: no header row");
  CsvDocument doc;
  for (auto& f : records.front()) doc.header.push_back(trim(f.text));
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != doc.header.size()) {
      throw ValidationError("ragged CSV: data row " + std::to_string(r) + " has " +
                            std::to_string(records[r].size()) + " fields, header has " +
                            std::to_string(doc.header.size()));
    }
    std::vector<std::string> row;
    std::vector<bool> missing;
    for (auto& f : records[r]) {
      missing.push_back(!f.quoted && trim(f.text).empty());
      row.push_back(std::move(f.text));
    }
    doc.rows.push_back(std::move(row));
    doc.missing.push_back(std::move(missing));
  }
  return doc;
}

CsvDocument read_csv_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path.string() + "'");
  return parse_csv(buffer.str());
}

std::string csv_escape(std::string_view field) {
  const bool needs_quotes = field.find_first_of(",\"\r\n") != std::string_view::npos ||
                            (!field.empty() && (field.front() == ' ' || field.back() == ' '));
  if (!needs_quotes) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string csv_line(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out.push_back(',');
    out += csv_escape(fields[i]);
  }
  out.push_back('\n');
  return out;
}

PredictionTable table_from_csv(const CsvDocument& document, std::string_view gold_column,
                               TaskOverride task) {
  std::size_t gold_index = document.header.size();
  for (std::size_t c = 0; c < document.header.size(); ++c) {
    if (document.header[c] == gold_column) {
      gold_index = c;
      break;
    }
  }
  if (gold_index == document.header.size()) {
    throw ConfigError("gold column '" + std::string(gold_column) + "' not found in header");
  }
  if (document.rows.empty()) throw ValidationError("CSV has a header but no data rows");

  TaskKind kind = TaskKind::classification;
  if (task == TaskOverride::regression) {
    kind = TaskKind::regression;
  } else if (task == TaskOverride::automatic) {
    bool all_numeric = true;
    for (std::size_t c = 0; c < document.header.size(); ++c) {
      std::size_t numeric = 0;
      std::size_t present = 0;
      for (std::size_t r = 0; r < document.rows.size(); ++r) {
        if (document.missing[r][c]) continue;
        ++present;
        numeric += looks_numeric(document.rows[r][c]) ? 1 : 0;
      }
      if (numeric != 0 && numeric != present) {
        throw ValidationError("column '" + document.header[c] +
                              "' mixes numeric and categorical values; pass --task to choose");
      }
      all_numeric = all_numeric && numeric == present && present != 0;
    }
    if (all_numeric) kind = TaskKind::regression;
  }

  RawTable raw;
  raw.task_kind = kind;
  auto column = [&](std::size_t c) {
    RawColumn out{document.header[c], {}};
    out.cells.reserve(document.rows.size());
    for (std::size_t r = 0; r < document.rows.size(); ++r) {
      if (document.missing[r][c]) {
        out.cells.emplace_back(std::nullopt);
      } else {
        out.cells.emplace_back(document.rows[r][c]);
      }
    }
    return out;
  };
  raw.gold = column(gold_index);
  for (std::size_t c = 0; c < document.header.size(); ++c) {
    if (c != gold_index) raw.systems.push_back(column(c));
  }
  return PredictionTable::from_raw(raw);
}

PredictionTable load_table(const std::filesystem::path& path, std::string_view gold_column,
                           TaskOverride task) {
  return table_from_csv(read_csv_file(path), gold_column, task);
}

void write_table_csv(const PredictionTable& table, std::ostream& out,
                     std::string_view gold_column) {
  std::vector<std::string> header{std::string(gold_column)};
  for (const auto& name : table.system_names()) header.push_back(name);
  out << csv_line(header);

  auto number = [](double value) {
    char buffer[64];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
    return std::string(buffer, ptr);
  };
  for (std::size_t i = 0; i < table.size(); ++i) {
    std::vector<std::string> row;
    if (table.task_kind() == TaskKind::classification) {
      const auto& labels = table.label_set();
      row.push_back(labels[static_cast<std::size_t>(table.gold_codes()[i])]);
      for (std::size_t s = 0; s < table.system_count(); ++s) {
        row.push_back(labels[static_cast<std::size_t>(table.codes(s)[i])]);
      }
    } else {
      row.push_back(number(table.gold_values()[i]));
      for (std::size_t s = 0; s < table.system_count(); ++s) row.push_back(number(table.values(s)[i]));
    }
    out << csv_line(row);
  }
}

}  // namespace lbstats::io
