// Copyright 2026 The lbstats Authors.
// SPDX-License-Identifier: Apache-2.0

#include "lbstats/data_model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>
#include <unordered_map>

namespace lbstats {

namespace {

std::string summarize(const std::vector<Violation>& violations) {
  std::ostringstream out;
  out << violations.size() << " validation violation(s)";
  const std::size_t shown = std::min<std::size_t>(violations.size(), 5);
  for (std::size_t i = 0; i < shown; ++i) {
    out << (i == 0 ? ": " : "; ") << violations[i].message;
  }
  if (shown < violations.size()) out << "; ...";
  return out.str();
}

std::optional<double> parse_number(std::string_view text) {
  const std::string trimmed = trim(text);
  if (trimmed.empty()) return std::nullopt;
  const char* first = trimmed.data();
  const char* last = first + trimmed.size();
  if (*first == '+') ++first;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) return std::nullopt;
  return value;
}

void check_column(const RawColumn& column, std::size_t n, TaskKind kind,
                  std::vector<Violation>& out) {
  for (std::size_t row = 0; row < column.cells.size() && row < n; ++row) {
    const auto& cell = column.cells[row];
    if (!cell) {
      out.push_back({Violation::Kind::missing_value, column.name, row,
                     "missing value in column '" + column.name + "' at row " +
                         std::to_string(row)});
      continue;
    }
    if (kind == TaskKind::regression && !parse_number(*cell)) {
      out.push_back({Violation::Kind::non_numeric, column.name, row,
                     "non-numeric value '" + *cell + "' in column '" + column.name +
                         "' at row " + std::to_string(row)});
    }
  }
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : std::runtime_error(summarize(violations)), violations_(std::move(violations)) {}

ValidationError::ValidationError(const std::string& message) : std::runtime_error(message) {}

std::string_view to_string(TaskKind kind) {
  return kind == TaskKind::classification ? "classification" : "regression";
}

std::string_view to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::empty_table: return "empty_table";
    case Violation::Kind::length_mismatch: return "length_mismatch";
    case Violation::Kind::empty_name: return "empty_name";
    case Violation::Kind::duplicate_name: return "duplicate_name";
    case Violation::Kind::missing_value: return "missing_value";
    case Violation::Kind::non_numeric: return "non_numeric";
    case Violation::Kind::label_outside_set: return "label_outside_set";
  }
  return "unknown";
}

std::string trim(std::string_view text) {
  constexpr std::string_view ws = " \t\r\n\f\v";
  const auto begin = text.find_first_not_of(ws);
  if (begin == std::string_view::npos) return {};
  const auto end = text.find_last_not_of(ws);
  return std::string(text.substr(begin, end - begin + 1));
}

std::vector<Violation> validate(const RawTable& raw) {
  std::vector<Violation> out;
  const std::size_t n = raw.gold.cells.size();
  if (n == 0) {
    out.push_back({Violation::Kind::empty_table, raw.gold.name, std::nullopt,
                   "gold column '" + raw.gold.name + "' has no rows"});
  }
  check_column(raw.gold, n, raw.task_kind, out);

  std::set<std::string, std::less<>> seen;
  for (const auto& system : raw.systems) {
    if (system.name.empty()) {
      out.push_back({Violation::Kind::empty_name, system.name, std::nullopt,
                     "system column with an empty name"});
    } else if (!seen.insert(system.name).second) {
      out.push_back({Violation::Kind::duplicate_name, system.name, std::nullopt,
                     "duplicate system name '" + system.name + "'"});
    }
    if (system.cells.size() != n) {
      out.push_back({Violation::Kind::length_mismatch, system.name, std::nullopt,
                     "system '" + system.name + "' has " +
                         std::to_string(system.cells.size()) + " predictions, expected " +
                         std::to_string(n)});
    }
    check_column(system, n, raw.task_kind, out);
  }
  return out;
}

PredictionTable PredictionTable::from_raw(const RawTable& raw) {
  auto violations = validate(raw);
  if (!violations.empty()) throw ValidationError(std::move(violations));

  PredictionTable table;
  table.task_kind_ = raw.task_kind;
  table.n_ = raw.gold.cells.size();
  for (const auto& system : raw.systems) table.names_.push_back(system.name);

  if (raw.task_kind == TaskKind::regression) {
    auto to_values = [](const RawColumn& column) {
      std::vector<double> values;
      values.reserve(column.cells.size());
      for (const auto& cell : column.cells) values.push_back(*parse_number(*cell));
      return values;
    };
    table.gold_values_ = to_values(raw.gold);
    for (const auto& system : raw.systems) table.values_.push_back(to_values(system));
    return table;
  }

  std::unordered_map<std::string, std::int32_t> index;
  auto encode = [&](const RawColumn& column) {
    std::vector<std::int32_t> codes;
    codes.reserve(column.cells.size());
    for (const auto& cell : column.cells) {
      std::string label = trim(*cell);
      auto [it, inserted] =
          index.try_emplace(label, static_cast<std::int32_t>(table.labels_.size()));
      if (inserted) table.labels_.push_back(std::move(label));
      codes.push_back(it->second);
    }
    return codes;
  };
  table.gold_codes_ = encode(raw.gold);
  for (const auto& system : raw.systems) table.codes_.push_back(encode(system));
  return table;
}

PredictionTable PredictionTable::classification(
    std::vector<std::string> gold,
    std::vector<std::pair<std::string, std::vector<std::string>>> systems) {
  RawTable raw;
  raw.task_kind = TaskKind::classification;
  raw.gold.name = "y";
  for (auto& label : gold) raw.gold.cells.emplace_back(std::move(label));
  for (auto& [name, predictions] : systems) {
    RawColumn column{std::move(name), {}};
    for (auto& label : predictions) column.cells.emplace_back(std::move(label));
    raw.systems.push_back(std::move(column));
  }
  return from_raw(raw);
}

PredictionTable PredictionTable::regression(
    std::vector<double> gold, std::vector<std::pair<std::string, std::vector<double>>> systems) {
  // Built directly: going through text would round the values.
  std::vector<Violation> violations;
  if (gold.empty()) {
    violations.push_back({Violation::Kind::empty_table, "y", std::nullopt, "gold column has no rows"});
  }
  std::set<std::string, std::less<>> seen;
  for (const auto& [name, values] : systems) {
    if (name.empty()) {
      violations.push_back({Violation::Kind::empty_name, name, std::nullopt,
                            "system column with an empty name"});
    } else if (!seen.insert(name).second) {
      violations.push_back({Violation::Kind::duplicate_name, name, std::nullopt,
                            "duplicate system name '" + name + "'"});
    }
    if (values.size() != gold.size()) {
      violations.push_back({Violation::Kind::length_mismatch, name, std::nullopt,
                            "system '" + name + "' has " + std::to_string(values.size()) +
                                " predictions, expected " + std::to_string(gold.size())});
    }
    for (std::size_t row = 0; row < values.size(); ++row) {
      if (!std::isfinite(values[row])) {
        violations.push_back({Violation::Kind::non_numeric, name, row,
                              "non-finite value in system '" + name + "'"});
      }
    }
  }
  for (std::size_t row = 0; row < gold.size(); ++row) {
    if (!std::isfinite(gold[row])) {
      violations.push_back({Violation::Kind::non_numeric, "y", row, "non-finite gold value"});
    }
  }
  if (!violations.empty()) throw ValidationError(std::move(violations));

  PredictionTable table;
  table.task_kind_ = TaskKind::regression;
  table.n_ = gold.size();
  table.gold_values_ = std::move(gold);
  for (auto& [name, values] : systems) {
    table.names_.push_back(std::move(name));
    table.values_.push_back(std::move(values));
  }
  return table;
}

std::optional<std::size_t> PredictionTable::find_system(std::string_view name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

std::size_t PredictionTable::system_index(std::string_view name) const {
  if (auto index = find_system(name)) return *index;
  throw std::out_of_range("unknown system '" + std::string(name) + "'");
}

std::optional<std::int32_t> PredictionTable::label_code(std::string_view label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::int32_t>(it - labels_.begin());
}

PredictionTable PredictionTable::select(std::span<const std::size_t> systems) const {
  PredictionTable out;
  out.task_kind_ = task_kind_;
  out.n_ = n_;
  out.labels_ = labels_;
  out.gold_codes_ = gold_codes_;
  out.gold_values_ = gold_values_;
  for (std::size_t index : systems) {
    out.names_.push_back(names_.at(index));
    if (task_kind_ == TaskKind::classification) {
      out.codes_.push_back(codes_.at(index));
    } else {
      out.values_.push_back(values_.at(index));
    }
  }
  return out;
}

std::vector<Violation> validate(const PredictionTable& table) {
  std::vector<Violation> out;
  if (table.n_ == 0) {
    out.push_back({Violation::Kind::empty_table, "y", std::nullopt, "table has no rows"});
  }
  std::set<std::string, std::less<>> seen;
  for (std::size_t s = 0; s < table.names_.size(); ++s) {
    const auto& name = table.names_[s];
    if (name.empty()) {
      out.push_back({Violation::Kind::empty_name, name, std::nullopt, "empty system name"});
    } else if (!seen.insert(name).second) {
      out.push_back({Violation::Kind::duplicate_name, name, std::nullopt,
                     "duplicate system name '" + name + "'"});
    }
    const std::size_t length = table.task_kind_ == TaskKind::classification
                                   ? table.codes_[s].size()
                                   : table.values_[s].size();
    if (length != table.n_) {
      out.push_back({Violation::Kind::length_mismatch, name, std::nullopt,
                     "system '" + name + "' has the wrong length"});
    }
    if (table.task_kind_ == TaskKind::classification) {
      const auto label_count = static_cast<std::int32_t>(table.labels_.size());
      for (std::size_t row = 0; row < table.codes_[s].size(); ++row) {
        const auto code = table.codes_[s][row];
        if (code < 0 || code >= label_count) {
          out.push_back({Violation::Kind::label_outside_set, name, row,
                         "prediction outside label set"});
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

std::string_view to_string(Direction direction) {
  return direction == Direction::higher_better ? "higher_better" : "lower_better";
}

ScoreSpec ScoreSpec::accuracy() { return ScoreSpec{}; }

ScoreSpec ScoreSpec::f1_of_class(std::string label) {
  ScoreSpec spec;
  spec.metric = MetricKind::f1_of_class;
  spec.classes = {std::move(label)};
  return spec;
}

ScoreSpec ScoreSpec::macro_f1(std::vector<std::string> labels) {
  ScoreSpec spec;
  spec.metric = MetricKind::macro_f1;
  spec.classes = std::move(labels);
  return spec;
}

ScoreSpec ScoreSpec::mae() {
  ScoreSpec spec;
  spec.metric = MetricKind::mae;
  spec.direction = Direction::lower_better;
  spec.capped_at_one = false;
  return spec;
}

ScoreSpec ScoreSpec::custom_metric(std::shared_ptr<const CustomMetric> metric,
                                   Direction direction, bool capped_at_one) {
  ScoreSpec spec;
  spec.metric = MetricKind::custom;
  spec.custom = std::move(metric);
  spec.direction = direction;
  spec.capped_at_one = capped_at_one;
  return spec;
}

std::string ScoreSpec::describe() const {
  auto joined = [this] {
    std::string out;
    for (std::size_t i = 0; i < classes.size(); ++i) {
      if (i) out += ',';
      out += classes[i];
    }
    return out;
  };
  switch (metric) {
    case MetricKind::accuracy: return "accuracy";
    case MetricKind::f1_of_class: return "f1:" + joined();
    case MetricKind::macro_f1: return "macro-f1:" + joined();
    case MetricKind::mae: return "mae";
    case MetricKind::custom: return "custom:" + (custom ? custom->name : std::string());
  }
  return "unknown";
}

void require_compatible(const ScoreSpec& spec, const PredictionTable& table) {
  const bool classification = table.task_kind() == TaskKind::classification;
  switch (spec.metric) {
    case MetricKind::accuracy:
      if (!classification) throw std::invalid_argument("accuracy needs categorical outcomes");
      break;
    case MetricKind::f1_of_class:
    case MetricKind::macro_f1: {
      if (!classification) throw std::invalid_argument("F1 needs categorical outcomes");
      if (spec.classes.empty()) throw std::invalid_argument("F1 class subset is empty");
      if (spec.metric == MetricKind::f1_of_class && spec.classes.size() != 1) {
        throw std::invalid_argument("f1_of_class takes exactly one label");
      }
      std::set<std::string, std::less<>> unique;
      for (const auto& label : spec.classes) {
        if (!table.label_code(label)) {
          throw std::invalid_argument("class '" + label + "' is not in the label set");
        }
        if (!unique.insert(label).second) {
          throw std::invalid_argument("class '" + label + "' listed twice");
        }
      }
      break;
    }
    case MetricKind::mae:
      if (classification) throw std::invalid_argument("mae needs numeric outcomes");
      if (spec.direction != Direction::lower_better || spec.capped_at_one) {
        throw std::invalid_argument("mae is lower-better and uncapped");
      }
      break;
    case MetricKind::custom:
      if (!spec.custom) throw std::invalid_argument("custom metric has no scoring function");
      if (classification ? !spec.custom->score_labels : !spec.custom->score_values) {
        throw std::invalid_argument("custom metric '" + spec.custom->name +
                                    "' cannot score " + std::string(to_string(table.task_kind())) +
                                    " outcomes");
      }
      break;
  }
}

std::optional<double> ideal_value(const ScoreSpec& spec) {
  if (spec.metric == MetricKind::mae) return 0.0;
  if (spec.capped_at_one && spec.direction == Direction::higher_better) return 1.0;
  return std::nullopt;
}

void BootstrapPlan::check() const {
  if (replicates < 1) throw std::invalid_argument("replicates must be at least 1");
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw std::invalid_argument("confidence must lie strictly between 0 and 1");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie strictly between 0 and 1");
  }
}

std::string_view to_string(CorrectionMethod method) {
  switch (method) {
    case CorrectionMethod::none: return "none";
    case CorrectionMethod::bonferroni: return "bonferroni";
    case CorrectionMethod::holm: return "holm";
    case CorrectionMethod::bh: return "bh";
  }
  return "unknown";
}

std::optional<CorrectionMethod> parse_correction(std::string_view text) {
  if (text == "none") return CorrectionMethod::none;
  if (text == "bonferroni") return CorrectionMethod::bonferroni;
  if (text == "holm") return CorrectionMethod::holm;
  if (text == "bh" || text == "fdr_bh") return CorrectionMethod::bh;
  return std::nullopt;
}

}  // namespace lbstats
