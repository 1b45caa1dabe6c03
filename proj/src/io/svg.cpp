// Copyright 2026 The lbstats Authors.
// SPDX-License-Identifier: Apache-2.0

#include "lbstats/io/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace lbstats::io {

using nlohmann::json;

namespace {

constexpr double kWidth = 720.0;
constexpr double kLabelWidth = 200.0;
constexpr double kRight = 30.0;
constexpr double kTop = 40.0;
constexpr double kRowHeight = 28.0;
constexpr double kAxisHeight = 40.0;

std::string coord(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.2f", v);
  return buffer;
}

std::string exact(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", v);
  return buffer;
}

std::string escape_xml(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

struct Scale {
  double lo;
  double hi;
  double x0;
  double x1;

  double operator()(double v) const { return x0 + (v - lo) / (hi - lo) * (x1 - x0); }
};

Scale make_scale(double lo, double hi, double x0, double x1) {
  if (!(hi > lo)) {
    const double pad = std::max(0.5, std::abs(lo) * 0.1);
    return {lo - pad, hi + pad, x0, x1};
  }
  const double pad = (hi - lo) * 0.05;
  return {lo - pad, hi + pad, x0, x1};
}

std::string header(double height, std::string_view title) {
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + coord(kWidth) +
                    "\" height=\"" + coord(height) + "\" viewBox=\"0 0 " + coord(kWidth) + " " +
                    coord(height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text class=\"title\" x=\"" + coord(kWidth / 2) + "\" y=\"20\" text-anchor=\"middle\">" +
         escape_xml(title) + "</text>\n";
  return out;
}

std::string axis(const Scale& scale, double y) {
  std::string out = "<line class=\"axis\" x1=\"" + coord(scale.x0) + "\" y1=\"" + coord(y) +
                    "\" x2=\"" + coord(scale.x1) + "\" y2=\"" + coord(y) +
                    "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double v = scale.lo + (scale.hi - scale.lo) * k / 4.0;
    const double x = scale(v);
    char label[32];
    std::snprintf(label, sizeof label, "%.3f", v);
    out += "<line class=\"tick\" x1=\"" + coord(x) + "\" y1=\"" + coord(y) + "\" x2=\"" +
           coord(x) + "\" y2=\"" + coord(y + 5) + "\" stroke=\"black\"/>\n";
    out += "<text class=\"tick-label\" x=\"" + coord(x) + "\" y=\"" + coord(y + 18) +
           "\" text-anchor=\"middle\">" + label + "</text>\n";
  }
  return out;
}

std::string interval_row(std::string_view label, double lci, double mean, double uci,
                         std::string_view color, const Scale& scale, double y,
                         std::string_view extra_attributes) {
  std::string out = "<g class=\"interval\" data-system=\"" + escape_xml(label) +
                    "\" data-lci=\"" + exact(lci) + "\" data-mean=\"" + exact(mean) +
                    "\" data-uci=\"" + exact(uci) + "\"" + std::string(extra_attributes) + ">\n";
  out += "  <text class=\"label\" x=\"" + coord(kLabelWidth - 10) + "\" y=\"" + coord(y + 4) +
         "\" text-anchor=\"end\">" + escape_xml(label) + "</text>\n";
  out += "  <line class=\"ci\" x1=\"" + coord(scale(lci)) + "\" y1=\"" + coord(y) + "\" x2=\"" +
         coord(scale(uci)) + "\" y2=\"" + coord(y) + "\" stroke=\"" + std::string(color) +
         "\" stroke-width=\"3\" stroke-linecap=\"round\"/>\n";
  out += "  <circle class=\"marker\" cx=\"" + coord(scale(mean)) + "\" cy=\"" + coord(y) +
         "\" r=\"4\" fill=\"" + std::string(color) + "\"/>\n";
  out += "</g>\n";
  return out;
}

}  // namespace

PlotOutput render_forest_plot(std::span<const PerformanceSummary> summaries, Direction direction) {
  if (summaries.empty()) throw std::invalid_argument("forest plot needs at least one system");
  std::vector<double> observed;
  for (const auto& s : summaries) observed.push_back(s.observed);
  const auto order = rank_systems(observed, direction);

  double lo = summaries[0].lci;
  double hi = summaries[0].uci;
  for (const auto& s : summaries) {
    lo = std::min({lo, s.lci, s.boot_mean});
    hi = std::max({hi, s.uci, s.boot_mean});
  }
  const Scale scale = make_scale(lo, hi, kLabelWidth, kWidth - kRight);
  const double height = kTop + kRowHeight * static_cast<double>(summaries.size()) + kAxisHeight;

  std::string svg = header(height, "Ordered bootstrap confidence intervals");
  json rows = json::array();
  for (std::size_t r = 0; r < order.size(); ++r) {
    const auto& s = summaries[order[r]];
    const double y = kTop + kRowHeight * (static_cast<double>(r) + 0.5);
    svg += interval_row(s.system, s.lci, s.boot_mean, s.uci, "black", scale, y, "");
    rows.push_back({{"system", s.system},
                    {"observed", s.observed},
                    {"lci", s.lci},
                    {"mean", s.boot_mean},
                    {"uci", s.uci}});
  }
  svg += axis(scale, kTop + kRowHeight * static_cast<double>(summaries.size()) + 5);
  svg += "</svg>\n";
  return {std::move(svg), json{{"kind", "forest"},
                               {"direction", std::string(to_string(direction))},
                               {"rows", rows}}};
}

PlotOutput render_difference_plot(std::span<const DifferenceSummary> differences) {
  if (differences.empty()) throw std::invalid_argument("difference plot needs a comparison");
  double lo = 0.0;
  double hi = 0.0;
  for (const auto& d : differences) {
    lo = std::min({lo, d.lci, d.boot_mean});
    hi = std::max({hi, d.uci, d.boot_mean});
  }
  const Scale scale = make_scale(lo, hi, kLabelWidth, kWidth - kRight);
  const double bottom = kTop + kRowHeight * static_cast<double>(differences.size());
  const double height = bottom + kAxisHeight;

  std::string svg = header(height, "Bootstrap differences from the reference");
  svg += "<line class=\"zero\" x1=\"" + coord(scale(0.0)) + "\" y1=\"" + coord(kTop) +
         "\" x2=\"" + coord(scale(0.0)) + "\" y2=\"" + coord(bottom) +
         "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
  json rows = json::array();
  for (std::size_t r = 0; r < differences.size(); ++r) {
    const auto& d = differences[r];
    const double y = kTop + kRowHeight * (static_cast<double>(r) + 0.5);
    const std::string color = d.contains_zero ? "red" : "green";
    const std::string extra = " data-reference=\"" + escape_xml(d.reference) +
                              "\" data-contains-zero=\"" +
                              (d.contains_zero ? "true" : "false") + "\"";
    svg += interval_row(d.competitor, d.lci, d.boot_mean, d.uci, color, scale, y, extra);
    rows.push_back({{"reference", d.reference},
                    {"competitor", d.competitor},
                    {"difference", d.observed_delta},
                    {"lci", d.lci},
                    {"mean", d.boot_mean},
                    {"uci", d.uci},
                    {"contains_zero", d.contains_zero},
                    {"color", color}});
  }
  svg += axis(scale, bottom + 5);
  svg += "</svg>\n";
  return {std::move(svg), json{{"kind", "difference"}, {"rows", rows}}};
}

std::vector<HistogramBin> delta_histogram(const PairedDelta& pd, std::size_t bins) {
  const auto& values = pd.delta_values;
  if (values.empty()) throw std::invalid_argument("histogram needs at least one delta");
  if (bins == 0) {
    bins = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(values.size()))));
  }
  const double t = 2.0 * pd.observed_delta;
  const auto [min_it, max_it] = std::minmax_element(values.begin(), values.end());
  const double lo = std::min({*min_it, 0.0, t});
  const double hi = std::max({*max_it, 0.0, t});

  if (!(hi > lo)) {
    // Every value, 0 and 2 delta coincide: one bar ending on the line.
    return {HistogramBin{t - 0.5, t, values.size()}};
  }

  const double w = (hi - lo) / static_cast<double>(bins);
  const auto left = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((t - lo) / w)));
  const auto right = static_cast<std::size_t>(std::ceil((hi - t) / w));
  const std::size_t total = left + right;

  std::vector<HistogramBin> out(total);
  for (std::size_t k = 0; k < total; ++k) {
    out[k].lo = t + (static_cast<double>(k) - static_cast<double>(left)) * w;
    out[k].hi = t + (static_cast<double>(k + 1) - static_cast<double>(left)) * w;
  }
  out[left - 1].hi = t;
  if (right > 0) out[left].lo = t;

  for (double x : values) {
    std::size_t index;
    if (x > t) {
      const double steps = std::ceil((x - t) / w);
      const auto j = steps < 1.0 ? 0 : static_cast<std::size_t>(steps) - 1;
      index = left + std::min(j, right - 1);
    } else {
      const double d = (t - x) / w;
      const auto j = d <= 0.0 ? 0 : static_cast<std::size_t>(std::ceil(d)) - 1;
      index = left - 1 - std::min(j, left - 1);
    }
    ++out[index].count;
  }
  return out;
}

PlotOutput render_delta_histogram(const PairedDelta& pd, std::size_t bins) {
  const auto histogram = delta_histogram(pd, bins);
  const double delta = pd.observed_delta;
  const double lo = std::min({histogram.front().lo, 0.0, delta});
  const double hi = std::max({histogram.back().hi, 0.0, 2.0 * delta});
  const double left_edge = 60.0;
  const Scale scale = make_scale(lo, hi, left_edge, kWidth - kRight);
  const double plot_top = kTop + 20.0;
  const double plot_bottom = 320.0;
  const double height = plot_bottom + kAxisHeight;

  std::size_t peak = 1;
  for (const auto& bin : histogram) peak = std::max(peak, bin.count);

  std::string svg = header(height, "Bootstrap distribution of differences: " + pd.reference +
                                       " - " + pd.competitor);
  json bins_json = json::array();
  for (const auto& bin : histogram) {
    const double bar_height =
        (plot_bottom - plot_top) * static_cast<double>(bin.count) / static_cast<double>(peak);
    const double x0 = scale(bin.lo);
    const double x1 = scale(bin.hi);
    svg += "<rect class=\"bar\" x=\"" + coord(x0) + "\" y=\"" + coord(plot_bottom - bar_height) +
           "\" width=\"" + coord(std::max(0.0, x1 - x0)) + "\" height=\"" + coord(bar_height) +
           "\" fill=\"steelblue\" stroke=\"white\" data-lo=\"" + exact(bin.lo) + "\" data-hi=\"" +
           exact(bin.hi) + "\" data-count=\"" + std::to_string(bin.count) + "\"/>\n";
    bins_json.push_back({{"lo", bin.lo}, {"hi", bin.hi}, {"count", bin.count}});
  }

  struct Reference {
    const char* label;
    const char* text;
    double x;
    const char* color;
  };
  const Reference lines[] = {{"0", "0", 0.0, "black"},
                             {"delta", "\xCE\xB4(x)", delta, "orange"},
                             {"2delta", "2\xCE\xB4(x)", 2.0 * delta, "red"}};
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& line = lines[i];
    const double x = scale(line.x);
    svg += "<line class=\"ref\" data-label=\"" + std::string(line.label) + "\" data-x=\"" +
           exact(line.x) + "\" x1=\"" + coord(x) + "\" y1=\"" + coord(plot_top) + "\" x2=\"" +
           coord(x) + "\" y2=\"" + coord(plot_bottom) + "\" stroke=\"" + line.color +
           "\" stroke-dasharray=\"5 3\"/>\n";
    svg += "<text class=\"ref-label\" x=\"" + coord(x) + "\" y=\"" +
           coord(plot_top - 4 - 12.0 * static_cast<double>(i)) +
           "\" text-anchor=\"middle\">" + line.text + "</text>\n";
  }
  svg += axis(scale, plot_bottom);
  svg += "</svg>\n";

  std::size_t beyond = 0;
  for (double x : pd.delta_values) beyond += x > 2.0 * delta ? 1 : 0;
  json data{{"kind", "delta-histogram"},
            {"reference", pd.reference},
            {"competitor", pd.competitor},
            {"observed_delta", delta},
            {"replicates", pd.delta_values.size()},
            {"count_beyond_two_delta", beyond},
            {"lines", {{"zero", 0.0}, {"delta", delta}, {"two_delta", 2.0 * delta}}},
            {"bins", bins_json}};
  return {std::move(svg), std::move(data)};
}

}  // namespace lbstats::io
