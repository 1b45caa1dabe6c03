// Copyright 2026 The lbstats Authors.
// SPDX-License-Identifier: Apache-2.0

// Static SVG plots. Every plot comes with a JSON sidecar holding the data it
// was drawn from.
//
// Structure relied on by tests and downstream tools:
//   <g class="interval" data-system=".." data-lci=".." data-mean=".." data-uci="..">
//     <line class="ci" stroke="red|green|black" .../> <circle class="marker" .../>
//   </g>
//   <rect class="bar" data-lo=".." data-hi=".." data-count=".."/>
//   <line class="ref" data-label="0|delta|2delta" data-x=".."/>

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "lbstats/data_model.hpp"
#include "lbstats/inference.hpp"

namespace lbstats::io {

struct PlotOutput {
  std::string svg;
  nlohmann::json data;
};

/// One horizontal interval per system, best observed score on top, marker at
/// the bootstrap mean. Throws std::invalid_argument on an empty input.
PlotOutput render_forest_plot(std::span<const PerformanceSummary> summaries, Direction direction);

/// Difference intervals in input order: red when the interval contains zero,
/// green otherwise. Throws std::invalid_argument on an empty input.
PlotOutput render_difference_plot(std::span<const DifferenceSummary> differences);

struct HistogramBin {
  double lo = 0.0;  // exclusive
  double hi = 0.0;  // inclusive
  std::size_t count = 0;
};

/// Right-closed bins over the deltas, with 2 * observed_delta placed on a bin
/// edge so the bins right of that edge hold exactly the deltas exceeding it.
/// bins == 0 selects ceil(sqrt(B)).
std::vector<HistogramBin> delta_histogram(const PairedDelta& pd, std::size_t bins = 0);

/// Histogram of the deltas with reference lines at 0, delta and 2 delta.
/// Throws std::invalid_argument when there are no deltas.
PlotOutput render_delta_histogram(const PairedDelta& pd, std::size_t bins = 0);

}  // namespace lbstats::io
