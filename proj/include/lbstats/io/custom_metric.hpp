// Copyright 2026 The lbstats Authors.
// SPDX-License-Identifier: Apache-2.0

// Custom metrics are shared libraries exporting any of these C symbols:
//
//   double lbstats_score_labels(const char* const* gold, const char* const* pred, size_t n);
//   double lbstats_score_values(const double* gold, const double* pred, size_t n);
//   const char* lbstats_metric_name(void);            // optional
//
// At least one of the two scoring functions must be present.

#pragma once

#include <filesystem>
#include <memory>

#include "lbstats/data_model.hpp"

namespace lbstats::io {

/// Throws ConfigError when the library cannot be loaded or exports neither
/// scoring function. The returned metric keeps the library loaded.
std::shared_ptr<const CustomMetric> load_custom_metric(const std::filesystem::path& path);

}  // namespace lbstats::io
