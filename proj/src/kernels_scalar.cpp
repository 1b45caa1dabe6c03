// Copyright 2026 The lbstats Authors.
// SPDX-License-Identifier: Apache-2.0

#include "lbstats/kernels.hpp"

namespace lbstats::kernels {

void accumulate_multiplicities(std::span<const std::uint32_t> indices,
                               std::span<std::int32_t> weights) noexcept {
  for (std::uint32_t index : indices) ++weights[index];
}

namespace detail {

std::int64_t weighted_count_eq_scalar(const std::int32_t* weights, const std::int32_t* codes,
                                      std::size_t n, std::int32_t code) {
  std::int64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (codes[i] == code) total += weights[i];
  }
  return total;
}

// Lane layout must stay in step with the AVX2 variant.
double weighted_sum_scalar(const std::int32_t* weights, const double* values, std::size_t n) {
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    for (std::size_t j = 0; j < 4; ++j) {
      lane[j] += static_cast<double>(weights[i + j]) * values[i + j];
    }
  }
  for (std::size_t j = 0; i + j < n; ++j) {
    lane[j] += static_cast<double>(weights[i + j]) * values[i + j];
  }
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

std::size_t count_greater_scalar(const double* values, std::size_t n, double threshold) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) count += values[i] > threshold ? 1 : 0;
  return count;
}

double sum_scalar(const double* values, std::size_t n) {
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    for (std::size_t j = 0; j < 4; ++j) lane[j] += values[i + j];
  }
  for (std::size_t j = 0; i + j < n; ++j) lane[j] += values[i + j];
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

}  // namespace detail
}  // namespace lbstats::kernels
