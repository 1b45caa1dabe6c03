// Copyright 2026 The lbstats Authors.
// SPDX-License-Identifier: Apache-2.0

// Inner loops of the bootstrap: weighted class counts, weighted sums, and
// threshold counts over replicate-length arrays.
//
// Each kernel has a scalar reference and an AVX2 variant. The active table is
// chosen once at startup from CPUID, or from LBSTATS_KERNELS=scalar|avx2.
// Both variants produce bit-identical results: floating sums accumulate in
// four interleaved lanes (lane j takes elements i with i % 4 == j) and are
// reduced as (l0 + l1) + (l2 + l3) in either implementation.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace lbstats::kernels {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa);

struct KernelTable {
  Isa isa;
  /// sum of weights[i] over i with codes[i] == code
  std::int64_t (*weighted_count_eq)(const std::int32_t* weights, const std::int32_t* codes,
                                    std::size_t n, std::int32_t code);
  /// sum of weights[i] * values[i]
  double (*weighted_sum)(const std::int32_t* weights, const double* values, std::size_t n);
  /// number of i with values[i] > threshold (NaN never counts)
  std::size_t (*count_greater)(const double* values, std::size_t n, double threshold);
  double (*sum)(const double* values, std::size_t n);
};

const KernelTable& scalar_table() noexcept;
/// nullptr when the build or the CPU lacks AVX2.
const KernelTable* avx2_table() noexcept;

bool supported(Isa isa) noexcept;

/// Kernel table used by the free functions below.
const KernelTable& active() noexcept;

/// Overrides the automatic choice. Returns false (and changes nothing) when
/// the ISA is unsupported.
bool select(Isa isa) noexcept;

inline std::int64_t weighted_count_eq(std::span<const std::int32_t> weights,
                                      std::span<const std::int32_t> codes, std::int32_t code) {
  return active().weighted_count_eq(weights.data(), codes.data(), codes.size(), code);
}

inline double weighted_sum(std::span<const std::int32_t> weights, std::span<const double> values) {
  return active().weighted_sum(weights.data(), values.data(), values.size());
}

inline std::size_t count_greater(std::span<const double> values, double threshold) {
  return active().count_greater(values.data(), values.size(), threshold);
}

inline double sum(std::span<const double> values) {
  return active().sum(values.data(), values.size());
}

/// weights[i] = number of occurrences of i in indices. `weights` must be
/// zeroed by the caller and cover every index.
void accumulate_multiplicities(std::span<const std::uint32_t> indices,
                               std::span<std::int32_t> weights) noexcept;

namespace detail {
std::int64_t weighted_count_eq_scalar(const std::int32_t*, const std::int32_t*, std::size_t,
                                      std::int32_t);
double weighted_sum_scalar(const std::int32_t*, const double*, std::size_t);
std::size_t count_greater_scalar(const double*, std::size_t, double);
double sum_scalar(const double*, std::size_t);

#if defined(__x86_64__) || defined(_M_X64)
#define LBSTATS_HAVE_AVX2_KERNELS 1
std::int64_t weighted_count_eq_avx2(const std::int32_t*, const std::int32_t*, std::size_t,
                                    std::int32_t);
double weighted_sum_avx2(const std::int32_t*, const double*, std::size_t);
std::size_t count_greater_avx2(const double*, std::size_t, double);
double sum_avx2(const double*, std::size_t);
#endif
}  // namespace detail

}  // namespace lbstats::kernels
