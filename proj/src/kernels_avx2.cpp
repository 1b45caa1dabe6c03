// Copyright 2026 The lbstats Authors.
// SPDX-License-Identifier: Apache-2.0

#include "lbstats/kernels.hpp"

#if defined(LBSTATS_HAVE_AVX2_KERNELS)

#include <immintrin.h>

namespace lbstats::kernels::detail {

#define LBSTATS_AVX2 __attribute__((target("avx2")))

LBSTATS_AVX2
std::int64_t weighted_count_eq_avx2(const std::int32_t* weights, const std::int32_t* codes,
                                    std::size_t n, std::int32_t code) {
  const __m256i needle = _mm256_set1_epi32(code);
  __m256i acc_lo = _mm256_setzero_si256();
  __m256i acc_hi = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i c = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(codes + i));
    const __m256i w = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(weights + i));
    const __m256i hit = _mm256_and_si256(_mm256_cmpeq_epi32(c, needle), w);
    // widen to 64-bit lanes so long inputs cannot overflow
    acc_lo = _mm256_add_epi64(acc_lo, _mm256_cvtepi32_epi64(_mm256_castsi256_si128(hit)));
    acc_hi = _mm256_add_epi64(acc_hi, _mm256_cvtepi32_epi64(_mm256_extracti128_si256(hit, 1)));
  }
  alignas(32) std::int64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), _mm256_add_epi64(acc_lo, acc_hi));
  std::int64_t total = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < n; ++i) {
    if (codes[i] == code) total += weights[i];
  }
  return total;
}

LBSTATS_AVX2
double weighted_sum_avx2(const std::int32_t* weights, const double* values, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d w =
        _mm256_cvtepi32_pd(_mm_loadu_si128(reinterpret_cast<const __m128i*>(weights + i)));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(w, _mm256_loadu_pd(values + i)));
  }
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  for (std::size_t j = 0; i + j < n; ++j) {
    lane[j] += static_cast<double>(weights[i + j]) * values[i + j];
  }
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

LBSTATS_AVX2
std::size_t count_greater_avx2(const double* values, std::size_t n, double threshold) {
  const __m256d t = _mm256_set1_pd(threshold);
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d gt = _mm256_cmp_pd(_mm256_loadu_pd(values + i), t, _CMP_GT_OQ);
    count += static_cast<std::size_t>(__builtin_popcount(_mm256_movemask_pd(gt)));
  }
  for (; i < n; ++i) count += values[i] > threshold ? 1 : 0;
  return count;
}

LBSTATS_AVX2
double sum_avx2(const double* values, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(values + i));
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  for (std::size_t j = 0; i + j < n; ++j) lane[j] += values[i + j];
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

#undef LBSTATS_AVX2

}  // namespace lbstats::kernels::detail

#endif
