// Copyright 2026 The lbstats Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace lbstats {

/// Name recorded in manifests. Changing the generator must change this.
inline constexpr std::string_view kRngFamily = "philox4x32-10";

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// The Philox4x32 bijection with 10 rounds (Salmon et al., Random123).
PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key) noexcept;

/// SplitMix64 finalizer; used to derive child seeds.
std::uint64_t mix64(std::uint64_t value) noexcept;

/// Child seed for an independent purpose/index under `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t purpose, std::uint64_t index) noexcept;

/// Counter-based stream keyed by (seed, stream). Draws depend only on the
/// key, the stream id and the draw position, so streams can be evaluated in
/// any order or on any thread.
class PhiloxStream {
 public:
  PhiloxStream(std::uint64_t seed, std::uint64_t stream) noexcept;

  std::uint32_t next_u32() noexcept;
  std::uint64_t next_u64() noexcept;
  /// Uniform on [0, bound); unbiased (Lemire's multiply-and-reject). bound > 0.
  std::uint32_t uniform_below(std::uint32_t bound) noexcept;
  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() noexcept;

 private:
  void refill() noexcept;

  PhiloxKey key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  PhiloxCounter buffer_{};
  unsigned used_ = 4;
};

}  // namespace lbstats
