// Copyright 2026 The lbstats Authors.
// SPDX-License-Identifier: Apache-2.0

#include <atomic>
#include <cstdlib>
#include <string_view>

#include "lbstats/kernels.hpp"

namespace lbstats::kernels {

namespace {

constexpr KernelTable kScalar{
    Isa::scalar,
    detail::weighted_count_eq_scalar,
    detail::weighted_sum_scalar,
    detail::count_greater_scalar,
    detail::sum_scalar,
};

#if defined(LBSTATS_HAVE_AVX2_KERNELS)
constexpr KernelTable kAvx2{
    Isa::avx2,
    detail::weighted_count_eq_avx2,
    detail::weighted_sum_avx2,
    detail::count_greater_avx2,
    detail::sum_avx2,
};

bool cpu_has_avx2() noexcept {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
}
#endif

const KernelTable* initial_table() noexcept {
  const KernelTable* best = avx2_table() ? avx2_table() : &kScalar;
  const char* env = std::getenv("LBSTATS_KERNELS");
  if (env == nullptr) return best;
  const std::string_view choice(env);
  if (choice == "scalar") return &kScalar;
  if (choice == "avx2" && avx2_table()) return avx2_table();
  return best;
}

std::atomic<const KernelTable*>& current() noexcept {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

}  // namespace

std::string_view to_string(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

const KernelTable& scalar_table() noexcept { return kScalar; }

const KernelTable* avx2_table() noexcept {
#if defined(LBSTATS_HAVE_AVX2_KERNELS)
  static const bool available = cpu_has_avx2();
  return available ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

bool supported(Isa isa) noexcept { return isa == Isa::scalar || avx2_table() != nullptr; }

const KernelTable& active() noexcept { return *current().load(std::memory_order_relaxed); }

bool select(Isa isa) noexcept {
  if (!supported(isa)) return false;
  current().store(isa == Isa::avx2 ? avx2_table() : &kScalar, std::memory_order_relaxed);
  return true;
}

}  // namespace lbstats::kernels
