// Copyright 2026 The lbstats Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lbstats/data_model.hpp"

namespace lbstats {

struct PairId {
  std::string reference;
  std::string competitor;

  auto operator<=>(const PairId&) const = default;
};

enum class FamilyPolicy {
  vs_winner,      // winner against each other system
  per_reference,  // rank i against every lower rank, one family per i
  global,         // all m(m-1)/2 pairs together
};

std::string_view to_string(FamilyPolicy policy);
std::optional<FamilyPolicy> parse_family_policy(std::string_view text);

struct PValueFamily {
  std::vector<std::pair<PairId, double>> entries;
  FamilyPolicy policy = FamilyPolicy::per_reference;
};

/// Adjusted p-values in the input order. Throws std::invalid_argument on an
/// empty family or a p outside [0, 1].
///   bonferroni: min(1, k p)
///   holm:       step-down, running max of (k - j + 1) p_(j)
///   bh:         step-up, running min of (k / j) p_(j)
std::vector<double> adjust(std::span<const double> p_values, CorrectionMethod method);

std::map<PairId, double> adjust(const PValueFamily& family, CorrectionMethod method);

/// Splits the pairwise p-values of best-first ranked systems into families.
/// `raw` must hold an entry (ranked[i], ranked[j]) for every i < j that the
/// policy needs. Throws std::invalid_argument with fewer than two systems.
std::vector<PValueFamily> build_families(std::span<const std::string> ranked,
                                         const std::map<PairId, double>& raw,
                                         FamilyPolicy policy);

/// Rounds to `decimals` places, ties to even (on the binary value).
double round_half_even(double value, int decimals);

}  // namespace lbstats
