// Copyright 2026 The lbstats Authors.
// SPDX-License-Identifier: Apache-2.0

#include "lbstats/corrections.hpp"

#include <algorithm>
#include <cfenv>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace lbstats {

std::string_view to_string(FamilyPolicy policy) {
  switch (policy) {
    case FamilyPolicy::vs_winner: return "vs-winner";
    case FamilyPolicy::per_reference: return "per-reference";
    case FamilyPolicy::global: return "global";
  }
  return "unknown";
}

std::optional<FamilyPolicy> parse_family_policy(std::string_view text) {
  if (text == "vs-winner" || text == "vs_winner") return FamilyPolicy::vs_winner;
  if (text == "per-reference" || text == "per_reference") return FamilyPolicy::per_reference;
  if (text == "global") return FamilyPolicy::global;
  return std::nullopt;
}

std::vector<double> adjust(std::span<const double> p, CorrectionMethod method) {
  if (p.empty()) throw std::invalid_argument("cannot adjust an empty p-value family");
  for (double value : p) {
    if (!(value >= 0.0 && value <= 1.0)) throw std::invalid_argument("p-value outside [0, 1]");
  }
  const std::size_t k = p.size();
  const auto kd = static_cast<double>(k);
  std::vector<double> out(p.begin(), p.end());
  if (method == CorrectionMethod::none) return out;
  if (method == CorrectionMethod::bonferroni) {
    for (auto& value : out) value = std::min(1.0, kd * value);
    return out;
  }

  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return p[a] < p[b]; });

  if (method == CorrectionMethod::holm) {
    double running = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      const double scaled = static_cast<double>(k - j) * p[order[j]];
      running = std::max(running, scaled);
      out[order[j]] = std::min(1.0, running);
    }
    return out;
  }

  // Benjamini-Hochberg
  double running = 1.0;
  for (std::size_t j = k; j-- > 0;) {
    const double scaled = kd / static_cast<double>(j + 1) * p[order[j]];
    running = std::min(running, scaled);
    out[order[j]] = std::min(1.0, running);
  }
  return out;
}

std::map<PairId, double> adjust(const PValueFamily& family, CorrectionMethod method) {
  std::vector<double> raw;
  raw.reserve(family.entries.size());
  for (const auto& [id, p] : family.entries) raw.push_back(p);
  const auto adjusted = adjust(raw, method);
  std::map<PairId, double> out;
  for (std::size_t i = 0; i < adjusted.size(); ++i) {
    if (!out.emplace(family.entries[i].first, adjusted[i]).second) {
      throw std::invalid_argument("duplicate pair in p-value family");
    }
  }
  return out;
}

std::vector<PValueFamily> build_families(std::span<const std::string> ranked,
                                         const std::map<PairId, double>& raw,
                                         FamilyPolicy policy) {
  const std::size_t m = ranked.size();
  if (m < 2) throw std::invalid_argument("p-value families need at least 2 systems");
  auto entry = [&](std::size_t i, std::size_t j) {
    PairId id{ranked[i], ranked[j]};
    const auto it = raw.find(id);
    if (it == raw.end()) {
      throw std::invalid_argument("missing p-value for " + id.reference + " vs " + id.competitor);
    }
    return std::make_pair(std::move(id), it->second);
  };

  std::vector<PValueFamily> out;
  switch (policy) {
    case FamilyPolicy::vs_winner: {
      PValueFamily family{{}, policy};
      for (std::size_t j = 1; j < m; ++j) family.entries.push_back(entry(0, j));
      out.push_back(std::move(family));
      break;
    }
    case FamilyPolicy::per_reference:
      for (std::size_t i = 0; i + 1 < m; ++i) {
        PValueFamily family{{}, policy};
        for (std::size_t j = i + 1; j < m; ++j) family.entries.push_back(entry(i, j));
        out.push_back(std::move(family));
      }
      break;
    case FamilyPolicy::global: {
      PValueFamily family{{}, policy};
      for (std::size_t i = 0; i + 1 < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) family.entries.push_back(entry(i, j));
      }
      out.push_back(std::move(family));
      break;
    }
  }
  return out;
}

double round_half_even(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  const int saved = std::fegetround();
  std::fesetround(FE_TONEAREST);
  const double rounded = std::nearbyint(value * scale) / scale;
  std::fesetround(saved);
  return rounded;
}

}  // namespace lbstats
