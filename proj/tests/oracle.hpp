// Independent reference implementations used as test oracles. Written for
// clarity over materialized vectors; share no code with the library.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <string>
#include <vector>

namespace oracle {

inline double accuracy(const std::vector<std::string>& gold, const std::vector<std::string>& pred) {
  std::size_t hits = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) hits += gold[i] == pred[i];
  return static_cast<double>(hits) / static_cast<double>(gold.size());
}

inline double f1(const std::vector<std::string>& gold, const std::vector<std::string>& pred,
                 const std::string& c) {
  double tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (pred[i] == c && gold[i] == c) tp += 1;
    if (pred[i] == c && gold[i] != c) fp += 1;
    if (pred[i] != c && gold[i] == c) fn += 1;
  }
  const double denom = 2 * tp + fp + fn;
  return denom == 0 ? 0.0 : 2 * tp / denom;
}

inline double macro_f1(const std::vector<std::string>& gold, const std::vector<std::string>& pred,
                       const std::vector<std::string>& classes) {
  double total = 0;
  for (const auto& c : classes) total += f1(gold, pred, c);
  return total / static_cast<double>(classes.size());
}

inline double mae(const std::vector<double>& gold, const std::vector<double>& pred) {
  double total = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) total += std::abs(gold[i] - pred[i]);
  return total / static_cast<double>(gold.size());
}

template <class T>
std::vector<T> take(const std::vector<T>& v, const std::vector<std::uint32_t>& idx) {
  std::vector<T> out;
  for (auto i : idx) out.push_back(v[i]);
  return out;
}

/// Type-7 quantile of an unsorted sample.
inline double quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double h = (static_cast<double>(v.size()) - 1) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

/// Textbook adjustments written from the definitions.
inline std::vector<double> bonferroni(const std::vector<double>& p) {
  std::vector<double> out;
  for (double x : p) out.push_back(std::min(1.0, x * static_cast<double>(p.size())));
  return out;
}

inline std::vector<double> holm(const std::vector<double>& p) {
  const std::size_t k = p.size();
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return p[a] < p[b]; });
  std::vector<double> out(k);
  for (std::size_t i = 0; i < k; ++i) {
    double best = 0;
    for (std::size_t j = 0; j <= i; ++j) {
      best = std::max(best, static_cast<double>(k - j) * p[order[j]]);
    }
    out[order[i]] = std::min(1.0, best);
  }
  return out;
}

inline std::vector<double> bh(const std::vector<double>& p) {
  const std::size_t k = p.size();
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return p[a] < p[b]; });
  std::vector<double> out(k);
  for (std::size_t i = 0; i < k; ++i) {
    double best = 1.0;
    for (std::size_t j = i; j < k; ++j) {
      best = std::min(best, static_cast<double>(k) / static_cast<double>(j + 1) * p[order[j]]);
    }
    out[order[i]] = std::min(1.0, best);
  }
  return out;
}

}  // namespace oracle
