// Test plugin: fraction of exact matches for labels, and negated mean squared
// error for values.

#include <cstddef>
#include <cstring>

extern "C" {

double lbstats_score_labels(const char* const* gold, const char* const* pred, std::size_t n) {
  std::size_t hits = 0;
  for (std::size_t i = 0; i < n; ++i) hits += std::strcmp(gold[i], pred[i]) == 0;
  return n == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(n);
}

double lbstats_score_values(const double* gold, const double* pred, std::size_t n) {
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += (gold[i] - pred[i]) * (gold[i] - pred[i]);
  return n == 0 ? 0.0 : total / static_cast<double>(n);
}

const char* lbstats_metric_name() { return "match-rate"; }
}
