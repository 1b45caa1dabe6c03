// Raw p-values of the ten pairwise comparisons of the five Basque systems,
// ranked best-first, as published.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "lbstats/corrections.hpp"

namespace fixtures {

inline const std::vector<std::string> kBasqueRanked{"WordUp.01", "WordUp.02", "MultiAztertest.01",
                                                    "SQYQP.01", "MultiAztertest.02"};

inline std::map<lbstats::PairId, double> basque_raw_p() {
  const auto& r = kBasqueRanked;
  return {{{r[0], r[1]}, 0.2030}, {{r[0], r[2]}, 0.0551}, {{r[0], r[3]}, 0.0012},
          {{r[0], r[4]}, 0.0000}, {{r[1], r[2]}, 0.1490}, {{r[1], r[3]}, 0.0039},
          {{r[1], r[4]}, 0.0000}, {{r[2], r[3]}, 0.0330}, {{r[2], r[4]}, 0.0003},
          {{r[3], r[4]}, 0.0427}};
}

struct AdjustedRow {
  double bonferroni, fdr, holm, bh;
};

/// Published adjusted columns, same order as the raw p-values.
inline std::map<lbstats::PairId, AdjustedRow> basque_adjusted() {
  const auto& r = kBasqueRanked;
  return {{{r[0], r[1]}, {0.8120, 0.2030, 0.2030, 0.2030}},
          {{r[0], r[2]}, {0.2204, 0.0735, 0.1102, 0.0735}},
          {{r[0], r[3]}, {0.0048, 0.0024, 0.0036, 0.0024}},
          {{r[0], r[4]}, {0.0000, 0.0000, 0.0000, 0.0000}},
          {{r[1], r[2]}, {0.4470, 0.1490, 0.1490, 0.1490}},
          {{r[1], r[3]}, {0.0117, 0.0058, 0.0078, 0.0058}},
          {{r[1], r[4]}, {0.0000, 0.0000, 0.0000, 0.0000}},
          {{r[2], r[3]}, {0.0660, 0.0330, 0.0330, 0.0330}},
          {{r[2], r[4]}, {0.0006, 0.0006, 0.0006, 0.0006}},
          {{r[3], r[4]}, {0.0427, 0.0427, 0.0427, 0.0427}}};
}

inline const std::vector<double> kBasqueScores{0.5734, 0.5465, 0.5024, 0.4256, 0.3428};
inline const std::vector<double> kSpanishScores{0.8092, 0.7906, 0.7410, 0.6738, 0.6404};

}  // namespace fixtures
