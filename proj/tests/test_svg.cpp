#include <gtest/gtest.h>

#include <regex>

#include "lbstats/io/svg.hpp"

namespace lbstats::io {
namespace {

std::vector<std::string> attribute_values(const std::string& svg, const std::string& element,
                                          const std::string& attribute) {
  const std::regex pattern("<" + element + "[^>]*\\b" + attribute + "=\"([^\"]*)\"");
  std::vector<std::string> out;
  for (std::sregex_iterator it(svg.begin(), svg.end(), pattern), end; it != end; ++it) {
    out.push_back((*it)[1]);
  }
  return out;
}

TEST(ForestPlot, BestFirstWithExactData) {
  std::vector<PerformanceSummary> rows{{"mid", 0.50, 0.50, 0.45, 0.55, {}},
                                       {"top", 0.57, 0.57, 0.50, 0.64, {}},
                                       {"low", 0.34, 0.34, 0.29, 0.40, {}}};
  const auto plot = render_forest_plot(rows, Direction::higher_better);
  EXPECT_EQ(attribute_values(plot.svg, "g", "data-system"),
            (std::vector<std::string>{"top", "mid", "low"}));
  EXPECT_EQ(std::stod(attribute_values(plot.svg, "g", "data-lci")[0]), 0.50);
  EXPECT_EQ(plot.data["rows"][0]["system"], "top");
  EXPECT_EQ(plot.data["kind"], "forest");

  const auto lower = render_forest_plot(rows, Direction::lower_better);
  EXPECT_EQ(attribute_values(lower.svg, "g", "data-system").front(), "low");
  EXPECT_THROW(render_forest_plot({}, Direction::higher_better), std::invalid_argument);
}

TEST(ForestPlot, EscapesNames) {
  std::vector<PerformanceSummary> rows{{"a<b&\"c\"", 0.5, 0.5, 0.4, 0.6, {}}};
  const auto plot = render_forest_plot(rows, Direction::higher_better);
  EXPECT_NE(plot.svg.find("a&lt;b&amp;&quot;c&quot;"), std::string::npos);
}

DifferenceSummary diff(std::string competitor, double lci, double mean, double uci) {
  DifferenceSummary d;
  d.reference = "WordUp.01";
  d.competitor = std::move(competitor);
  d.lci = lci;
  d.boot_mean = mean;
  d.uci = uci;
  d.observed_delta = mean;
  d.contains_zero = lci <= 0.0 && 0.0 <= uci;
  return d;
}

TEST(DifferencePlot, RedWhenIntervalContainsZero) {
  const std::vector<DifferenceSummary> rows{diff("WordUp.02", -0.0371, 0.0269, 0.0910),
                                            diff("MultiAztertest.01", 0.0211, 0.0682, 0.1149),
                                            diff("self", 0.0, 0.0, 0.0)};
  const auto plot = render_difference_plot(rows);
  EXPECT_EQ(attribute_values(plot.svg, "line", "stroke").size() >= 3, true);
  const std::regex ci("<line class=\"ci\"[^>]*stroke=\"([a-z]+)\"");
  std::vector<std::string> colors;
  for (std::sregex_iterator it(plot.svg.begin(), plot.svg.end(), ci), end; it != end; ++it) {
    colors.push_back((*it)[1]);
  }
  EXPECT_EQ(colors, (std::vector<std::string>{"red", "green", "red"}));
  EXPECT_EQ(attribute_values(plot.svg, "g", "data-contains-zero"),
            (std::vector<std::string>{"true", "false", "true"}));
  EXPECT_EQ(plot.data["rows"][1]["color"], "green");
  EXPECT_THROW(render_difference_plot({}), std::invalid_argument);
}

PairedDelta deltas(std::vector<double> values, double observed) {
  PairedDelta pd;
  pd.reference = "r";
  pd.competitor = "c";
  pd.delta_values = std::move(values);
  pd.observed_delta = observed;
  return pd;
}

std::size_t beyond(const std::vector<HistogramBin>& bins, double edge) {
  std::size_t total = 0;
  for (const auto& b : bins) {
    if (b.lo >= edge) total += b.count;
  }
  return total;
}

TEST(DeltaHistogram, MassRightOfTwoDeltaIsPValueTimesB) {
  std::vector<double> values;
  for (int i = 0; i < 997; ++i) values.push_back(0.03 + 0.08 * std::sin(i * 1.3));
  const auto pd = deltas(values, 0.0269);
  const double two_delta = 2 * pd.observed_delta;
  const auto expected = static_cast<std::size_t>(std::round(p_value(pd) * values.size()));
  for (std::size_t bins : {0u, 5u, 17u, 64u}) {
    const auto hist = delta_histogram(pd, bins);
    std::size_t total = 0;
    for (const auto& b : hist) total += b.count;
    EXPECT_EQ(total, values.size());
    EXPECT_EQ(beyond(hist, two_delta), expected) << bins;
    bool edge = false;
    for (const auto& b : hist) edge |= b.hi == two_delta;
    EXPECT_TRUE(edge);
  }
}

TEST(DeltaHistogram, DegenerateInputs) {
  const auto equal = delta_histogram(deltas(std::vector<double>(50, 0.1), 0.1));
  std::size_t total = 0;
  for (const auto& b : equal) total += b.count;
  EXPECT_EQ(total, 50u);
  EXPECT_EQ(beyond(equal, 0.2), 0u);

  const auto zero = delta_histogram(deltas({-0.2, -0.1, 0.0, 0.1, 0.3}, 0.0), 4);
  EXPECT_EQ(beyond(zero, 0.0), 2u);

  const auto self = delta_histogram(deltas(std::vector<double>(10, 0.0), 0.0));
  ASSERT_EQ(self.size(), 1u);
  EXPECT_EQ(self[0].count, 10u);
  EXPECT_THROW(render_delta_histogram(deltas({}, 0.0)), std::invalid_argument);
}

TEST(DeltaHistogram, RenderedPlotCarriesReferenceLines) {
  const auto pd = deltas({0.01, 0.02, 0.03, 0.05, 0.07, 0.2}, 0.03);
  const auto plot = render_delta_histogram(pd, 3);
  EXPECT_EQ(attribute_values(plot.svg, "line", "data-label"),
            (std::vector<std::string>{"0", "delta", "2delta"}));
  EXPECT_EQ(plot.data["count_beyond_two_delta"], 2);
  std::size_t bars = 0;
  for (const auto& c : attribute_values(plot.svg, "rect", "data-count")) bars += std::stoul(c);
  EXPECT_EQ(bars, 6u);
}

}  // namespace
}  // namespace lbstats::io
