#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace senso {

struct Sample {
  std::string label;
  std::vector<double> values;
};

struct StatTestResult {
  // H for Kruskal-Wallis, W for Shapiro-Wilk.
  double statistic = 0.0;
  std::optional<int> df;
  double p_value = 1.0;
  bool tie_corrected = false;
};

// Mid-ranks with tie correction, chi-square approximation on k - 1 df.
// All-identical data gives H = 0, p = 1. Throws DomainError for fewer than
// two groups, an empty group, N < 3 or non-finite values.
StatTestResult kruskal_wallis(std::span<const Sample> groups);

// Royston's AS R94 approximation. Throws UnsupportedSizeError outside
// 3 <= n <= 5000 and DegenerateSampleError for zero-range samples.
StatTestResult shapiro_wilk(std::span<const double> x);
inline StatTestResult shapiro_wilk(const Sample& s) { return shapiro_wilk(s.values); }

struct DescriptiveSummary {
  std::size_t n = 0;
  double mean = 0.0;
  // n - 1 denominator; absent when n == 1.
  std::optional<double> sd;
  double min = 0.0;
  double max = 0.0;
};

DescriptiveSummary describe(std::span<const double> values);

struct CategoryCount {
  std::size_t count = 0;
  double pct = 0.0;
};

struct CategoricalSummary {
  std::size_t n = 0;
  std::map<std::string, CategoryCount> categories;
};

CategoricalSummary describe_categories(std::span<const std::string> values);

inline constexpr double kAlpha = 0.05;

// "0.003*" style: three decimals, star when below the significance level.
std::string format_p(double p);

}  // namespace senso
