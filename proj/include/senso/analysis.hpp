#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "senso/metrics.hpp"
#include "senso/record.hpp"
#include "senso/stats.hpp"

namespace senso {

// A published summary table kept as raw text cells so it can be echoed
// exactly as printed.
struct SummaryTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::string raw;
};

SummaryTable load_summary_table(const std::filesystem::path& path);

struct IndicatorComparison {
  GameId game = GameId::DimSum;
  Indicator indicator = Indicator::Inaccuracy;
  std::array<std::optional<double>, 3> means{};
  // Absent when fewer than two groups have data.
  std::optional<StatTestResult> kruskal_wallis;
  // Pooled normality screen; absent when n < 3 or the values are constant.
  std::optional<StatTestResult> shapiro_wilk;
};

struct AnalysisReport {
  std::string text;
  // CSV file name -> contents.
  std::map<std::string, std::string> tables;
  std::array<std::size_t, 3> group_n{};
  std::vector<IndicatorComparison> comparisons;
  std::optional<double> sus_mean;
  std::optional<double> sus_pseudo_respondent;
};

// Throws DomainError for an empty dataset.
AnalysisReport analyze(const Dataset& d, const std::optional<SummaryTable>& published = std::nullopt);

// report.txt plus every CSV table.
void write_report(const AnalysisReport& r, const std::filesystem::path& dir);

}  // namespace senso
