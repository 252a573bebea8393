#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace senso {

// System Usability Scale: ten 1..5 items, odd items positively worded.
struct SusResponse {
  std::array<int, 10> items{};

  friend bool operator==(const SusResponse&, const SusResponse&) = default;
};

enum class SusBand { NotAcceptable, Marginal, Acceptable };
std::string_view to_string(SusBand b);

struct SusResult {
  double score = 0.0;
  SusBand band = SusBand::NotAcceptable;
};

// 2.5 x (sum over odd items of (r - 1) + sum over even items of (5 - r)).
// Works on item means too, which is how a published item table maps to a
// single pseudo-respondent score.
double sus_formula(std::span<const double, 10> items);

// Throws ValidationError naming each out-of-range item.
SusResult score_sus(const SusResponse& r);

// < 50 not acceptable, [50, 70] marginal, > 70 acceptable.
SusBand band_sus(double score);

enum class TlxDimension { Mental, Physical, Temporal, Performance, Effort, Frustration };
inline constexpr std::array<TlxDimension, 6> kTlxDimensions{TlxDimension::Mental,      TlxDimension::Physical,
                                                            TlxDimension::Temporal,    TlxDimension::Performance,
                                                            TlxDimension::Effort,      TlxDimension::Frustration};
std::string_view to_string(TlxDimension d);

// Raw (unweighted) NASA-TLX ratings, each 1..7.
struct TlxResponse {
  std::array<int, 6> ratings{};

  int operator[](TlxDimension d) const { return ratings[static_cast<std::size_t>(d)]; }
  friend bool operator==(const TlxResponse&, const TlxResponse&) = default;
};

void validate_tlx(const TlxResponse& r);

struct DimensionSummary {
  double mean = 0.0;
  // Absent for a single response (zero degrees of freedom).
  std::optional<double> sd;
};

struct TlxSummary {
  std::size_t n = 0;
  std::array<DimensionSummary, 6> dims{};
};

TlxSummary summarize_tlx(std::span<const TlxResponse> responses);

struct LikertFrequencies {
  std::string item;
  std::size_t n = 0;
  std::array<std::size_t, 5> counts{};
  std::array<double, 5> pct{};
  // Share of 4 and 5 answers, in percent.
  double top2_pct = 0.0;
};

// Responses must be 1..5 and non-empty.
LikertFrequencies likert_item_frequencies(std::string item, std::span<const int> responses);

// Named 5-point Likert items, e.g. pre-experience interest.
struct LikertSection {
  std::string name;
  std::vector<std::string> items;
};

using LikertAnswers = std::map<std::string, int>;

std::vector<LikertFrequencies> likert_frequencies(const LikertSection& section,
                                                  std::span<const LikertAnswers> responses);

const LikertSection& pre_interest_section();
const LikertSection& post_satisfaction_section();

struct QuestionnaireBundle {
  std::optional<SusResponse> sus;
  std::optional<TlxResponse> tlx;
  LikertAnswers pre_interest;
  LikertAnswers post_satisfaction;

  friend bool operator==(const QuestionnaireBundle&, const QuestionnaireBundle&) = default;
};

void validate_bundle(const QuestionnaireBundle& q);

}  // namespace senso
