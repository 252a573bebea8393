#include "senso/questionnaire.hpp"

#include <algorithm>
#include <cmath>

#include "senso/errors.hpp"

namespace senso {

std::string_view to_string(SusBand b) {
  switch (b) {
    case SusBand::NotAcceptable: return "NotAcceptable";
    case SusBand::Marginal: return "Marginal";
    case SusBand::Acceptable: return "Acceptable";
  }
  return "NotAcceptable";
}

double sus_formula(std::span<const double, 10> items) {
  double sum = 0.0;
  for (std::size_t i = 0; i < 10; ++i) sum += (i % 2 == 0) ? items[i] - 1.0 : 5.0 - items[i];
  return 2.5 * sum;
}

SusResult score_sus(const SusResponse& r) {
  std::vector<std::string> bad;
  for (std::size_t i = 0; i < 10; ++i)
    if (r.items[i] < 1 || r.items[i] > 5)
      bad.push_back("sus item " + std::to_string(i + 1) + ": " + std::to_string(r.items[i]) + " outside [1, 5]");
  if (!bad.empty()) throw ValidationError(std::move(bad));
  std::array<double, 10> v{};
  for (std::size_t i = 0; i < 10; ++i) v[i] = r.items[i];
  const double score = sus_formula(v);
  return {score, band_sus(score)};
}

SusBand band_sus(double score) {
  if (!(score >= 0.0 && score <= 100.0)) throw ValidationError({"sus score outside [0, 100]"});
  if (score < 50.0) return SusBand::NotAcceptable;
  if (score <= 70.0) return SusBand::Marginal;
  return SusBand::Acceptable;
}

std::string_view to_string(TlxDimension d) {
  switch (d) {
    case TlxDimension::Mental: return "mental";
    case TlxDimension::Physical: return "physical";
    case TlxDimension::Temporal: return "temporal";
    case TlxDimension::Performance: return "performance";
    case TlxDimension::Effort: return "effort";
    case TlxDimension::Frustration: return "frustration";
  }
  return "";
}

void validate_tlx(const TlxResponse& r) {
  std::vector<std::string> bad;
  for (auto d : kTlxDimensions)
    if (r[d] < 1 || r[d] > 7) bad.push_back("tlx " + std::string(to_string(d)) + ": outside [1, 7]");
  if (!bad.empty()) throw ValidationError(std::move(bad));
}

TlxSummary summarize_tlx(std::span<const TlxResponse> responses) {
  if (responses.empty()) throw DomainError("no NASA-TLX responses");
  for (const auto& r : responses) validate_tlx(r);
  TlxSummary s;
  s.n = responses.size();
  const auto n = static_cast<double>(s.n);
  for (std::size_t d = 0; d < 6; ++d) {
    double sum = 0.0;
    for (const auto& r : responses) sum += r.ratings[d];
    const double mean = sum / n;
    s.dims[d].mean = mean;
    if (s.n > 1) {
      double ss = 0.0;
      for (const auto& r : responses) ss += (r.ratings[d] - mean) * (r.ratings[d] - mean);
      s.dims[d].sd = std::sqrt(ss / (n - 1.0));
    }
  }
  return s;
}

LikertFrequencies likert_item_frequencies(std::string item, std::span<const int> responses) {
  if (responses.empty()) throw DomainError("no responses for '" + item + "'");
  LikertFrequencies f;
  f.item = std::move(item);
  f.n = responses.size();
  for (int r : responses) {
    if (r < 1 || r > 5) throw ValidationError({f.item + ": response " + std::to_string(r) + " outside [1, 5]"});
    ++f.counts[static_cast<std::size_t>(r - 1)];
  }
  const auto n = static_cast<double>(f.n);
  for (std::size_t k = 0; k < 5; ++k) f.pct[k] = 100.0 * static_cast<double>(f.counts[k]) / n;
  f.top2_pct = 100.0 * static_cast<double>(f.counts[3] + f.counts[4]) / n;
  return f;
}

std::vector<LikertFrequencies> likert_frequencies(const LikertSection& section,
                                                  std::span<const LikertAnswers> responses) {
  if (responses.empty()) throw DomainError("no responses for section '" + section.name + "'");
  std::vector<LikertFrequencies> out;
  for (const auto& item : section.items) {
    std::vector<int> values;
    for (const auto& r : responses) {
      const auto it = r.find(item);
      if (it != r.end()) values.push_back(it->second);
    }
    if (!values.empty()) out.push_back(likert_item_frequencies(item, values));
  }
  return out;
}

const LikertSection& pre_interest_section() {
  static const LikertSection s{"pre_interest", {"participate_gamified_program", "sports_games_attract_elderly"}};
  return s;
}

const LikertSection& post_satisfaction_section() {
  static const LikertSection s{"post_satisfaction",
                               {"overall_satisfied", "like_practicing_gamified", "rehab_games_motivate"}};
  return s;
}

void validate_bundle(const QuestionnaireBundle& q) {
  if (q.sus) score_sus(*q.sus);
  if (q.tlx) validate_tlx(*q.tlx);
  std::vector<std::string> bad;
  auto check = [&](const LikertSection& sec, const LikertAnswers& answers) {
    for (const auto& [item, v] : answers) {
      if (std::find(sec.items.begin(), sec.items.end(), item) == sec.items.end())
        bad.push_back(sec.name + "." + item + ": unknown item");
      else if (v < 1 || v > 5)
        bad.push_back(sec.name + "." + item + ": outside [1, 5]");
    }
  };
  check(pre_interest_section(), q.pre_interest);
  check(post_satisfaction_section(), q.post_satisfaction);
  if (!bad.empty()) throw ValidationError(std::move(bad));
}

}  // namespace senso
