#include "senso/domain.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "senso/errors.hpp"

namespace senso {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string join_fields(const std::vector<std::string>& fields) {
  std::string msg = "validation failed:";
  for (const auto& f : fields) msg += " " + f + ";";
  return msg;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> fields)
    : Error(join_fields(fields)), fields_(std::move(fields)) {}

ParseError::ParseError(const std::string& what, std::size_t line)
    : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

SchemaVersionError::SchemaVersionError(int found, int expected)
    : Error("schema version " + std::to_string(found) + " not supported (expected " +
            std::to_string(expected) + ")"),
      found_(found) {}

StreamError::StreamError(const std::string& what, std::size_t index)
    : Error("frame " + std::to_string(index) + ": " + what), index_(index) {}

AgeGroup derive_age_group(int age) {
  if (age < kMinAge) throw DomainError("age " + std::to_string(age) + " is below 60");
  if (age > kMaxAge) throw DomainError("age " + std::to_string(age) + " exceeds sanity cap");
  if (age <= 69) return AgeGroup::G60_69;
  if (age <= 79) return AgeGroup::G70_79;
  return AgeGroup::G80_Plus;
}

ParticipantProfile validate_profile(const RawProfile& raw) {
  std::vector<std::string> bad;
  if (raw.participant_id.empty()) bad.emplace_back("participant_id: empty");
  if (raw.age < kMinAge || raw.age > kMaxAge)
    bad.emplace_back("age: " + std::to_string(raw.age) + " outside [60, 200]");
  if (raw.moca_score < 0 || raw.moca_score > 30)
    bad.emplace_back("moca_score: " + std::to_string(raw.moca_score) + " outside [0, 30]");
  const auto gender = parse_gender(raw.gender);
  if (!gender) bad.emplace_back("gender: unknown value '" + raw.gender + "'");
  const auto education = parse_education(raw.education);
  if (!education) bad.emplace_back("education: unknown value '" + raw.education + "'");
  auto likert = [&](const char* name, int v) {
    if (v < 1 || v > 5) bad.emplace_back(std::string("tech.") + name + ": outside [1, 5]");
  };
  likert("gaming_frequency", raw.tech.gaming_frequency);
  likert("computer_proficiency", raw.tech.computer_proficiency);
  if (!bad.empty()) throw ValidationError(std::move(bad));

  ParticipantProfile p;
  p.participant_id = raw.participant_id;
  p.age = raw.age;
  p.gender = *gender;
  p.education = *education;
  p.moca_score = raw.moca_score;
  p.tech = raw.tech;
  return p;
}

void validate_params(const DifficultyParams& p) {
  std::vector<std::string> bad;
  auto positive = [&](const char* name, double v) {
    if (!(v > 0.0) || !std::isfinite(v)) bad.emplace_back(std::string(name) + ": must be > 0");
  };
  auto at_least_one = [&](const char* name, int v) {
    if (v < 1) bad.emplace_back(std::string(name) + ": must be >= 1");
  };
  at_least_one("dimsum_item_count", p.dimsum_item_count);
  positive("memorize_duration_s", p.memorize_duration_s);
  positive("dimsum_time_limit_s", p.dimsum_time_limit_s);
  at_least_one("steamer_item_count", p.steamer_item_count);
  positive("cook_time_s", p.cook_time_s);
  positive("overcook_time_s", p.overcook_time_s);
  if (!(p.overcook_time_s > p.cook_time_s))
    bad.emplace_back("overcook_time_s: must exceed cook_time_s");
  positive("steamer_time_limit_s", p.steamer_time_limit_s);
  at_least_one("cashier_trial_count", p.cashier_trial_count);
  positive("cashier_time_limit_s", p.cashier_time_limit_s);
  at_least_one("max_change_amount", p.max_change_amount);
  if (!(p.tutorial_duration_s >= 0.0) || !std::isfinite(p.tutorial_duration_s))
    bad.emplace_back("tutorial_duration_s: must be >= 0");
  if (!bad.empty()) throw ValidationError(std::move(bad));
}

std::string_view to_string(Gender g) {
  switch (g) {
    case Gender::Male: return "male";
    case Gender::Female: return "female";
    case Gender::Other: return "other";
  }
  return "other";
}

std::string_view to_string(EducationBand e) {
  switch (e) {
    case EducationBand::Y0_3: return "Y0_3";
    case EducationBand::Y4_6: return "Y4_6";
    case EducationBand::Y7_9: return "Y7_9";
    case EducationBand::Y10_12: return "Y10_12";
    case EducationBand::Y12_Plus: return "Y12_PLUS";
  }
  return "Y12_PLUS";
}

std::string_view to_string(AgeGroup g) {
  switch (g) {
    case AgeGroup::G60_69: return "G60_69";
    case AgeGroup::G70_79: return "G70_79";
    case AgeGroup::G80_Plus: return "G80_PLUS";
  }
  return "G80_PLUS";
}

std::string_view to_string(GameId g) {
  switch (g) {
    case GameId::DimSum: return "DimSum";
    case GameId::Steamer: return "Steamer";
    case GameId::Cashier: return "Cashier";
  }
  return "DimSum";
}

std::string_view label(AgeGroup g) {
  switch (g) {
    case AgeGroup::G60_69: return "60-69";
    case AgeGroup::G70_79: return "70-79";
    case AgeGroup::G80_Plus: return "80+";
  }
  return "80+";
}

std::string_view label(GameId g) {
  switch (g) {
    case GameId::DimSum: return "Dim Sum";
    case GameId::Steamer: return "Steamer";
    case GameId::Cashier: return "Cashier";
  }
  return "Dim Sum";
}

std::string_view label(EducationBand e) {
  switch (e) {
    case EducationBand::Y0_3: return "0 to 3 years";
    case EducationBand::Y4_6: return "4 to 6 years";
    case EducationBand::Y7_9: return "7 to 9 years";
    case EducationBand::Y10_12: return "10 to 12 years";
    case EducationBand::Y12_Plus: return "Above 12 years";
  }
  return "Above 12 years";
}

std::optional<Gender> parse_gender(std::string_view s) {
  const auto v = lower(s);
  if (v == "male" || v == "m") return Gender::Male;
  if (v == "female" || v == "f") return Gender::Female;
  if (v == "other") return Gender::Other;
  return std::nullopt;
}

std::optional<EducationBand> parse_education(std::string_view s) {
  for (auto e : kEducationBands)
    if (lower(to_string(e)) == lower(s)) return e;
  return std::nullopt;
}

std::optional<AgeGroup> parse_age_group(std::string_view s) {
  for (auto g : kAgeGroups)
    if (to_string(g) == s || label(g) == s) return g;
  return std::nullopt;
}

std::optional<GameId> parse_game(std::string_view s) {
  for (auto g : kGameOrder)
    if (to_string(g) == s || label(g) == s) return g;
  return std::nullopt;
}

}  // namespace senso
