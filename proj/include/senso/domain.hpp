#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace senso {

enum class Gender { Male, Female, Other };
enum class EducationBand { Y0_3, Y4_6, Y7_9, Y10_12, Y12_Plus };
enum class AgeGroup { G60_69, G70_79, G80_Plus };
enum class GameId { DimSum, Steamer, Cashier };

inline constexpr GameId kGameOrder[] = {GameId::DimSum, GameId::Steamer, GameId::Cashier};
inline constexpr AgeGroup kAgeGroups[] = {AgeGroup::G60_69, AgeGroup::G70_79, AgeGroup::G80_Plus};
inline constexpr EducationBand kEducationBands[] = {EducationBand::Y0_3, EducationBand::Y4_6,
                                                    EducationBand::Y7_9, EducationBand::Y10_12,
                                                    EducationBand::Y12_Plus};

inline constexpr int kMinAge = 60;
inline constexpr int kMaxAge = 200;

// Self-reported technology background. Likert items are 1..5.
struct TechBackground {
  int gaming_frequency = 1;
  int computer_proficiency = 1;
  bool prior_vr = false;
  bool prior_motion_capture = false;
  bool sensory_impairment = false;

  friend bool operator==(const TechBackground&, const TechBackground&) = default;
};

struct ParticipantProfile {
  std::string participant_id;
  int age = kMinAge;
  Gender gender = Gender::Other;
  EducationBand education = EducationBand::Y12_Plus;
  int moca_score = 0;
  TechBackground tech;

  friend bool operator==(const ParticipantProfile&, const ParticipantProfile&) = default;
};

// Researcher-adjustable task parameters. Durations are in seconds; the
// change cap is in whole currency units.
struct DifficultyParams {
  int dimsum_item_count = 6;
  double memorize_duration_s = 10.0;
  double dimsum_time_limit_s = 120.0;
  int steamer_item_count = 4;
  double cook_time_s = 20.0;
  double overcook_time_s = 35.0;
  double steamer_time_limit_s = 300.0;
  int cashier_trial_count = 5;
  double cashier_time_limit_s = 90.0;
  int max_change_amount = 100;
  double tutorial_duration_s = 30.0;

  friend bool operator==(const DifficultyParams&, const DifficultyParams&) = default;
};

// Throws DomainError for ages below the inclusion bound or above the sanity cap.
AgeGroup derive_age_group(int age);

// Raw, unchecked profile fields as they arrive from a form or file.
struct RawProfile {
  std::string participant_id;
  int age = 0;
  std::string gender;
  std::string education;
  int moca_score = -1;
  TechBackground tech;
};

// Checks every invariant and throws ValidationError naming each bad field.
ParticipantProfile validate_profile(const RawProfile& raw);
void validate_params(const DifficultyParams& params);

std::string_view to_string(Gender g);
std::string_view to_string(EducationBand e);
std::string_view to_string(AgeGroup g);
std::string_view to_string(GameId g);
// Human-readable label, e.g. "60-69" or "Dim Sum".
std::string_view label(AgeGroup g);
std::string_view label(GameId g);
std::string_view label(EducationBand e);

std::optional<Gender> parse_gender(std::string_view s);
std::optional<EducationBand> parse_education(std::string_view s);
std::optional<AgeGroup> parse_age_group(std::string_view s);
std::optional<GameId> parse_game(std::string_view s);

}  // namespace senso
