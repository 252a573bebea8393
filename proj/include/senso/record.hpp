#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "senso/cashier.hpp"
#include "senso/domain.hpp"
#include "senso/events.hpp"
#include "senso/layout.hpp"
#include "senso/metrics.hpp"
#include "senso/questionnaire.hpp"
#include "senso/scent.hpp"

namespace senso {

inline constexpr int kSchemaVersion = 1;

// Everything besides the profile and seed that shapes a session.
struct SessionConfig {
  DifficultyParams params;
  std::vector<Denomination> denominations = default_denominations();
  std::vector<std::string> dimsum_catalog = default_dimsum_catalog();
  bool skip_tutorials = false;

  friend bool operator==(const SessionConfig&, const SessionConfig&) = default;
};

struct SessionRecord {
  int schema_version = kSchemaVersion;
  std::string session_id;
  std::string created_at;
  ParticipantProfile profile;
  SessionConfig config;
  std::uint64_t seed = 0;
  std::vector<GameEvent> events;
  std::map<GameId, TaskMetrics> metrics;
  std::vector<Emission> scents;
  QuestionnaireBundle questionnaires;

  friend bool operator==(const SessionRecord&, const SessionRecord&) = default;
};

nlohmann::json to_json(const ParticipantProfile& p);
ParticipantProfile profile_from_json(const nlohmann::json& j);
nlohmann::json to_json(const DifficultyParams& p);
// Missing keys keep their defaults.
DifficultyParams params_from_json(const nlohmann::json& j, const DifficultyParams& base = {});
nlohmann::json to_json(const SessionConfig& c);
SessionConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const GameEvent& e);
GameEvent event_from_json(const nlohmann::json& j);
nlohmann::json to_json(const TaskMetrics& m);
TaskMetrics metrics_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Emission& e);
Emission emission_from_json(const nlohmann::json& j);
nlohmann::json to_json(const QuestionnaireBundle& q);
QuestionnaireBundle questionnaires_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SessionRecord& r);
// Throws SchemaVersionError for other versions and ParseError for bad shapes.
SessionRecord record_from_json(const nlohmann::json& j);

// Canonical text form: 2-space indented JSON with a trailing newline.
std::string serialize_record(const SessionRecord& r);
SessionRecord parse_record(const std::string& text);
void save_record(const std::filesystem::path& path, const SessionRecord& r);
SessionRecord load_record(const std::filesystem::path& path);

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);
// Digest of the canonical serialization.
std::uint64_t record_digest(const SessionRecord& r);

struct Dataset {
  std::vector<SessionRecord> records;
  nlohmann::json provenance = nlohmann::json::object();
};

// Throws ValidationError on duplicate participant ids.
void validate_dataset(const Dataset& d);

// participants.csv, sus.csv, tlx.csv, metrics.csv, likert.csv
void export_csv(const Dataset& d, const std::filesystem::path& dir);
// Reads *.json records from `dir` (or `dir/records`); without any, rebuilds
// event-less records from the CSV exports.
Dataset load_dataset(const std::filesystem::path& dir);

}  // namespace senso
