#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "senso/domain.hpp"
#include "senso/gesture.hpp"

namespace senso::test {

inline std::filesystem::path source_dir() { return SENSO_SOURCE_DIR; }
inline std::filesystem::path data_path(const std::string& rel) { return source_dir() / rel; }

inline nlohmann::json read_json(const std::filesystem::path& p) {
  std::ifstream is(p);
  return nlohmann::json::parse(is);
}

inline std::string read_text(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

inline ParticipantProfile profile(std::string id = "T01", int age = 67) {
  return {std::move(id), age, Gender::Female, EducationBand::Y10_12, 27, {}};
}

inline InputFrame frame(double t, double x, double y, double grab, bool present = true) {
  return {SimTime::seconds(t), {x, y, 0.0}, grab, present};
}

inline std::filesystem::path temp_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("senso_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace senso::test
