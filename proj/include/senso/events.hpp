#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "senso/domain.hpp"
#include "senso/sim_time.hpp"

namespace senso {

enum class EventKind {
  SessionStart,
  TutorialStart,
  TutorialSkipped,
  GameStart,
  PhaseChange,
  Gesture,
  Grasp,
  Drop,
  Correct,
  Inaccuracy,
  Omission,
  StartSteam,
  CueGreen,
  Overcook,
  TrialStart,
  Place,
  TrialEnd,
  GameComplete,
  DifficultyChanged,
  SessionEnd,
};

std::string_view to_string(EventKind k);
std::optional<EventKind> parse_event_kind(std::string_view s);

// One append-only log entry. `payload` carries kind-specific fields
// (item ids, amounts, the gesture position, ...).
struct GameEvent {
  std::int64_t seq = 0;
  SimTime t;
  std::optional<GameId> game;
  EventKind kind = EventKind::SessionStart;
  nlohmann::json payload = nlohmann::json::object();

  friend bool operator==(const GameEvent&, const GameEvent&) = default;
};

// Append-only log with strictly increasing sequence numbers and
// non-decreasing timestamps.
class EventLog {
 public:
  const GameEvent& append(SimTime t, std::optional<GameId> game, EventKind kind,
                          nlohmann::json payload = nlohmann::json::object());
  const std::vector<GameEvent>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const GameEvent& operator[](std::size_t i) const { return entries_[i]; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

 private:
  std::vector<GameEvent> entries_;
};

std::size_t count_kind(const std::vector<GameEvent>& events, EventKind kind,
                       std::optional<GameId> game = std::nullopt);

}  // namespace senso
