#include "senso/events.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "senso/errors.hpp"

namespace senso {

namespace {

constexpr std::array<std::pair<EventKind, std::string_view>, 20> kNames{{
    {EventKind::SessionStart, "SessionStart"},
    {EventKind::TutorialStart, "TutorialStart"},
    {EventKind::TutorialSkipped, "TutorialSkipped"},
    {EventKind::GameStart, "GameStart"},
    {EventKind::PhaseChange, "PhaseChange"},
    {EventKind::Gesture, "Gesture"},
    {EventKind::Grasp, "Grasp"},
    {EventKind::Drop, "Drop"},
    {EventKind::Correct, "Correct"},
    {EventKind::Inaccuracy, "Inaccuracy"},
    {EventKind::Omission, "Omission"},
    {EventKind::StartSteam, "StartSteam"},
    {EventKind::CueGreen, "CueGreen"},
    {EventKind::Overcook, "Overcook"},
    {EventKind::TrialStart, "TrialStart"},
    {EventKind::Place, "Place"},
    {EventKind::TrialEnd, "TrialEnd"},
    {EventKind::GameComplete, "GameComplete"},
    {EventKind::DifficultyChanged, "DifficultyChanged"},
    {EventKind::SessionEnd, "SessionEnd"},
}};

}  // namespace

std::string_view to_string(EventKind k) {
  for (const auto& [kind, name] : kNames)
    if (kind == k) return name;
  return "?";
}

std::optional<EventKind> parse_event_kind(std::string_view s) {
  for (const auto& [kind, name] : kNames)
    if (name == s) return kind;
  return std::nullopt;
}

const GameEvent& EventLog::append(SimTime t, std::optional<GameId> game, EventKind kind,
                                  nlohmann::json payload) {
  if (!entries_.empty() && t < entries_.back().t)
    throw StateError("event timestamps must be non-decreasing");
  GameEvent e;
  e.seq = static_cast<std::int64_t>(entries_.size());
  e.t = t;
  e.game = game;
  e.kind = kind;
  e.payload = std::move(payload);
  entries_.push_back(std::move(e));
  return entries_.back();
}

std::size_t count_kind(const std::vector<GameEvent>& events, EventKind kind,
                       std::optional<GameId> game) {
  return static_cast<std::size_t>(std::count_if(events.begin(), events.end(), [&](const GameEvent& e) {
    return e.kind == kind && (!game || e.game == game);
  }));
}

}  // namespace senso
