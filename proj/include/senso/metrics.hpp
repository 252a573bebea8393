#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "senso/domain.hpp"
#include "senso/events.hpp"

namespace senso {

// Inaccuracy / omission / timing indicators for one task.
struct TaskMetrics {
  GameId game = GameId::DimSum;
  double inaccuracy_pct = 0.0;
  double omission_pct = 0.0;
  double total_time_s = 0.0;
  int required_actions = 1;
  int incorrect_actions = 0;
  int missed_actions = 0;
  // Raw Inaccuracy events; incorrect_actions is this count capped at required_actions.
  int inaccuracy_events = 0;

  friend bool operator==(const TaskMetrics&, const TaskMetrics&) = default;
};

// Reads the game's GameStart..GameComplete span from the log. Tutorial time is
// outside that span. Throws IncompleteTaskError without a terminal event.
TaskMetrics compute_metrics(const std::vector<GameEvent>& events, GameId game);

enum class Indicator { Inaccuracy, Omission, Time };
inline constexpr Indicator kIndicators[] = {Indicator::Inaccuracy, Indicator::Omission, Indicator::Time};

std::string_view label(Indicator i);
double indicator_value(const TaskMetrics& m, Indicator i);

struct SessionRecord;

// Group means per (game, indicator, age group). Empty groups hold nullopt.
struct MetricsTable {
  std::array<std::size_t, 3> group_n{};
  std::array<std::array<std::array<std::optional<double>, 3>, 3>, 3> means{};

  std::optional<double> mean(GameId g, Indicator i, AgeGroup a) const {
    return means[static_cast<std::size_t>(g)][static_cast<std::size_t>(i)][static_cast<std::size_t>(a)];
  }
};

// Throws IncompleteTaskError if any record lacks metrics for a game.
MetricsTable metrics_table(std::span<const SessionRecord> records);

// One decimal place, as printed in the performance table.
std::string format_1dp(double v);

}  // namespace senso
