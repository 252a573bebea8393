#include "senso/metrics.hpp"

#include <algorithm>
#include <cstdio>

#include "senso/errors.hpp"
#include "senso/record.hpp"

namespace senso {

TaskMetrics compute_metrics(const std::vector<GameEvent>& events, GameId game) {
  const GameEvent* start = nullptr;
  const GameEvent* end = nullptr;
  int incorrect = 0;
  int missed = 0;
  for (const auto& e : events) {
    if (e.game != game) continue;
    if (e.kind == EventKind::GameStart && !start) start = &e;
    if (!start) continue;
    if (e.kind == EventKind::Inaccuracy) ++incorrect;
    if (e.kind == EventKind::Omission) ++missed;
    if (e.kind == EventKind::GameComplete) {
      end = &e;
      break;
    }
  }
  if (!start || !end)
    throw IncompleteTaskError(std::string(to_string(game)) + " has no completed run in the log");

  TaskMetrics m;
  m.game = game;
  m.required_actions = start->payload.value("required_actions", 0);
  if (m.required_actions < 1) throw IncompleteTaskError("GameStart lacks required_actions");
  m.inaccuracy_events = incorrect;
  m.incorrect_actions = std::min(incorrect, m.required_actions);
  m.missed_actions = missed;
  m.inaccuracy_pct = 100.0 * m.incorrect_actions / m.required_actions;
  m.omission_pct = 100.0 * m.missed_actions / m.required_actions;
  m.total_time_s = (end->t - start->t).sec();
  return m;
}

std::string_view label(Indicator i) {
  switch (i) {
    case Indicator::Inaccuracy: return "Inaccuracy";
    case Indicator::Omission: return "Omission";
    case Indicator::Time: return "Total time used (s)";
  }
  return "";
}

double indicator_value(const TaskMetrics& m, Indicator i) {
  switch (i) {
    case Indicator::Inaccuracy: return m.inaccuracy_pct;
    case Indicator::Omission: return m.omission_pct;
    case Indicator::Time: return m.total_time_s;
  }
  return 0.0;
}

MetricsTable metrics_table(std::span<const SessionRecord> records) {
  MetricsTable table;
  std::array<std::array<std::array<double, 3>, 3>, 3> sums{};
  for (const auto& r : records) {
    const auto group = static_cast<std::size_t>(derive_age_group(r.profile.age));
    ++table.group_n[group];
    for (auto g : kGameOrder) {
      const auto it = r.metrics.find(g);
      if (it == r.metrics.end())
        throw IncompleteTaskError(r.profile.participant_id + " has no " + std::string(to_string(g)) + " metrics");
      for (auto i : kIndicators)
        sums[static_cast<std::size_t>(g)][static_cast<std::size_t>(i)][group] += indicator_value(it->second, i);
    }
  }
  for (std::size_t g = 0; g < 3; ++g)
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t a = 0; a < 3; ++a)
        if (table.group_n[a] > 0) table.means[g][i][a] = sums[g][i][a] / static_cast<double>(table.group_n[a]);
  return table;
}

std::string format_1dp(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

}  // namespace senso
