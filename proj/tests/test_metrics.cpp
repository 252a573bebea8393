#include <doctest.h>

#include "senso/errors.hpp"
#include "senso/metrics.hpp"

using namespace senso;

namespace {

EventLog log_with(GameId g, int required, int wrong, int missed, double seconds) {
  EventLog log;
  log.append(SimTime::seconds(1), std::nullopt, EventKind::SessionStart);
  log.append(SimTime::seconds(2), g, EventKind::GameStart, {{"required_actions", required}});
  for (int i = 0; i < wrong; ++i) log.append(SimTime::seconds(3), g, EventKind::Inaccuracy);
  for (int i = 0; i < missed; ++i) log.append(SimTime::seconds(4), g, EventKind::Omission);
  log.append(SimTime::seconds(2 + seconds), g, EventKind::GameComplete);
  return log;
}

}  // namespace

TEST_CASE("percentages and time") {
  const auto log = log_with(GameId::DimSum, 6, 1, 0, 48.5);
  const auto m = compute_metrics(log.entries(), GameId::DimSum);
  CHECK(m.inaccuracy_pct == doctest::Approx(100.0 / 6.0));
  CHECK(m.omission_pct == 0.0);
  CHECK(m.total_time_s == doctest::Approx(48.5));
  CHECK(format_1dp(m.inaccuracy_pct) == "16.7");

  const auto s = compute_metrics(log_with(GameId::Steamer, 8, 0, 5, 10).entries(), GameId::Steamer);
  CHECK(s.omission_pct == 62.5);
  const auto c = compute_metrics(log_with(GameId::Cashier, 5, 0, 4, 10).entries(), GameId::Cashier);
  CHECK(c.omission_pct == 80.0);
}

TEST_CASE("inaccuracy is capped at the required count") {
  const auto m = compute_metrics(log_with(GameId::Cashier, 5, 9, 0, 3).entries(), GameId::Cashier);
  CHECK(m.inaccuracy_pct == 100.0);
  CHECK(m.inaccuracy_events == 9);
  CHECK(m.incorrect_actions == 5);
}

TEST_CASE("other games' events are ignored") {
  auto log = log_with(GameId::DimSum, 6, 0, 0, 5);
  log.append(SimTime::seconds(20), GameId::Steamer, EventKind::GameStart, {{"required_actions", 8}});
  log.append(SimTime::seconds(21), GameId::Steamer, EventKind::Inaccuracy);
  CHECK(compute_metrics(log.entries(), GameId::DimSum).inaccuracy_pct == 0.0);
  CHECK_THROWS_AS(compute_metrics(log.entries(), GameId::Steamer), IncompleteTaskError);
  CHECK_THROWS_AS(compute_metrics(log.entries(), GameId::Cashier), IncompleteTaskError);
}

TEST_CASE("one-decimal formatting") {
  CHECK(format_1dp(3.7878787878787885) == "3.8");
  CHECK(format_1dp(84.575) == "84.6");
  CHECK(format_1dp(0.0) == "0.0");
  CHECK(label(Indicator::Time) == "Total time used (s)");
}
