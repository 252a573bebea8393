#include <doctest.h>

#include "senso/dimsum.hpp"
#include "senso/errors.hpp"

using namespace senso;

namespace {

void run_until(DimSumState& s, double seconds) {
  while (s.clock < SimTime::seconds(seconds) && s.phase != DimSumPhase::Complete) dimsum_tick(s, kTickStep);
}

void move(DimSumState& s, const Vec3& from, const Vec3& to) {
  const SimTime t = s.origin + s.clock;
  dimsum_apply(s, {t, GestureKind::GraspStart, from});
  dimsum_apply(s, {t, GestureKind::Release, to});
}

std::size_t count(const DimSumState& s, EventKind k) { return count_kind(s.event_log, k); }

const Vec3 kTable{0.65, 0.0, 0.0};

}  // namespace

TEST_CASE("start picks distinct targets deterministically") {
  DifficultyParams p;
  const auto a = dimsum_start(p, 11);
  const auto b = dimsum_start(p, 11);
  CHECK(a.targets == b.targets);
  CHECK(a.targets.size() == 6);
  CHECK(a.remaining_targets.size() == 6);
  CHECK(a.items.size() == 12);
  CHECK(a.event_log.front().kind == EventKind::GameStart);
  CHECK(a.event_log.front().payload["required_actions"] == 6);

  p.dimsum_item_count = 13;
  CHECK_THROWS_AS(dimsum_start(p, 1), ConfigError);
}

TEST_CASE("gestures during memorize are ignored") {
  auto s = dimsum_start({}, 5);
  const auto* target = find_item(s, s.targets[0]);
  move(s, target->cart_slot, kTable);
  CHECK(s.event_log.size() == 1);
  run_until(s, 10.0);
  CHECK(s.phase == DimSumPhase::Select);
}

TEST_CASE("perfect play completes with every target correct") {
  auto s = dimsum_start({}, 5);
  run_until(s, 10.0);
  for (const auto& id : s.targets) move(s, find_item(s, id)->cart_slot, kTable);
  CHECK(s.phase == DimSumPhase::Complete);
  CHECK(count(s, EventKind::Correct) == 6);
  CHECK(count(s, EventKind::Inaccuracy) == 0);
  CHECK(count(s, EventKind::Omission) == 0);
  CHECK(s.event_log.back().payload["reason"] == "all_done");
}

TEST_CASE("wrong item is an inaccuracy, drop outside the table is neither") {
  auto s = dimsum_start({}, 8);
  run_until(s, 10.0);
  const DimSumItem* wrong = nullptr;
  for (const auto& item : s.items)
    if (!item.is_target) wrong = &item;
  REQUIRE(wrong);
  move(s, wrong->cart_slot, kTable);
  CHECK(count(s, EventKind::Inaccuracy) == 1);
  move(s, find_item(s, s.targets[0])->cart_slot, {-0.5, 0.9, 0.0});
  CHECK(count(s, EventKind::Drop) == 1);
  CHECK(s.remaining_targets.size() == 6);
}

TEST_CASE("timeout omits each remaining target once") {
  auto s = dimsum_start({}, 9);
  run_until(s, 10.0);
  move(s, find_item(s, s.targets[0])->cart_slot, kTable);
  move(s, find_item(s, s.targets[1])->cart_slot, kTable);
  run_until(s, 1000.0);
  CHECK(s.phase == DimSumPhase::Complete);
  CHECK(count(s, EventKind::Omission) == 4);
  CHECK(count(s, EventKind::Correct) + count(s, EventKind::Omission) == 6);
  CHECK(s.clock == SimTime::seconds(130.0));
}

TEST_CASE("release without a grasp does nothing") {
  auto s = dimsum_start({}, 9);
  run_until(s, 10.0);
  const auto before = s.event_log.size();
  dimsum_apply(s, {s.clock, GestureKind::Release, kTable});
  dimsum_apply(s, {s.clock, GestureKind::GraspStart, {0.0, 0.9, 0.0}});
  CHECK(s.event_log.size() == before);
  CHECK_THROWS_AS(dimsum_tick(s, SimTime{}), DomainError);
}
