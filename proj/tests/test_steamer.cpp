#include <doctest.h>

#include "senso/errors.hpp"
#include "senso/steamer.hpp"

using namespace senso;

namespace {

const Vec3 kSteamer{0.0, 0.4, 0.0};
const Vec3 kServe{0.75, 0.0, 0.0};

void move(SteamerState& s, std::size_t i, const Vec3& to) {
  const SimTime t = s.origin + s.clock;
  steamer_apply(s, {t, GestureKind::GraspStart, item_position(s.items[i])});
  steamer_apply(s, {t, GestureKind::Release, to});
}

void run_for(SteamerState& s, double seconds) {
  const SimTime end = s.clock + SimTime::seconds(seconds);
  while (s.clock < end && s.phase != SteamerPhase::Complete) steamer_tick(s, kTickStep);
}

std::size_t count(const SteamerState& s, EventKind k) { return count_kind(s.event_log, k); }

}  // namespace

TEST_CASE("cue is a function of stage") {
  CHECK(cue_for(SteamerStage::InCart) == Cue::None);
  CHECK(cue_for(SteamerStage::InSteamer) == Cue::None);
  CHECK(cue_for(SteamerStage::Ready) == Cue::Green);
  CHECK(cue_for(SteamerStage::Overcooked) == Cue::Red);
}

TEST_CASE("cook, green cue, transfer") {
  auto s = steamer_start({}, 3);
  REQUIRE(s.items.size() == 4);
  move(s, 0, kSteamer);
  CHECK(s.items[0].stage == SteamerStage::InSteamer);
  REQUIRE(s.scent_queue.size() == 1);
  CHECK(s.scent_queue[0].scent_id == food_scent(s.items[0].item_id));
  CHECK(s.scent_queue[0].duration_ms == 20000);
  run_for(s, 19.95);
  CHECK(s.items[0].stage == SteamerStage::InSteamer);
  run_for(s, 0.05);
  CHECK(s.items[0].stage == SteamerStage::Ready);
  CHECK(s.items[0].cue == Cue::Green);
  move(s, 0, kServe);
  CHECK(s.items[0].stage == SteamerStage::Served);
  CHECK(count(s, EventKind::Correct) == 1);
}

TEST_CASE("overcook turns red and queues the burnt scent") {
  auto s = steamer_start({}, 3);
  move(s, 1, kSteamer);
  run_for(s, 35.0);
  CHECK(s.items[1].stage == SteamerStage::Overcooked);
  CHECK(s.items[1].cue == Cue::Red);
  CHECK(count(s, EventKind::Overcook) == 1);
  REQUIRE(s.scent_queue.size() == 2);
  CHECK(s.scent_queue[1].scent_id == kBurntScent);
  CHECK(s.scent_queue[1].duration_ms == kBurntScentMs);
  CHECK(s.event_log[static_cast<std::size_t>(s.scent_queue[1].source_event)].kind == EventKind::Overcook);
  move(s, 1, kServe);
  CHECK(count(s, EventKind::Inaccuracy) == 1);
  CHECK(s.event_log.back().payload["reason"] == "burnt");
}

TEST_CASE("early transfer is undercooked") {
  auto s = steamer_start({}, 4);
  move(s, 2, kSteamer);
  run_for(s, 5.0);
  move(s, 2, kServe);
  CHECK(s.event_log.back().payload["reason"] == "undercooked");
}

TEST_CASE("timeout logs two omissions for an untouched item, one for a steamed one") {
  auto s = steamer_start({}, 5);
  move(s, 0, kSteamer);
  run_for(s, 1000.0);
  CHECK(s.phase == SteamerPhase::Complete);
  CHECK(count(s, EventKind::Omission) == 2 * 3 + 1);
  const auto required = s.event_log.front().payload["required_actions"].get<std::size_t>();
  CHECK(count(s, EventKind::StartSteam) + count(s, EventKind::Correct) + count(s, EventKind::Inaccuracy) +
            count(s, EventKind::Omission) ==
        required);
}

TEST_CASE("drops keep the item in place") {
  auto s = steamer_start({}, 6);
  move(s, 0, {0.9, -0.9, 0.0});
  CHECK(s.items[0].stage == SteamerStage::InCart);
  CHECK(count(s, EventKind::Drop) == 1);
  move(s, 0, kSteamer);
  move(s, 0, {-0.9, -0.9, 0.0});
  CHECK(s.items[0].stage == SteamerStage::InSteamer);
}

TEST_CASE("item count beyond capacity is a config error") {
  DifficultyParams p;
  p.steamer_item_count = 9;
  CHECK_THROWS_AS(steamer_start(p, 1), ConfigError);
}
