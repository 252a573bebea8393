#include <doctest.h>

#include <sstream>

#include "senso/errors.hpp"
#include "senso/gesture.hpp"
#include "senso/rng.hpp"
#include "support.hpp"

using namespace senso;
using senso::test::frame;

namespace {

std::size_t count(const std::vector<GestureEvent>& ev, GestureKind k) {
  std::size_t n = 0;
  for (const auto& e : ev) n += e.kind == k;
  return n;
}

InputScript random_script(std::uint64_t seed, std::size_t n) {
  Rng rng(seed);
  InputScript s;
  s.label = "random";
  s.seed = seed;
  SimTime t;
  for (std::size_t i = 0; i < n; ++i) {
    t += SimTime::micros(rng.uniform_int(0, 40'000));
    s.frames.push_back(normalized({t, {rng.uniform(-1.2, 1.2), rng.uniform(-1.2, 1.2), rng.uniform(-0.2, 0.2)},
                                   rng.uniform(-0.1, 1.1), rng.bernoulli(0.97)}));
  }
  return s;
}

}  // namespace

TEST_CASE("grasp needs the upper threshold, release the lower one") {
  GestureRecognizer rec;
  CHECK(rec.push(frame(0.00, 0, 0, 0.65)).empty());
  auto ev = rec.push(frame(0.05, 0, 0, 0.70));
  REQUIRE(ev.size() == 1);
  CHECK(ev[0].kind == GestureKind::GraspStart);
  CHECK(rec.push(frame(0.10, 0, 0, 0.31)).empty());
  CHECK(rec.grasping());
  ev = rec.push(frame(0.15, 0, 0, 0.30));
  REQUIRE(ev.size() == 1);
  CHECK(ev[0].kind == GestureKind::Release);
}

TEST_CASE("tremor inside the band never toggles") {
  GestureRecognizer rec;
  Rng rng(3);
  std::size_t events = 0;
  for (int i = 0; i < 2000; ++i) events += rec.push(frame(i * 0.01, 0.2, 0.2, rng.uniform(0.31, 0.69))).size();
  CHECK(events == 0);
  CHECK_FALSE(rec.grasping());
}

TEST_CASE("moves below the deadband are suppressed") {
  GestureRecognizer rec;
  rec.push(frame(0.0, 0.0, 0.0, 1.0));
  CHECK(rec.push(frame(0.1, 0.005, 0.0, 1.0)).empty());
  auto ev = rec.push(frame(0.2, 0.01, 0.0, 1.0));
  REQUIRE(ev.size() == 1);
  CHECK(ev[0].kind == GestureKind::Move);
}

TEST_CASE("hand loss while grasping ends the grasp at the last position") {
  GestureRecognizer rec;
  rec.push(frame(0.0, 0.3, 0.4, 1.0));
  auto ev = rec.push(frame(0.1, 0.9, 0.9, 1.0, false));
  REQUIRE(ev.size() == 1);
  CHECK(ev[0].kind == GestureKind::HandLost);
  CHECK(ev[0].pos == Vec3{0.3, 0.4, 0.0});
  CHECK(rec.push(frame(0.2, 0.0, 0.0, 0.0, false)).empty());
}

TEST_CASE("grasps and releases alternate on random streams") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = random_script(seed, 3000);
    bool held = false;
    for (const auto& e : recognize(s.frames)) {
      if (e.kind == GestureKind::GraspStart) {
        CHECK_FALSE(held);
        held = true;
      } else if (is_release(e.kind)) {
        CHECK(held);
        held = false;
      } else {
        CHECK(held);
      }
    }
  }
}

TEST_CASE("time regression is a stream error with the frame index") {
  GestureRecognizer rec;
  rec.push(frame(1.0, 0, 0, 0));
  rec.push(frame(1.0, 0, 0, 0));
  try {
    rec.push(frame(0.5, 0, 0, 0));
    FAIL("expected StreamError");
  } catch (const StreamError& e) {
    CHECK(e.index() == 2);
  }
}

TEST_CASE("pick and place fixture matches the oracle") {
  const auto oracle = test::read_json(test::data_path("tests/data/pick_place_oracle.json"));
  const auto script = load_recording(test::data_path("data/scripts/pick_place_6.frames").string());
  CHECK(script.frames.size() == oracle["frames"].get<std::size_t>());
  const auto ev = recognize(script.frames);
  CHECK(count(ev, GestureKind::GraspStart) == oracle["grasp_starts"].get<std::size_t>());
  CHECK(count(ev, GestureKind::Release) + count(ev, GestureKind::HandLost) ==
        oracle["releases"].get<std::size_t>());
}

TEST_CASE("recording round trip over 10k frames") {
  const auto s = random_script(42, 10'000);
  std::ostringstream os;
  write_recording(os, s);
  std::istringstream is(os.str());
  const auto back = read_recording(is);
  CHECK(back == s);
  std::ostringstream again;
  write_recording(again, back);
  CHECK(again.str() == os.str());
  CHECK(recognize(back.frames) == recognize(s.frames));
}

TEST_CASE("normalization clamps and rounds") {
  const auto f = normalized({SimTime{}, {1.5, -2.0, 0.1234567}, 1.2, true});
  CHECK(f.pos.x == 1.0);
  CHECK(f.pos.y == -1.0);
  CHECK(f.pos.z == doctest::Approx(0.123457).epsilon(1e-12));
  CHECK(f.grab == 1.0);
}

TEST_CASE("recording parse errors carry the line") {
  auto parse = [](const std::string& text) {
    std::istringstream is(text);
    return read_recording(is);
  };
  CHECK(parse("# label: x\n# seed: 9\n0.1 0 0 0 0 1\n").seed == 9u);
  try {
    parse("# label: x\n0.1 0 0 0 0 1\n0.2 0 0 zero 0 1\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse("0.1 0 0 0 0\n"), ParseError);
  CHECK_THROWS_AS(parse("0.1 0 0 0 0 2\n"), ParseError);
  CHECK_THROWS_AS(parse("0.2 0 0 0 0 1\n0.1 0 0 0 0 1\n"), ParseError);
}
