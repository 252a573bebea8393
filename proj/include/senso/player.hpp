#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "senso/rng.hpp"
#include "senso/session.hpp"

namespace senso {

struct PlayerTraits {
  // Seconds to move the hand between two points.
  double reach_s = 0.6;
  // Dwell before closing or opening the hand.
  double grip_s = 0.15;
  // Pause after each placement.
  double think_s = 0.4;
  // Standard deviation of aim error, normalized units.
  double jitter = 0.02;
  // Chance per held motion that tracking drops the hand.
  double hand_loss_prob = 0.0;
  bool skip_tutorials = true;
};

// Planted mistakes. Counts, not rates.
struct ErrorInjection {
  int dimsum_wrong = 0;
  int dimsum_forget = 0;
  int steamer_skip_steam = 0;
  int steamer_skip_transfer = 0;
  int steamer_early = 0;
  int steamer_late = 0;
  int cashier_idle_trials = 0;
  int cashier_overshoots = 0;
};

// Bot that reads the engine state and moves a virtual hand. It emits a frame
// only when the hand moves or changes grip; every frame is kept so that the
// run can be saved as a script and replayed open-loop.
class SimulatedPlayer final : public FrameSource {
 public:
  SimulatedPlayer(PlayerTraits traits, ErrorInjection errors, std::uint64_t seed);

  std::vector<InputFrame> poll(const SessionEngine& engine) override;
  const InputScript& recorded() const noexcept { return recorded_; }

 private:
  struct Waypoint {
    SimTime t;
    Vec3 pos;
    double grab;
    bool present;
  };

  void plan(const SessionEngine& engine);
  bool plan_dimsum(const DimSumState& s);
  bool plan_steamer(const SteamerState& s);
  bool plan_cashier(const CashierState& s);
  void move_item(const Vec3& from, const Vec3& to);
  void travel(const Vec3& to, double grab, double seconds, bool may_lose);
  void click();
  Vec3 aim(const Vec3& p);

  PlayerTraits traits_;
  ErrorInjection errors_;
  Rng rng_;
  InputScript recorded_;
  std::deque<Waypoint> queue_;
  SimTime cursor_;
  Vec3 hand_;
  SimTime busy_until_;

  int dimsum_wrong_done_ = 0;
  std::set<std::string> dimsum_forgotten_;
  std::set<std::string> dimsum_tried_wrong_;
  bool dimsum_planned_ = false;

  bool steamer_planned_ = false;
  std::map<std::string, char> steamer_role_;

  int overshoots_done_ = 0;
};

// Defaults for a participant of a given age group; older players move slower
// and aim less precisely.
PlayerTraits traits_for(AgeGroup group, Rng& rng);

}  // namespace senso
