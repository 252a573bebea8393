#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "senso/domain.hpp"
#include "senso/events.hpp"
#include "senso/gesture.hpp"
#include "senso/layout.hpp"
#include "senso/scent.hpp"
#include "senso/sim_time.hpp"

namespace senso {

enum class SteamerStage { InCart, InSteamer, Ready, Overcooked, Served, Missed };
enum class Cue { None, Green, Red };
enum class SteamerPhase { Play, Complete };

std::string_view to_string(SteamerStage s);
std::string_view to_string(Cue c);
std::string_view to_string(SteamerPhase p);

// The timer colour shown for an item; a function of stage alone.
Cue cue_for(SteamerStage stage);
bool is_terminal(SteamerStage stage);
bool in_steamer(SteamerStage stage);

struct SteamerItemState {
  std::string item_id;
  SteamerStage stage = SteamerStage::InCart;
  SimTime steam_clock;
  Cue cue = Cue::None;
  Vec3 cart_slot;
  std::optional<std::size_t> basket_slot;
};

// Each item needs two actions: steaming it and transferring it to the serving
// area inside the green window. Scent commands reference their triggering
// event by its index in `event_log`.
struct SteamerState {
  SteamerPhase phase = SteamerPhase::Play;
  DifficultyParams params;
  std::vector<SteamerItemState> items;
  std::optional<std::size_t> held;
  SimTime clock;
  SimTime origin;
  std::vector<GameEvent> event_log;
  std::vector<ScentCommand> scent_queue;
};

// Throws ConfigError when the item count exceeds the catalog or the basket.
SteamerState steamer_start(const DifficultyParams& params, std::uint64_t seed, SimTime origin = {},
                           const std::vector<std::string>& catalog = default_dimsum_catalog());
void steamer_tick(SteamerState& state, SimTime dt);
void steamer_apply(SteamerState& state, const GestureEvent& event);

Vec3 item_position(const SteamerItemState& item);

}  // namespace senso
