#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "senso/domain.hpp"
#include "senso/events.hpp"
#include "senso/gesture.hpp"
#include "senso/layout.hpp"
#include "senso/sim_time.hpp"

namespace senso {

enum class DimSumPhase { Memorize, Select, Complete };

std::string_view to_string(DimSumPhase p);

struct DimSumItem {
  std::string item_id;
  Vec3 cart_slot;
  bool is_target = false;
  bool on_table = false;
};

// Memorize a target subset, then move exactly those items from the cart to
// the table zone. Events are appended to `event_log` stamped origin + clock.
struct DimSumState {
  DimSumPhase phase = DimSumPhase::Memorize;
  DifficultyParams params;
  std::vector<DimSumItem> items;
  std::vector<std::string> targets;
  std::set<std::string> remaining_targets;
  std::optional<std::string> held_item;
  SimTime clock;
  SimTime origin;
  std::vector<GameEvent> event_log;
};

// Throws ConfigError when the item count exceeds the cart.
DimSumState dimsum_start(const DifficultyParams& params, std::uint64_t seed, SimTime origin = {},
                         const std::vector<std::string>& catalog = default_dimsum_catalog());
void dimsum_tick(DimSumState& state, SimTime dt);
void dimsum_apply(DimSumState& state, const GestureEvent& event);

const DimSumItem* find_item(const DimSumState& state, const std::string& item_id);

}  // namespace senso
