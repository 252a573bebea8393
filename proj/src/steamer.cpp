#include "senso/steamer.hpp"

#include <algorithm>
#include <limits>

#include "senso/errors.hpp"
#include "senso/layout.hpp"
#include "senso/rng.hpp"

namespace senso {

std::string_view to_string(SteamerStage s) {
  switch (s) {
    case SteamerStage::InCart: return "InCart";
    case SteamerStage::InSteamer: return "InSteamer";
    case SteamerStage::Ready: return "Ready";
    case SteamerStage::Overcooked: return "Overcooked";
    case SteamerStage::Served: return "Served";
    case SteamerStage::Missed: return "Missed";
  }
  return "Missed";
}

std::string_view to_string(Cue c) {
  switch (c) {
    case Cue::None: return "None";
    case Cue::Green: return "Green";
    case Cue::Red: return "Red";
  }
  return "None";
}

std::string_view to_string(SteamerPhase p) { return p == SteamerPhase::Play ? "Play" : "Complete"; }

Cue cue_for(SteamerStage stage) {
  if (stage == SteamerStage::Ready) return Cue::Green;
  if (stage == SteamerStage::Overcooked) return Cue::Red;
  return Cue::None;
}

bool is_terminal(SteamerStage s) { return s == SteamerStage::Served || s == SteamerStage::Missed; }

bool in_steamer(SteamerStage s) {
  return s == SteamerStage::InSteamer || s == SteamerStage::Ready || s == SteamerStage::Overcooked;
}

Vec3 item_position(const SteamerItemState& item) {
  if (in_steamer(item.stage) && item.basket_slot) return layout::steamer_basket_slots()[*item.basket_slot];
  return item.cart_slot;
}

namespace {

std::size_t log(SteamerState& s, EventKind kind, nlohmann::json payload) {
  GameEvent e;
  e.seq = static_cast<std::int64_t>(s.event_log.size());
  e.t = s.origin + s.clock;
  e.game = GameId::Steamer;
  e.kind = kind;
  e.payload = std::move(payload);
  s.event_log.push_back(std::move(e));
  return s.event_log.size() - 1;
}

void set_stage(SteamerItemState& item, SteamerStage stage) {
  item.stage = stage;
  item.cue = cue_for(stage);
  if (!in_steamer(stage)) item.basket_slot.reset();
}

void check_all_done(SteamerState& s) {
  if (std::all_of(s.items.begin(), s.items.end(), [](const auto& i) { return is_terminal(i.stage); })) {
    s.phase = SteamerPhase::Complete;
    s.held.reset();
    log(s, EventKind::GameComplete, {{"reason", "all_done"}});
  }
}

std::optional<std::size_t> free_basket_slot(const SteamerState& s) {
  const std::size_t n = layout::kSteamerCapacity;
  for (std::size_t slot = 0; slot < n; ++slot) {
    const bool used = std::any_of(s.items.begin(), s.items.end(), [&](const auto& i) {
      return in_steamer(i.stage) && i.basket_slot == slot;
    });
    if (!used) return slot;
  }
  return std::nullopt;
}

}  // namespace

SteamerState steamer_start(const DifficultyParams& params, std::uint64_t seed, SimTime origin,
                           const std::vector<std::string>& catalog) {
  validate_params(params);
  std::vector<std::string> pool = catalog;
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  const auto n = static_cast<std::size_t>(params.steamer_item_count);
  if (n > pool.size() || n > layout::kSteamerCapacity)
    throw ConfigError("steamer_item_count " + std::to_string(n) + " exceeds catalog or steamer capacity");

  Rng rng(mix_seed(seed, 0x57));
  rng.shuffle(pool);
  const auto slots = layout::steamer_cart_slots();

  SteamerState s;
  s.params = params;
  s.origin = origin;
  for (std::size_t i = 0; i < n; ++i) {
    SteamerItemState item;
    item.item_id = pool[i];
    item.cart_slot = slots[i];
    s.items.push_back(item);
  }
  std::vector<std::string> ids;
  for (const auto& i : s.items) ids.push_back(i.item_id);
  log(s, EventKind::GameStart, {{"required_actions", 2 * params.steamer_item_count}, {"items", ids}});
  return s;
}

void steamer_tick(SteamerState& s, SimTime dt) {
  if (dt <= SimTime{}) throw DomainError("tick dt must be positive");
  if (s.phase == SteamerPhase::Complete) return;
  s.clock += dt;
  const SimTime cook = SimTime::seconds(s.params.cook_time_s);
  const SimTime overcook = SimTime::seconds(s.params.overcook_time_s);
  for (auto& item : s.items) {
    if (item.stage != SteamerStage::InSteamer && item.stage != SteamerStage::Ready) continue;
    item.steam_clock += dt;
    if (item.stage == SteamerStage::InSteamer && item.steam_clock >= cook) {
      set_stage(item, SteamerStage::Ready);
      log(s, EventKind::CueGreen, {{"item", item.item_id}});
    }
    if (item.stage == SteamerStage::Ready && item.steam_clock >= overcook) {
      set_stage(item, SteamerStage::Overcooked);
      const auto idx = log(s, EventKind::Overcook, {{"item", item.item_id}});
      s.scent_queue.push_back({s.origin + s.clock, kBurntScent, kBurntScentMs, static_cast<std::int64_t>(idx)});
    }
  }
  if (s.clock >= SimTime::seconds(s.params.steamer_time_limit_s)) {
    for (auto& item : s.items) {
      if (is_terminal(item.stage)) continue;
      if (item.stage == SteamerStage::InCart)
        log(s, EventKind::Omission, {{"item", item.item_id}, {"action", "steam_in"}});
      log(s, EventKind::Omission, {{"item", item.item_id}, {"action", "transfer"}});
      set_stage(item, SteamerStage::Missed);
    }
    s.phase = SteamerPhase::Complete;
    s.held.reset();
    log(s, EventKind::GameComplete, {{"reason", "time_limit"}});
  }
}

void steamer_apply(SteamerState& s, const GestureEvent& g) {
  if (s.phase != SteamerPhase::Play) return;
  if (g.kind == GestureKind::GraspStart) {
    if (s.held) return;
    std::optional<std::size_t> best;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < s.items.size(); ++i) {
      const auto& item = s.items[i];
      if (is_terminal(item.stage)) continue;
      const double d = planar_distance(item_position(item), g.pos);
      if (d <= layout::kPickupRadius && d < best_d) {
        best = i;
        best_d = d;
      }
    }
    if (best) {
      s.held = best;
      log(s, EventKind::Grasp, {{"item", s.items[*best].item_id}});
    }
    return;
  }
  if (!is_release(g.kind) || !s.held) return;

  auto& item = s.items[*s.held];
  s.held.reset();
  if (item.stage == SteamerStage::InCart) {
    const auto slot = free_basket_slot(s);
    if (!layout::kSteamerZone.contains(g.pos) || !slot) {
      log(s, EventKind::Drop, {{"item", item.item_id}});
      return;
    }
    set_stage(item, SteamerStage::InSteamer);
    item.basket_slot = slot;
    item.steam_clock = SimTime{};
    const auto idx = log(s, EventKind::StartSteam, {{"item", item.item_id}});
    s.scent_queue.push_back({s.origin + s.clock, food_scent(item.item_id),
                             SimTime::seconds(s.params.cook_time_s).us() / 1000, static_cast<std::int64_t>(idx)});
    return;
  }
  if (!layout::kServingZone.contains(g.pos)) {
    log(s, EventKind::Drop, {{"item", item.item_id}});
    return;
  }
  const SteamerStage before = item.stage;
  set_stage(item, SteamerStage::Served);
  if (before == SteamerStage::Ready) {
    log(s, EventKind::Correct, {{"item", item.item_id}, {"action", "transfer"}});
  } else {
    const char* why = before == SteamerStage::InSteamer ? "undercooked" : "burnt";
    log(s, EventKind::Inaccuracy, {{"item", item.item_id}, {"action", "transfer"}, {"reason", why}});
  }
  check_all_done(s);
}

}  // namespace senso
