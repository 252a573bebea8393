#include "senso/dimsum.hpp"

#include <algorithm>
#include <limits>

#include "senso/errors.hpp"
#include "senso/layout.hpp"
#include "senso/rng.hpp"

namespace senso {

namespace layout {

std::vector<Vec3> dimsum_cart_slots() {
  std::vector<Vec3> slots;
  for (int row = 0; row < 3; ++row)
    for (int col = 0; col < 4; ++col) slots.push_back({-0.9 + 0.3 * col, -0.7 + 0.3 * row, 0.0});
  return slots;
}

std::vector<Vec3> steamer_cart_slots() {
  std::vector<Vec3> slots;
  for (int row = 0; row < 2; ++row)
    for (int col = 0; col < 4; ++col) slots.push_back({-0.9 + 0.3 * col, -0.75 + 0.3 * row, 0.0});
  return slots;
}

std::vector<Vec3> steamer_basket_slots() {
  std::vector<Vec3> slots;
  for (int row = 0; row < 2; ++row)
    for (int col = 0; col < 4; ++col) slots.push_back({-0.3 + 0.2 * col, 0.25 + 0.3 * row, 0.0});
  return slots;
}

}  // namespace layout

const std::vector<std::string>& default_dimsum_catalog() {
  static const std::vector<std::string> catalog{
      "har_gow",      "siu_mai",    "char_siu_bao", "cheung_fun",  "lo_mai_gai", "egg_tart",
      "spring_roll",  "turnip_cake", "chicken_feet", "spare_ribs", "custard_bun", "sesame_ball"};
  return catalog;
}

nlohmann::json zone_json(const Zone& z) { return {{"x0", z.x0}, {"y0", z.y0}, {"x1", z.x1}, {"y1", z.y1}}; }

std::string_view to_string(DimSumPhase p) {
  switch (p) {
    case DimSumPhase::Memorize: return "Memorize";
    case DimSumPhase::Select: return "Select";
    case DimSumPhase::Complete: return "Complete";
  }
  return "Complete";
}

namespace {

void log(DimSumState& s, EventKind kind, nlohmann::json payload = nlohmann::json::object()) {
  GameEvent e;
  e.seq = static_cast<std::int64_t>(s.event_log.size());
  e.t = s.origin + s.clock;
  e.game = GameId::DimSum;
  e.kind = kind;
  e.payload = std::move(payload);
  s.event_log.push_back(std::move(e));
}

void complete(DimSumState& s, const char* reason) {
  s.phase = DimSumPhase::Complete;
  s.held_item.reset();
  log(s, EventKind::GameComplete, {{"reason", reason}});
}

SimTime select_end(const DimSumState& s) {
  return SimTime::seconds(s.params.memorize_duration_s) + SimTime::seconds(s.params.dimsum_time_limit_s);
}

}  // namespace

DimSumState dimsum_start(const DifficultyParams& params, std::uint64_t seed, SimTime origin,
                         const std::vector<std::string>& catalog) {
  validate_params(params);
  const auto slots = layout::dimsum_cart_slots();
  std::vector<std::string> pool = catalog;
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  const std::size_t cart_size = std::min(pool.size(), slots.size());
  if (static_cast<std::size_t>(params.dimsum_item_count) > cart_size)
    throw ConfigError("dimsum_item_count " + std::to_string(params.dimsum_item_count) +
                      " exceeds cart size " + std::to_string(cart_size));

  Rng rng(mix_seed(seed, 0xD1));
  rng.shuffle(pool);
  pool.resize(cart_size);

  std::vector<std::size_t> order(cart_size);
  for (std::size_t i = 0; i < cart_size; ++i) order[i] = i;
  rng.shuffle(order);

  DimSumState s;
  s.params = params;
  s.origin = origin;
  for (std::size_t i = 0; i < cart_size; ++i) s.items.push_back({pool[i], slots[i], false, false});
  for (int k = 0; k < params.dimsum_item_count; ++k) {
    auto& item = s.items[order[static_cast<std::size_t>(k)]];
    item.is_target = true;
    s.targets.push_back(item.item_id);
    s.remaining_targets.insert(item.item_id);
  }
  log(s, EventKind::GameStart,
      {{"required_actions", params.dimsum_item_count}, {"targets", s.targets}, {"phase", "Memorize"}});
  return s;
}

void dimsum_tick(DimSumState& s, SimTime dt) {
  if (dt <= SimTime{}) throw DomainError("tick dt must be positive");
  if (s.phase == DimSumPhase::Complete) return;
  s.clock += dt;
  if (s.phase == DimSumPhase::Memorize && s.clock >= SimTime::seconds(s.params.memorize_duration_s)) {
    s.phase = DimSumPhase::Select;
    log(s, EventKind::PhaseChange, {{"phase", "Select"}});
  }
  if (s.phase == DimSumPhase::Select && s.clock >= select_end(s)) {
    for (const auto& id : s.targets)
      if (s.remaining_targets.count(id)) log(s, EventKind::Omission, {{"item", id}});
    complete(s, "time_limit");
  }
}

void dimsum_apply(DimSumState& s, const GestureEvent& g) {
  if (s.phase != DimSumPhase::Select) return;
  if (g.kind == GestureKind::GraspStart) {
    if (s.held_item) return;
    const DimSumItem* best = nullptr;
    double best_d = std::numeric_limits<double>::infinity();
    for (const auto& item : s.items) {
      if (item.on_table) continue;
      const double d = planar_distance(item.cart_slot, g.pos);
      if (d <= layout::kPickupRadius && d < best_d) {
        best = &item;
        best_d = d;
      }
    }
    if (best) {
      s.held_item = best->item_id;
      log(s, EventKind::Grasp, {{"item", best->item_id}});
    }
    return;
  }
  if (!is_release(g.kind) || !s.held_item) return;

  const std::string id = *s.held_item;
  s.held_item.reset();
  if (!layout::kDimSumTable.contains(g.pos)) {
    log(s, EventKind::Drop, {{"item", id}});
    return;
  }
  if (s.remaining_targets.erase(id)) {
    for (auto& item : s.items)
      if (item.item_id == id) item.on_table = true;
    log(s, EventKind::Correct, {{"item", id}});
    if (s.remaining_targets.empty()) complete(s, "all_done");
  } else {
    log(s, EventKind::Inaccuracy, {{"item", id}});
  }
}

const DimSumItem* find_item(const DimSumState& s, const std::string& item_id) {
  for (const auto& item : s.items)
    if (item.item_id == item_id) return &item;
  return nullptr;
}

}  // namespace senso
