#include "senso/player.hpp"

#include <algorithm>
#include <cmath>

namespace senso {

namespace {

// Spacing of frames while the hand travels.
constexpr SimTime kFrameSpacing = SimTime::micros(100'000);

SimTime quantize(double seconds) {
  const auto ticks = std::max<std::int64_t>(1, std::llround(seconds / kTickStep.sec()));
  return SimTime::micros(ticks * kTickStep.us());
}

const Vec3 kTableDrop{0.65, 0.0, 0.0};
const Vec3 kSteamerDrop{0.0, 0.4, 0.0};
const Vec3 kServeDrop{0.75, 0.0, 0.0};
const Vec3 kHolderDrop{0.0, 0.5, 0.0};

}  // namespace

SimulatedPlayer::SimulatedPlayer(PlayerTraits traits, ErrorInjection errors, std::uint64_t seed)
    : traits_(traits), errors_(errors), rng_(mix_seed(seed, 0xB07)) {
  recorded_.label = "simulated";
  recorded_.seed = seed;
}

Vec3 SimulatedPlayer::aim(const Vec3& p) {
  if (traits_.jitter <= 0.0) return p;
  const double limit = 0.6 * layout::kPickupRadius;
  auto noise = [&] { return std::clamp(traits_.jitter * rng_.normal(), -limit, limit) / std::sqrt(2.0); };
  return {p.x + noise(), p.y + noise(), p.z};
}

void SimulatedPlayer::travel(const Vec3& to, double grab, double seconds, bool may_lose) {
  const SimTime total = quantize(seconds);
  const auto steps = std::max<std::int64_t>(1, total.us() / kFrameSpacing.us());
  const Vec3 from = hand_;
  for (std::int64_t k = 1; k <= steps; ++k) {
    const double f = static_cast<double>(k) / static_cast<double>(steps);
    cursor_ += SimTime::micros(total.us() / steps);
    hand_ = {from.x + (to.x - from.x) * f, from.y + (to.y - from.y) * f, from.z + (to.z - from.z) * f};
    queue_.push_back({cursor_, hand_, grab, true});
  }
  if (may_lose && traits_.hand_loss_prob > 0.0 && rng_.bernoulli(traits_.hand_loss_prob)) {
    cursor_ += kTickStep;
    queue_.push_back({cursor_, hand_, grab, false});
    cursor_ += kTickStep;
    queue_.push_back({cursor_, hand_, 0.0, true});
  }
}

void SimulatedPlayer::move_item(const Vec3& from, const Vec3& to) {
  travel(aim(from), 0.0, traits_.reach_s, false);
  cursor_ += quantize(traits_.grip_s);
  queue_.push_back({cursor_, hand_, 1.0, true});
  travel(aim(to), 1.0, traits_.reach_s, true);
  cursor_ += quantize(traits_.grip_s);
  queue_.push_back({cursor_, hand_, 0.0, true});
  busy_until_ = cursor_ + quantize(traits_.think_s);
}

void SimulatedPlayer::click() {
  cursor_ += kTickStep;
  queue_.push_back({cursor_, hand_, 1.0, true});
  cursor_ += kTickStep;
  queue_.push_back({cursor_, hand_, 0.0, true});
  busy_until_ = cursor_;
}

bool SimulatedPlayer::plan_dimsum(const DimSumState& s) {
  if (s.phase != DimSumPhase::Select) return false;
  if (!dimsum_planned_) {
    dimsum_planned_ = true;
    const auto forget = std::min<std::size_t>(static_cast<std::size_t>(std::max(0, errors_.dimsum_forget)), s.targets.size());
    for (std::size_t k = 0; k < forget; ++k) dimsum_forgotten_.insert(s.targets[s.targets.size() - 1 - k]);
  }
  const bool placed_one = s.remaining_targets.size() < s.targets.size();
  if (dimsum_wrong_done_ < errors_.dimsum_wrong && (placed_one || s.targets.size() == 1)) {
    for (const auto& item : s.items) {
      if (item.is_target || dimsum_tried_wrong_.count(item.item_id)) continue;
      dimsum_tried_wrong_.insert(item.item_id);
      ++dimsum_wrong_done_;
      move_item(item.cart_slot, kTableDrop);
      return true;
    }
    dimsum_wrong_done_ = errors_.dimsum_wrong;
  }
  for (const auto& id : s.targets) {
    if (!s.remaining_targets.count(id) || dimsum_forgotten_.count(id)) continue;
    move_item(find_item(s, id)->cart_slot, kTableDrop);
    return true;
  }
  return false;
}

bool SimulatedPlayer::plan_steamer(const SteamerState& s) {
  if (s.phase != SteamerPhase::Play) return false;
  if (!steamer_planned_) {
    steamer_planned_ = true;
    // Roles: s skip steaming, t skip transfer, e early, l late, n normal.
    const auto n = static_cast<int>(s.items.size());
    const int skip_steam = std::clamp(errors_.steamer_skip_steam, 0, n);
    int next = 0;
    auto assign = [&](int count, char role, int limit) {
      for (int k = 0; k < count && next < limit; ++k) steamer_role_[s.items[static_cast<std::size_t>(next++)].item_id] = role;
    };
    const int steamed = n - skip_steam;
    assign(errors_.steamer_early, 'e', steamed);
    assign(errors_.steamer_late, 'l', steamed);
    assign(steamed - next - std::clamp(errors_.steamer_skip_transfer, 0, steamed - next), 'n', steamed);
    assign(steamed, 't', steamed);
    assign(skip_steam, 's', n);
  }
  for (const auto& item : s.items) {
    const char role = steamer_role_[item.item_id];
    const bool due = (role == 'n' && item.stage == SteamerStage::Ready) ||
                     (role == 'e' && item.stage == SteamerStage::InSteamer) ||
                     (role == 'l' && item.stage == SteamerStage::Overcooked);
    if (due) {
      move_item(item_position(item), kServeDrop);
      return true;
    }
  }
  for (const auto& item : s.items) {
    if (item.stage != SteamerStage::InCart || steamer_role_[item.item_id] == 's') continue;
    move_item(item.cart_slot, kSteamerDrop);
    return true;
  }
  return false;
}

bool SimulatedPlayer::plan_cashier(const CashierState& s) {
  const auto* trial = s.current();
  if (s.phase != CashierPhase::Play || !trial || trial->status != TrialStatus::Active) return false;
  if (trial->index < errors_.cashier_idle_trials) return false;
  const MoneyAmount remaining = trial->change() - trial->placed_total();
  auto slot_for = [&](auto pred) -> const RegisterSlot* {
    for (const auto& slot : s.register_slots)
      if (pred(slot.denom)) return &slot;
    return nullptr;
  };
  if (overshoots_done_ < errors_.cashier_overshoots) {
    const RegisterSlot* best = nullptr;
    for (const auto& slot : s.register_slots)
      if (slot.denom.value > remaining && (!best || slot.denom.value < best->denom.value)) best = &slot;
    if (best) {
      ++overshoots_done_;
      move_item(best->pos, kHolderDrop);
      return true;
    }
    overshoots_done_ = errors_.cashier_overshoots;
  }
  std::vector<Denomination> denoms;
  for (const auto& slot : s.register_slots) denoms.push_back(slot.denom);
  const auto pieces = minimal_change(remaining, denoms);
  if (pieces.empty()) return false;
  const auto* slot = slot_for([&](const Denomination& d) { return d == pieces.front(); });
  move_item(slot->pos, kHolderDrop);
  return true;
}

void SimulatedPlayer::plan(const SessionEngine& engine) {
  if (engine.done() || engine.now() < busy_until_) return;
  cursor_ = engine.now();
  if (engine.stage() == Stage::Tutorial) {
    if (traits_.skip_tutorials) click();
    return;
  }
  switch (engine.game()) {
    case GameId::DimSum: plan_dimsum(*engine.dimsum()); break;
    case GameId::Steamer: plan_steamer(*engine.steamer()); break;
    case GameId::Cashier: plan_cashier(*engine.cashier()); break;
  }
}

std::vector<InputFrame> SimulatedPlayer::poll(const SessionEngine& engine) {
  if (queue_.empty()) plan(engine);
  std::vector<InputFrame> out;
  const SimTime horizon = engine.now() + kTickStep;
  while (!queue_.empty() && queue_.front().t < horizon) {
    const auto& w = queue_.front();
    const InputFrame f = normalized({std::max(w.t, engine.now()), w.pos, w.grab, w.present});
    out.push_back(f);
    recorded_.frames.push_back(f);
    queue_.pop_front();
  }
  return out;
}

PlayerTraits traits_for(AgeGroup group, Rng& rng) {
  PlayerTraits t;
  const double slow = group == AgeGroup::G60_69 ? 1.0 : group == AgeGroup::G70_79 ? 1.3 : 1.7;
  t.reach_s = slow * rng.uniform(0.5, 0.9);
  t.grip_s = slow * rng.uniform(0.1, 0.25);
  t.think_s = slow * rng.uniform(0.3, 1.2);
  t.jitter = slow * 0.02;
  return t;
}

}  // namespace senso
