#include "senso/cashier.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <limits>

#include "senso/errors.hpp"
#include "senso/layout.hpp"
#include "senso/rng.hpp"

namespace senso {

std::string format_money(MoneyAmount m) {
  char buf[48];
  const std::int64_t mag = m.deci < 0 ? -m.deci : m.deci;
  std::snprintf(buf, sizeof buf, "%s$%" PRId64 ".%" PRId64, m.deci < 0 ? "-" : "", mag / 10, mag % 10);
  return buf;
}

std::string_view to_string(DenominationKind k) { return k == DenominationKind::Coin ? "coin" : "note"; }

std::optional<DenominationKind> parse_denomination_kind(std::string_view s) {
  if (s == "coin") return DenominationKind::Coin;
  if (s == "note") return DenominationKind::Note;
  return std::nullopt;
}

const std::vector<Denomination>& default_denominations() {
  static const std::vector<Denomination> set = [] {
    std::vector<Denomination> d;
    for (std::int64_t v : {1, 2, 5, 10, 20, 50, 100}) d.push_back({{v}, DenominationKind::Coin});
    for (std::int64_t v : {100, 200, 500, 1000, 5000, 10000}) d.push_back({{v}, DenominationKind::Note});
    return d;
  }();
  return set;
}

std::string_view to_string(TrialStatus s) {
  switch (s) {
    case TrialStatus::Active: return "Active";
    case TrialStatus::Completed: return "Completed";
    case TrialStatus::TimedOut: return "TimedOut";
  }
  return "Active";
}

MoneyAmount CashierTrial::placed_total() const {
  MoneyAmount sum;
  for (const auto& d : placed) sum = sum + d.value;
  return sum;
}

CashierTrial cashier_gen_trial(const DifficultyParams& params, std::uint64_t seed, int index) {
  Rng rng(mix_seed(seed, 0xCA00 + static_cast<std::uint64_t>(index)));
  const std::int64_t max_change = static_cast<std::int64_t>(params.max_change_amount) * 10;
  const MoneyAmount change{rng.uniform_int(1, max_change)};
  const MoneyAmount bill{rng.uniform_int(1, 10000)};
  CashierTrial t;
  t.index = index;
  t.bill = bill;
  t.payment = bill + change;
  return t;
}

CashierTrial make_trial(MoneyAmount bill, MoneyAmount payment, int index) {
  if (payment < bill) throw DomainError("payment is less than the bill");
  if (bill.deci < 0) throw DomainError("bill is negative");
  CashierTrial t;
  t.index = index;
  t.bill = bill;
  t.payment = payment;
  if (t.change().deci == 0) t.status = TrialStatus::Completed;
  return t;
}

PlaceOutcome cashier_place(CashierTrial& trial, const Denomination& denom) {
  if (trial.status != TrialStatus::Active) throw StateError("placement on a finished trial");
  const MoneyAmount after = trial.placed_total() + denom.value;
  if (after > trial.change()) {
    ++trial.overshoots;
    return PlaceOutcome::Rejected;
  }
  trial.placed.push_back(denom);
  if (after == trial.change()) {
    trial.status = TrialStatus::Completed;
    return PlaceOutcome::Completed;
  }
  return PlaceOutcome::Accepted;
}

bool cashier_tick(CashierTrial& trial, SimTime dt, SimTime time_limit) {
  if (dt <= SimTime{}) throw DomainError("tick dt must be positive");
  if (trial.status != TrialStatus::Active) return false;
  trial.clock += dt;
  if (trial.clock >= time_limit) {
    trial.status = TrialStatus::TimedOut;
    return true;
  }
  return false;
}

std::vector<Denomination> minimal_change(MoneyAmount change, const std::vector<Denomination>& denoms) {
  if (change.deci < 0) throw DomainError("negative change");
  std::vector<Denomination> sorted = denoms;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Denomination& a, const Denomination& b) { return a.value > b.value; });
  std::vector<Denomination> out;
  std::int64_t rest = change.deci;
  for (const auto& d : sorted) {
    if (d.value.deci <= 0) continue;
    while (rest >= d.value.deci) {
      out.push_back(d);
      rest -= d.value.deci;
    }
  }
  if (rest != 0) throw DomainError("change not representable in the denomination set");
  return out;
}

std::vector<RegisterSlot> register_layout(const std::vector<Denomination>& denoms) {
  std::vector<RegisterSlot> slots;
  for (auto kind : {DenominationKind::Coin, DenominationKind::Note}) {
    std::vector<Denomination> row;
    for (const auto& d : denoms)
      if (d.kind == kind) row.push_back(d);
    std::sort(row.begin(), row.end());
    const double y = kind == DenominationKind::Coin ? -0.8 : -0.5;
    for (std::size_t i = 0; i < row.size(); ++i) {
      const double x = row.size() == 1 ? 0.0 : -0.9 + 1.8 * static_cast<double>(i) / static_cast<double>(row.size() - 1);
      slots.push_back({row[i], {x, y, 0.0}});
    }
  }
  return slots;
}

namespace {

nlohmann::json denom_json(const Denomination& d) {
  return {{"value", d.value.deci}, {"kind", std::string(to_string(d.kind))}};
}

void log(CashierState& s, EventKind kind, nlohmann::json payload) {
  GameEvent e;
  e.seq = static_cast<std::int64_t>(s.event_log.size());
  e.t = s.origin + s.clock;
  e.game = GameId::Cashier;
  e.kind = kind;
  e.payload = std::move(payload);
  s.event_log.push_back(std::move(e));
}

void begin_trial(CashierState& s) {
  if (s.next_params) {
    s.params = *s.next_params;
    s.next_params.reset();
  }
  const int index = static_cast<int>(s.trials.size());
  s.trials.push_back(cashier_gen_trial(s.params, s.seed, index));
  const auto& t = s.trials.back();
  log(s, EventKind::TrialStart,
      {{"trial", index}, {"bill", t.bill.deci}, {"payment", t.payment.deci},
       {"time_limit_s", s.params.cashier_time_limit_s}});
}

// Closes the current trial and either opens the next one or ends the game.
void end_trial(CashierState& s) {
  const auto& t = s.trials.back();
  if (t.status == TrialStatus::Completed)
    log(s, EventKind::Correct, {{"trial", t.index}});
  else
    log(s, EventKind::Omission, {{"trial", t.index}});
  log(s, EventKind::TrialEnd, {{"trial", t.index}, {"status", std::string(to_string(t.status))}});
  s.held.reset();
  if (static_cast<int>(s.trials.size()) < s.trial_count) {
    begin_trial(s);
  } else {
    s.phase = CashierPhase::Complete;
    log(s, EventKind::GameComplete, {{"reason", "trials_done"}});
  }
}

}  // namespace

CashierState cashier_start(const DifficultyParams& params, std::uint64_t seed, SimTime origin,
                           const std::vector<Denomination>& denoms) {
  validate_params(params);
  if (denoms.empty()) throw ConfigError("empty denomination set");
  CashierState s;
  s.params = params;
  s.seed = seed;
  s.origin = origin;
  s.trial_count = params.cashier_trial_count;
  s.register_slots = register_layout(denoms);
  log(s, EventKind::GameStart, {{"required_actions", s.trial_count}});
  begin_trial(s);
  return s;
}

void cashier_set_params(CashierState& s, const DifficultyParams& params) {
  validate_params(params);
  s.next_params = params;
}

void cashier_game_tick(CashierState& s, SimTime dt) {
  if (dt <= SimTime{}) throw DomainError("tick dt must be positive");
  if (s.phase == CashierPhase::Complete) return;
  s.clock += dt;
  auto& trial = s.trials.back();
  if (cashier_tick(trial, dt, SimTime::seconds(s.params.cashier_time_limit_s))) end_trial(s);
}

void cashier_apply(CashierState& s, const GestureEvent& g) {
  if (s.phase != CashierPhase::Play) return;
  if (g.kind == GestureKind::GraspStart) {
    if (s.held) return;
    const RegisterSlot* best = nullptr;
    double best_d = std::numeric_limits<double>::infinity();
    for (const auto& slot : s.register_slots) {
      const double d = planar_distance(slot.pos, g.pos);
      if (d <= layout::kPickupRadius && d < best_d) {
        best = &slot;
        best_d = d;
      }
    }
    if (best) {
      s.held = best->denom;
      log(s, EventKind::Grasp, {{"denom", denom_json(best->denom)}});
    }
    return;
  }
  if (!is_release(g.kind) || !s.held) return;
  const Denomination denom = *s.held;
  s.held.reset();
  if (!layout::kCashHolder.contains(g.pos)) {
    log(s, EventKind::Drop, {{"denom", denom_json(denom)}});
    return;
  }
  auto& trial = s.trials.back();
  switch (cashier_place(trial, denom)) {
    case PlaceOutcome::Rejected:
      log(s, EventKind::Inaccuracy, {{"trial", trial.index}, {"denom", denom_json(denom)}});
      break;
    case PlaceOutcome::Accepted:
      log(s, EventKind::Place, {{"trial", trial.index}, {"denom", denom_json(denom)}});
      break;
    case PlaceOutcome::Completed:
      log(s, EventKind::Place, {{"trial", trial.index}, {"denom", denom_json(denom)}});
      end_trial(s);
      break;
  }
}

}  // namespace senso
