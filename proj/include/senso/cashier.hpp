#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "senso/domain.hpp"
#include "senso/events.hpp"
#include "senso/gesture.hpp"
#include "senso/sim_time.hpp"

namespace senso {

// Currency in integer tenths of a unit. No floating-point money anywhere.
struct MoneyAmount {
  std::int64_t deci = 0;

  friend constexpr auto operator<=>(MoneyAmount, MoneyAmount) = default;
  friend constexpr MoneyAmount operator+(MoneyAmount a, MoneyAmount b) { return {a.deci + b.deci}; }
  friend constexpr MoneyAmount operator-(MoneyAmount a, MoneyAmount b) { return {a.deci - b.deci}; }
};

std::string format_money(MoneyAmount m);

enum class DenominationKind { Coin, Note };

struct Denomination {
  MoneyAmount value;
  DenominationKind kind = DenominationKind::Coin;

  friend auto operator<=>(const Denomination&, const Denomination&) = default;
};

std::string_view to_string(DenominationKind k);
std::optional<DenominationKind> parse_denomination_kind(std::string_view s);

// Coins 0.1..10 and notes 10..1000.
const std::vector<Denomination>& default_denominations();

enum class TrialStatus { Active, Completed, TimedOut };
std::string_view to_string(TrialStatus s);

struct CashierTrial {
  int index = 0;
  MoneyAmount bill;
  MoneyAmount payment;
  std::vector<Denomination> placed;
  SimTime clock;
  TrialStatus status = TrialStatus::Active;
  int overshoots = 0;

  MoneyAmount change() const { return payment - bill; }
  MoneyAmount placed_total() const;
};

// Deterministic (bill, payment) with change uniform on (0, max_change_amount].
CashierTrial cashier_gen_trial(const DifficultyParams& params, std::uint64_t seed, int index);
// Manual trial; zero change completes immediately. Throws DomainError if payment < bill.
CashierTrial make_trial(MoneyAmount bill, MoneyAmount payment, int index = 0);

enum class PlaceOutcome { Accepted, Completed, Rejected };

// Throws StateError unless the trial is Active.
PlaceOutcome cashier_place(CashierTrial& trial, const Denomination& denom);
// Returns true when this tick timed the trial out.
bool cashier_tick(CashierTrial& trial, SimTime dt, SimTime time_limit);

// Greedy largest-first. Minimal for canonical sets such as the default one.
std::vector<Denomination> minimal_change(MoneyAmount change,
                                         const std::vector<Denomination>& denoms = default_denominations());

enum class CashierPhase { Play, Complete };

struct RegisterSlot {
  Denomination denom;
  Vec3 pos;
};

// Register positions: coins on the lower row, notes above.
std::vector<RegisterSlot> register_layout(const std::vector<Denomination>& denoms);

struct CashierState {
  CashierPhase phase = CashierPhase::Play;
  DifficultyParams params;
  // Applied when the next trial starts.
  std::optional<DifficultyParams> next_params;
  std::uint64_t seed = 0;
  int trial_count = 0;
  std::vector<CashierTrial> trials;
  std::vector<RegisterSlot> register_slots;
  std::optional<Denomination> held;
  SimTime clock;
  SimTime origin;
  std::vector<GameEvent> event_log;

  const CashierTrial* current() const { return trials.empty() ? nullptr : &trials.back(); }
};

CashierState cashier_start(const DifficultyParams& params, std::uint64_t seed, SimTime origin = {},
                           const std::vector<Denomination>& denoms = default_denominations());
void cashier_game_tick(CashierState& state, SimTime dt);
void cashier_apply(CashierState& state, const GestureEvent& event);
void cashier_set_params(CashierState& state, const DifficultyParams& params);

}  // namespace senso
