#pragma once

#include <cstdint>
#include <deque>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "senso/sim_time.hpp"

namespace senso {

inline constexpr std::int64_t kBurntScentMs = 5000;
inline const std::string kBurntScent = "burnt";
// Same-scent commands starting within this window of an open emission are
// folded into it; diffusers cannot articulate faster than this.
inline constexpr SimTime kScentMergeWindow = SimTime::micros(500'000);

std::string food_scent(const std::string& item_id);

struct ScentCommand {
  SimTime t;
  std::string scent_id;
  std::int64_t duration_ms = 0;
  // Sequence number of the game event that triggered the command.
  std::int64_t source_event = -1;

  friend bool operator==(const ScentCommand&, const ScentCommand&) = default;
};

enum class EmissionStatus { Emitted, Failed };

// One physical pulse sent to the device, possibly covering several merged commands.
struct Emission {
  SimTime t;
  std::string scent_id;
  std::int64_t duration_ms = 0;
  std::vector<std::int64_t> sources;
  EmissionStatus status = EmissionStatus::Emitted;

  friend bool operator==(const Emission&, const Emission&) = default;
};

// Device-side interface. Returning false (or throwing) marks the emission failed.
class ScentDriver {
 public:
  virtual ~ScentDriver() = default;
  virtual bool emit(SimTime t, const std::string& scent_id, std::int64_t duration_ms) = 0;
  virtual bool stop(SimTime t, const std::string& scent_id) = 0;
};

// Wire lines: `EMIT <scent_id> <duration_ms>` and `STOP <scent_id>`.
std::string emit_line(const std::string& scent_id, std::int64_t duration_ms);
std::string stop_line(const std::string& scent_id);
// Mock log line: seconds with 3 decimals, a space, then the wire line.
std::string timestamped(SimTime t, const std::string& wire_line);

// Records every line it receives; optionally mirrors them to a stream.
class MockScentDriver final : public ScentDriver {
 public:
  MockScentDriver() = default;
  explicit MockScentDriver(std::ostream* mirror) : mirror_(mirror) {}

  bool emit(SimTime t, const std::string& scent_id, std::int64_t duration_ms) override;
  bool stop(SimTime t, const std::string& scent_id) override;

  // Emit calls with these 0-based indices report failure.
  void fail_on(std::set<std::size_t> call_indices) { fail_on_ = std::move(call_indices); }
  const std::vector<std::string>& lines() const noexcept { return lines_; }

 private:
  std::ostream* mirror_ = nullptr;
  std::vector<std::string> lines_;
  std::set<std::size_t> fail_on_;
  std::size_t emit_calls_ = 0;
};

// Per-session scent queue. Commands are held until their merge window closes,
// then delivered to the driver in timestamp order.
class ScentBridge {
 public:
  // Throws StateError on non-positive duration or a timestamp regression.
  void enqueue(const ScentCommand& cmd);
  // Delivers every open emission whose merge window has closed by `now`.
  std::size_t drain(ScentDriver& driver, SimTime now);
  // Delivers everything still open, then sends STOP for pulses still running at `now`.
  std::size_t flush(ScentDriver& driver, SimTime now);

  const std::vector<Emission>& log() const noexcept { return log_; }
  std::size_t pending() const noexcept { return open_.size(); }
  std::size_t commands_received() const noexcept { return received_; }
  std::size_t commands_merged() const noexcept { return merged_; }

 private:
  std::size_t deliver_front(ScentDriver& driver);

  std::deque<Emission> open_;
  std::vector<Emission> log_;
  std::set<std::string> stopped_;
  SimTime last_t_;
  std::size_t received_ = 0;
  std::size_t merged_ = 0;
};

}  // namespace senso
