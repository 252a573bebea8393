#include "senso/scent.hpp"

#include <cinttypes>
#include <cstdio>
#include <ostream>

#include "senso/errors.hpp"

namespace senso {

std::string food_scent(const std::string& item_id) { return "food." + item_id; }

std::string emit_line(const std::string& scent_id, std::int64_t duration_ms) {
  return "EMIT " + scent_id + " " + std::to_string(duration_ms);
}

std::string stop_line(const std::string& scent_id) { return "STOP " + scent_id; }

std::string timestamped(SimTime t, const std::string& wire_line) {
  // Whole milliseconds; the engine grid is 50 ms so nothing is lost.
  const std::int64_t ms = t.us() / 1000;
  char buf[48];
  std::snprintf(buf, sizeof buf, "%" PRId64 ".%03" PRId64 " ", ms / 1000, ms % 1000);
  return buf + wire_line;
}

bool MockScentDriver::emit(SimTime t, const std::string& scent_id, std::int64_t duration_ms) {
  if (fail_on_.count(emit_calls_++)) return false;
  lines_.push_back(timestamped(t, emit_line(scent_id, duration_ms)));
  if (mirror_) *mirror_ << lines_.back() << '\n';
  return true;
}

bool MockScentDriver::stop(SimTime t, const std::string& scent_id) {
  lines_.push_back(timestamped(t, stop_line(scent_id)));
  if (mirror_) *mirror_ << lines_.back() << '\n';
  return true;
}

void ScentBridge::enqueue(const ScentCommand& cmd) {
  if (cmd.duration_ms <= 0) throw StateError("scent duration must be positive");
  if (received_ > 0 && cmd.t < last_t_) throw StateError("scent commands must be time-ordered");
  last_t_ = cmd.t;
  ++received_;

  const SimTime end = cmd.t + SimTime::micros(cmd.duration_ms * 1000);
  for (auto& open : open_) {
    if (open.scent_id != cmd.scent_id || cmd.t - open.t >= kScentMergeWindow) continue;
    const SimTime open_end = open.t + SimTime::micros(open.duration_ms * 1000);
    if (end > open_end) open.duration_ms = (end - open.t).us() / 1000;
    open.sources.push_back(cmd.source_event);
    ++merged_;
    return;
  }
  open_.push_back({cmd.t, cmd.scent_id, cmd.duration_ms, {cmd.source_event}, EmissionStatus::Emitted});
}

std::size_t ScentBridge::deliver_front(ScentDriver& driver) {
  Emission e = std::move(open_.front());
  open_.pop_front();
  bool ok = false;
  try {
    ok = driver.emit(e.t, e.scent_id, e.duration_ms);
  } catch (const std::exception&) {
    ok = false;
  }
  e.status = ok ? EmissionStatus::Emitted : EmissionStatus::Failed;
  log_.push_back(std::move(e));
  return ok ? 1 : 0;
}

std::size_t ScentBridge::drain(ScentDriver& driver, SimTime now) {
  std::size_t delivered = 0;
  while (!open_.empty() && open_.front().t + kScentMergeWindow <= now) delivered += deliver_front(driver);
  return delivered;
}

std::size_t ScentBridge::flush(ScentDriver& driver, SimTime now) {
  std::size_t delivered = 0;
  while (!open_.empty()) delivered += deliver_front(driver);
  // Latest end time per scent among delivered pulses.
  std::vector<std::pair<std::string, SimTime>> active;
  for (const auto& e : log_) {
    if (e.status != EmissionStatus::Emitted) continue;
    const SimTime end = e.t + SimTime::micros(e.duration_ms * 1000);
    bool found = false;
    for (auto& [id, t] : active)
      if (id == e.scent_id) {
        if (end > t) t = end;
        found = true;
      }
    if (!found) active.emplace_back(e.scent_id, end);
  }
  for (const auto& [id, end] : active) {
    if (end > now && !stopped_.count(id)) {
      stopped_.insert(id);
      try {
        driver.stop(now, id);
      } catch (const std::exception&) {
      }
    }
  }
  return delivered;
}

}  // namespace senso
