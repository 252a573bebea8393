#pragma once

#include <cmath>
#include <compare>
#include <cstdint>

namespace senso {

// Simulated time in integer microseconds. All game clocks use this so that
// repeated fixed-step advances never drift (20 x 0.05 s is exactly 1 s).
class SimTime {
 public:
  constexpr SimTime() = default;
  static constexpr SimTime micros(std::int64_t us) { return SimTime(us); }
  static SimTime seconds(double s) { return SimTime(std::llround(s * 1e6)); }

  constexpr std::int64_t us() const { return us_; }
  constexpr double sec() const { return static_cast<double>(us_) / 1e6; }

  constexpr SimTime& operator+=(SimTime o) {
    us_ += o.us_;
    return *this;
  }
  constexpr SimTime& operator-=(SimTime o) {
    us_ -= o.us_;
    return *this;
  }
  friend constexpr SimTime operator+(SimTime a, SimTime b) { return SimTime(a.us_ + b.us_); }
  friend constexpr SimTime operator-(SimTime a, SimTime b) { return SimTime(a.us_ - b.us_); }
  friend constexpr auto operator<=>(SimTime, SimTime) = default;

 private:
  constexpr explicit SimTime(std::int64_t us) : us_(us) {}
  std::int64_t us_ = 0;
};

// Engine step (50 ms) shared by offline simulation and the live service.
inline constexpr SimTime kTickStep = SimTime::micros(50'000);

}  // namespace senso
