#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "senso/sim_time.hpp"

namespace senso {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Vec3&, const Vec3&) = default;
};

// Planar distance; interaction zones live on the z = const plane.
double planar_distance(const Vec3& a, const Vec3& b);

// One raw hand sample. Coordinates are in the normalized interaction box.
struct InputFrame {
  SimTime t;
  Vec3 pos;
  double grab = 0.0;
  bool hand_present = true;

  friend bool operator==(const InputFrame&, const InputFrame&) = default;
};

// Clamps coordinates to [-1, 1], grab to [0, 1] and rounds both to the
// 6-decimal grid used by recordings.
InputFrame normalized(const InputFrame& f);

enum class GestureKind { GraspStart, Move, Release, HandLost };

std::string_view to_string(GestureKind k);
std::optional<GestureKind> parse_gesture_kind(std::string_view s);

struct GestureEvent {
  SimTime t;
  GestureKind kind = GestureKind::Move;
  Vec3 pos;

  friend bool operator==(const GestureEvent&, const GestureEvent&) = default;
};

inline bool is_release(GestureKind k) { return k == GestureKind::Release || k == GestureKind::HandLost; }

struct RecognizerConfig {
  double grasp_threshold = 0.7;
  double release_threshold = 0.3;
  double move_deadband = 0.01;
};

// Single-hand hysteresis recognizer: grab strength has to climb to the grasp
// threshold to start a grasp and fall to the release threshold to end it, so
// tremor inside the band never toggles state.
class GestureRecognizer {
 public:
  explicit GestureRecognizer(RecognizerConfig cfg = {}) : cfg_(cfg) {}

  // Appends any recognized events to `out`. Throws StreamError on time regression.
  void push(const InputFrame& frame, std::vector<GestureEvent>& out);
  std::vector<GestureEvent> push(const InputFrame& frame);

  bool grasping() const noexcept { return grasping_; }
  std::size_t frames_seen() const noexcept { return index_; }

 private:
  RecognizerConfig cfg_;
  bool grasping_ = false;
  Vec3 last_pos_;
  Vec3 last_move_pos_;
  std::optional<SimTime> last_t_;
  std::size_t index_ = 0;
};

std::vector<GestureEvent> recognize(std::span<const InputFrame> frames, RecognizerConfig cfg = {});

// A recorded or scripted frame stream plus optional metadata.
struct InputScript {
  std::string label;
  std::optional<std::uint64_t> seed;
  std::vector<InputFrame> frames;

  friend bool operator==(const InputScript&, const InputScript&) = default;
};

// Recording format: optional "# key: value" header lines, then one frame per
// line as `t x y z grab hand_present`, six decimals, LF-terminated.
void write_recording(std::ostream& os, const InputScript& script);
InputScript read_recording(std::istream& is);
std::string format_frame(const InputFrame& f);

void save_recording(const std::string& path, const InputScript& script);
InputScript load_recording(const std::string& path);

}  // namespace senso
