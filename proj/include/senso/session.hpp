#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "senso/cashier.hpp"
#include "senso/dimsum.hpp"
#include "senso/gesture.hpp"
#include "senso/record.hpp"
#include "senso/scent.hpp"
#include "senso/steamer.hpp"

namespace senso {

enum class Stage { Tutorial, Play, Done };
std::string_view to_string(Stage s);

// Steps between snapshots: 2 x 50 ms gives 10 per second.
inline constexpr int kSnapshotEvery = 2;

struct SessionOptions {
  std::string session_id;
  std::string created_at;
  // Called with every snapshot as it is produced.
  std::function<void(const nlohmann::json&)> on_snapshot;
  // Called with every emission as it is delivered to the driver.
  std::function<void(const Emission&)> on_scent;
  // Driver for scent pulses; the engine's own mock driver when null.
  ScentDriver* driver = nullptr;
};

// Runs the fixed plan (tutorial + game for Dim Sum, Steamer, Cashier) on a
// 50 ms grid. All game mutation for one session happens through this object.
class SessionEngine {
 public:
  SessionEngine(ParticipantProfile profile, SessionConfig config, std::uint64_t seed, SessionOptions opts = {});

  SimTime now() const noexcept { return now_; }
  Stage stage() const noexcept { return stage_; }
  GameId game() const noexcept { return kGameOrder[game_index_]; }
  bool done() const noexcept { return stage_ == Stage::Done; }
  bool finalized() const noexcept { return finalized_; }

  // One fixed step.
  void step();
  // Steps until the next step would pass `t`; frames at `t` apply at the
  // grid point at or below it.
  void advance_to(SimTime t);
  // Throws StreamError on time regression.
  void push_frame(const InputFrame& frame);
  // Logs and applies one recognized gesture at the current time.
  void push_gesture(const GestureEvent& g);
  // Applies from the next trial (Cashier) or the next game start.
  void set_difficulty(const DifficultyParams& params);
  // Steps until every game is complete and returns the record.
  SessionRecord finalize(const QuestionnaireBundle& q = {});

  nlohmann::json snapshot() const;
  const std::vector<GameEvent>& events() const noexcept { return log_.entries(); }
  const std::map<GameId, TaskMetrics>& metrics() const noexcept { return metrics_; }
  const ScentBridge& scents() const noexcept { return bridge_; }
  const MockScentDriver& mock_driver() const noexcept { return mock_; }
  const DifficultyParams& params() const noexcept { return params_; }
  std::int64_t snapshot_seq() const noexcept { return snapshot_seq_; }

  const DimSumState* dimsum() const { return dimsum_ ? &*dimsum_ : nullptr; }
  const SteamerState* steamer() const { return steamer_ ? &*steamer_ : nullptr; }
  const CashierState* cashier() const { return cashier_ ? &*cashier_ : nullptr; }

 private:
  void begin_tutorial();
  void begin_game();
  void sync_game_events();
  void after_game_call();
  void emit_snapshot();
  void report_scents();
  ScentDriver& driver() { return opts_.driver ? *opts_.driver : mock_; }
  SessionRecord build_record(const QuestionnaireBundle& q) const;

  ParticipantProfile profile_;
  SessionConfig config_;
  std::uint64_t seed_;
  SessionOptions opts_;
  DifficultyParams params_;

  SimTime now_;
  Stage stage_ = Stage::Tutorial;
  std::size_t game_index_ = 0;
  SimTime tutorial_start_;
  bool finalized_ = false;

  GestureRecognizer recognizer_;
  std::optional<Vec3> hand_;
  bool grasping_ = false;

  EventLog log_;
  std::optional<DimSumState> dimsum_;
  std::optional<SteamerState> steamer_;
  std::optional<CashierState> cashier_;
  std::size_t synced_ = 0;
  std::size_t scents_synced_ = 0;
  std::vector<std::int64_t> local_to_global_;

  std::map<GameId, TaskMetrics> metrics_;
  ScentBridge bridge_;
  MockScentDriver mock_;
  std::size_t scents_reported_ = 0;
  std::int64_t steps_ = 0;
  std::int64_t snapshot_seq_ = 0;
};

// Supplies the frames to apply at the engine's current grid point.
class FrameSource {
 public:
  virtual ~FrameSource() = default;
  // Frames with now <= t < now + kTickStep.
  virtual std::vector<InputFrame> poll(const SessionEngine& engine) = 0;
};

class ScriptSource final : public FrameSource {
 public:
  explicit ScriptSource(const InputScript& script) : frames_(script.frames) {}
  std::vector<InputFrame> poll(const SessionEngine& engine) override;
  bool exhausted() const noexcept { return next_ >= frames_.size(); }

 private:
  std::vector<InputFrame> frames_;
  std::size_t next_ = 0;
};

// Drives the engine with `source` until the plan finishes. When the source
// runs dry, remaining games time out.
SessionRecord run_session(const ParticipantProfile& profile, const SessionConfig& config, std::uint64_t seed,
                          FrameSource& source, const QuestionnaireBundle& q = {}, SessionOptions opts = {});
SessionRecord run_session(const ParticipantProfile& profile, const SessionConfig& config, std::uint64_t seed,
                          const InputScript& script, const QuestionnaireBundle& q = {}, SessionOptions opts = {});

// Re-executes a record from its logged gestures and difficulty changes.
// The result carries the same id, timestamp and questionnaires.
SessionRecord replay_record(const SessionRecord& record, SessionOptions opts = {});

nlohmann::json gesture_json(const GestureEvent& g);
GestureEvent gesture_from_json(SimTime t, const nlohmann::json& j);

}  // namespace senso
