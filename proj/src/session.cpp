#include "senso/session.hpp"

#include <algorithm>

#include "senso/errors.hpp"
#include "senso/metrics.hpp"

namespace senso {

std::string_view to_string(Stage s) {
  switch (s) {
    case Stage::Tutorial: return "Tutorial";
    case Stage::Play: return "Play";
    case Stage::Done: return "Done";
  }
  return "Done";
}

namespace {

nlohmann::json vec_json(const Vec3& v) { return {{"x", v.x}, {"y", v.y}, {"z", v.z}}; }

nlohmann::json dimsum_view(const DimSumState& s) {
  nlohmann::json items = nlohmann::json::array();
  for (const auto& i : s.items) {
    nlohmann::json item{{"id", i.item_id}, {"pos", vec_json(i.cart_slot)}, {"on_table", i.on_table}};
    items.push_back(std::move(item));
  }
  const bool memorize = s.phase == DimSumPhase::Memorize;
  return {{"phase", to_string(s.phase)},
          {"clock", s.clock.sec()},
          {"items", std::move(items)},
          {"targets", memorize ? nlohmann::json(s.targets) : nlohmann::json::array()},
          {"remaining", s.remaining_targets.size()},
          {"held", s.held_item ? nlohmann::json(*s.held_item) : nlohmann::json()},
          {"table_zone", zone_json(layout::kDimSumTable)}};
}

nlohmann::json steamer_view(const SteamerState& s) {
  nlohmann::json items = nlohmann::json::array();
  for (const auto& i : s.items)
    items.push_back({{"id", i.item_id},
                     {"stage", to_string(i.stage)},
                     {"cue", to_string(i.cue)},
                     {"steam_clock", i.steam_clock.sec()},
                     {"pos", vec_json(item_position(i))}});
  return {{"phase", to_string(s.phase)},
          {"clock", s.clock.sec()},
          {"items", std::move(items)},
          {"held", s.held ? nlohmann::json(s.items[*s.held].item_id) : nlohmann::json()},
          {"steamer_zone", zone_json(layout::kSteamerZone)},
          {"serving_zone", zone_json(layout::kServingZone)}};
}

nlohmann::json denom_view(const Denomination& d) { return {{"value", d.value.deci}, {"kind", to_string(d.kind)}}; }

nlohmann::json cashier_view(const CashierState& s) {
  nlohmann::json trial;
  if (const auto* t = s.current()) {
    nlohmann::json placed = nlohmann::json::array();
    for (const auto& d : t->placed) placed.push_back(denom_view(d));
    trial = {{"index", t->index},           {"bill", t->bill.deci},
             {"payment", t->payment.deci},  {"change", t->change().deci},
             {"placed", std::move(placed)}, {"placed_total", t->placed_total().deci},
             {"clock", t->clock.sec()},     {"status", to_string(t->status)}};
  }
  nlohmann::json slots = nlohmann::json::array();
  for (const auto& slot : s.register_slots) slots.push_back({{"denom", denom_view(slot.denom)}, {"pos", vec_json(slot.pos)}});
  return {{"phase", s.phase == CashierPhase::Play ? "Play" : "Complete"},
          {"clock", s.clock.sec()},
          {"trial", std::move(trial)},
          {"trials_total", s.trial_count},
          {"register", std::move(slots)},
          {"held", s.held ? denom_view(*s.held) : nlohmann::json()},
          {"holder_zone", zone_json(layout::kCashHolder)}};
}

// Item counts the configured catalog and layout can hold.
void check_capacity(const DifficultyParams& p, const SessionConfig& c) {
  std::vector<std::string> pool = c.dimsum_catalog;
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  std::vector<std::string> bad;
  const auto cart = std::min(pool.size(), layout::kDimSumCartCapacity);
  const auto basket = std::min(pool.size(), layout::kSteamerCapacity);
  if (static_cast<std::size_t>(p.dimsum_item_count) > cart)
    bad.push_back("dimsum_item_count: at most " + std::to_string(cart));
  if (static_cast<std::size_t>(p.steamer_item_count) > basket)
    bad.push_back("steamer_item_count: at most " + std::to_string(basket));
  if (c.denominations.empty()) bad.emplace_back("denominations: empty");
  if (!bad.empty()) throw ValidationError(std::move(bad));
}

}  // namespace

nlohmann::json gesture_json(const GestureEvent& g) {
  return {{"kind", to_string(g.kind)}, {"x", g.pos.x}, {"y", g.pos.y}, {"z", g.pos.z}};
}

GestureEvent gesture_from_json(SimTime t, const nlohmann::json& j) {
  const auto kind = parse_gesture_kind(j.at("kind").get<std::string>());
  if (!kind) throw ParseError("unknown gesture kind", 0);
  return {t, *kind, {j.at("x").get<double>(), j.at("y").get<double>(), j.at("z").get<double>()}};
}

SessionEngine::SessionEngine(ParticipantProfile profile, SessionConfig config, std::uint64_t seed,
                             SessionOptions opts)
    : profile_(std::move(profile)), config_(std::move(config)), seed_(seed), opts_(std::move(opts)) {
  validate_params(config_.params);
  check_capacity(config_.params, config_);
  params_ = config_.params;
  log_.append(now_, std::nullopt, EventKind::SessionStart,
              {{"participant", profile_.participant_id}, {"seed", seed_}});
  begin_tutorial();
}

void SessionEngine::begin_tutorial() {
  stage_ = Stage::Tutorial;
  tutorial_start_ = now_;
  if (config_.skip_tutorials || params_.tutorial_duration_s == 0.0) {
    log_.append(now_, game(), EventKind::TutorialSkipped, {{"reason", "config"}});
    begin_game();
    return;
  }
  log_.append(now_, game(), EventKind::TutorialStart, {{"duration_s", params_.tutorial_duration_s}});
}

void SessionEngine::begin_game() {
  stage_ = Stage::Play;
  synced_ = 0;
  scents_synced_ = 0;
  local_to_global_.clear();
  switch (game()) {
    case GameId::DimSum: dimsum_ = dimsum_start(params_, seed_, now_, config_.dimsum_catalog); break;
    case GameId::Steamer: steamer_ = steamer_start(params_, seed_, now_, config_.dimsum_catalog); break;
    case GameId::Cashier: cashier_ = cashier_start(params_, seed_, now_, config_.denominations); break;
  }
  after_game_call();
}

void SessionEngine::sync_game_events() {
  const std::vector<GameEvent>* local = nullptr;
  switch (game()) {
    case GameId::DimSum: local = &dimsum_->event_log; break;
    case GameId::Steamer: local = &steamer_->event_log; break;
    case GameId::Cashier: local = &cashier_->event_log; break;
  }
  for (; synced_ < local->size(); ++synced_) {
    const auto& e = (*local)[synced_];
    local_to_global_.push_back(log_.append(e.t, e.game, e.kind, e.payload).seq);
  }
  if (game() == GameId::Steamer) {
    for (; scents_synced_ < steamer_->scent_queue.size(); ++scents_synced_) {
      ScentCommand cmd = steamer_->scent_queue[scents_synced_];
      cmd.source_event = local_to_global_.at(static_cast<std::size_t>(cmd.source_event));
      bridge_.enqueue(cmd);
    }
  }
}

void SessionEngine::after_game_call() {
  sync_game_events();
  bool complete = false;
  switch (game()) {
    case GameId::DimSum: complete = dimsum_->phase == DimSumPhase::Complete; break;
    case GameId::Steamer: complete = steamer_->phase == SteamerPhase::Complete; break;
    case GameId::Cashier: complete = cashier_->phase == CashierPhase::Complete; break;
  }
  if (!complete) return;
  metrics_[game()] = compute_metrics(log_.entries(), game());
  if (game_index_ + 1 < std::size(kGameOrder)) {
    ++game_index_;
    begin_tutorial();
    return;
  }
  stage_ = Stage::Done;
  bridge_.flush(driver(), now_);
  report_scents();
  log_.append(now_, std::nullopt, EventKind::SessionEnd, nlohmann::json::object());
}

void SessionEngine::report_scents() {
  for (; scents_reported_ < bridge_.log().size(); ++scents_reported_)
    if (opts_.on_scent) opts_.on_scent(bridge_.log()[scents_reported_]);
}

void SessionEngine::step() {
  if (done()) return;
  now_ += kTickStep;
  ++steps_;
  if (stage_ == Stage::Tutorial) {
    if (now_ - tutorial_start_ >= SimTime::seconds(params_.tutorial_duration_s)) begin_game();
  } else {
    switch (game()) {
      case GameId::DimSum: dimsum_tick(*dimsum_, kTickStep); break;
      case GameId::Steamer: steamer_tick(*steamer_, kTickStep); break;
      case GameId::Cashier: cashier_game_tick(*cashier_, kTickStep); break;
    }
    after_game_call();
  }
  if (!done()) {
    bridge_.drain(driver(), now_);
    report_scents();
  }
  if (steps_ % kSnapshotEvery == 0) emit_snapshot();
}

void SessionEngine::advance_to(SimTime t) {
  while (!done() && now_ + kTickStep <= t) step();
}

void SessionEngine::push_frame(const InputFrame& frame) {
  if (finalized_) throw StateError("session is finalized");
  const InputFrame f = normalized(frame);
  if (f.t < now_) throw StreamError("frame at " + std::to_string(f.t.sec()) + " s is behind the engine clock",
                                    recognizer_.frames_seen());
  advance_to(f.t);
  std::vector<GestureEvent> gestures;
  recognizer_.push(f, gestures);
  for (const auto& g : gestures) push_gesture(g);
}

void SessionEngine::push_gesture(const GestureEvent& g) {
  if (done()) return;
  GestureEvent at = g;
  at.t = now_;
  hand_ = at.pos;
  if (at.kind == GestureKind::GraspStart) grasping_ = true;
  if (is_release(at.kind)) grasping_ = false;
  log_.append(now_, game(), EventKind::Gesture, gesture_json(at));
  if (stage_ == Stage::Tutorial) {
    if (is_release(at.kind)) {
      log_.append(now_, game(), EventKind::TutorialSkipped, {{"reason", "gesture"}});
      begin_game();
    }
    return;
  }
  switch (game()) {
    case GameId::DimSum: dimsum_apply(*dimsum_, at); break;
    case GameId::Steamer: steamer_apply(*steamer_, at); break;
    case GameId::Cashier: cashier_apply(*cashier_, at); break;
  }
  after_game_call();
}

void SessionEngine::set_difficulty(const DifficultyParams& params) {
  if (finalized_) throw StateError("session is finalized");
  if (done()) throw StateError("all games are complete");
  validate_params(params);
  check_capacity(params, config_);
  params_ = params;
  if (stage_ == Stage::Play && game() == GameId::Cashier) cashier_set_params(*cashier_, params);
  log_.append(now_, game(), EventKind::DifficultyChanged, {{"params", to_json(params)}});
}

SessionRecord SessionEngine::finalize(const QuestionnaireBundle& q) {
  if (finalized_) throw StateError("session is already finalized");
  validate_bundle(q);
  while (!done()) step();
  finalized_ = true;
  return build_record(q);
}

SessionRecord SessionEngine::build_record(const QuestionnaireBundle& q) const {
  SessionRecord r;
  r.session_id = opts_.session_id;
  r.created_at = opts_.created_at;
  r.profile = profile_;
  r.config = config_;
  r.seed = seed_;
  r.events = log_.entries();
  r.metrics = metrics_;
  r.scents = bridge_.log();
  r.questionnaires = q;
  return r;
}

nlohmann::json SessionEngine::snapshot() const {
  nlohmann::json s{{"type", "snapshot"},
                   {"session_id", opts_.session_id},
                   {"seq", snapshot_seq_},
                   {"t", now_.sec()},
                   {"log_size", log_.size()},
                   {"stage", to_string(stage_)},
                   {"game", done() ? nlohmann::json() : nlohmann::json(to_string(game()))},
                   {"hand", hand_ ? nlohmann::json{{"pos", vec_json(*hand_)}, {"grasping", grasping_}}
                                  : nlohmann::json()}};
  if (stage_ == Stage::Tutorial)
    s["tutorial"] = {{"remaining_s", (SimTime::seconds(params_.tutorial_duration_s) - (now_ - tutorial_start_)).sec()}};
  if (stage_ == Stage::Play) {
    switch (game()) {
      case GameId::DimSum: s["state"] = dimsum_view(*dimsum_); break;
      case GameId::Steamer: s["state"] = steamer_view(*steamer_); break;
      case GameId::Cashier: s["state"] = cashier_view(*cashier_); break;
    }
  }
  return s;
}

void SessionEngine::emit_snapshot() {
  ++snapshot_seq_;
  if (opts_.on_snapshot) opts_.on_snapshot(snapshot());
}

std::vector<InputFrame> ScriptSource::poll(const SessionEngine& engine) {
  std::vector<InputFrame> out;
  const SimTime horizon = engine.now() + kTickStep;
  while (next_ < frames_.size() && frames_[next_].t < horizon) out.push_back(frames_[next_++]);
  return out;
}

SessionRecord run_session(const ParticipantProfile& profile, const SessionConfig& config, std::uint64_t seed,
                          FrameSource& source, const QuestionnaireBundle& q, SessionOptions opts) {
  SessionEngine engine(profile, config, seed, std::move(opts));
  while (!engine.done()) {
    for (const auto& f : source.poll(engine)) engine.push_frame(f);
    engine.step();
  }
  return engine.finalize(q);
}

SessionRecord run_session(const ParticipantProfile& profile, const SessionConfig& config, std::uint64_t seed,
                          const InputScript& script, const QuestionnaireBundle& q, SessionOptions opts) {
  ScriptSource source(script);
  return run_session(profile, config, seed, source, q, std::move(opts));
}

SessionRecord replay_record(const SessionRecord& record, SessionOptions opts) {
  opts.session_id = record.session_id;
  opts.created_at = record.created_at;
  SessionEngine engine(record.profile, record.config, record.seed, std::move(opts));
  for (const auto& e : record.events) {
    if (e.kind != EventKind::Gesture && e.kind != EventKind::DifficultyChanged) continue;
    while (!engine.done() && engine.now() < e.t) engine.step();
    if (e.kind == EventKind::Gesture)
      engine.push_gesture(gesture_from_json(e.t, e.payload));
    else
      engine.set_difficulty(params_from_json(e.payload.at("params")));
  }
  return engine.finalize(record.questionnaires);
}

}  // namespace senso
