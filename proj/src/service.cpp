#include "senso/service.hpp"

#include <chrono>
#include <ctime>

#include "senso/errors.hpp"

namespace senso {

using nlohmann::json;

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json error_message(const std::string& code, const std::string& message) {
  return {{"type", "error"}, {"code", code}, {"message", message}};
}

json metrics_json(const std::map<GameId, TaskMetrics>& metrics) {
  json out = json::object();
  for (const auto& [g, m] : metrics) out[std::string(to_string(g))] = to_json(m);
  return out;
}

ServiceHub::ServiceHub(Clock clock) : clock_(clock ? std::move(clock) : Clock(utc_timestamp)) {}

std::size_t ServiceHub::session_count() const {
  std::lock_guard lock(mu_);
  return sessions_.size();
}

std::vector<json> ServiceHub::handle_line(const std::string& line) {
  json msg;
  try {
    msg = json::parse(line);
  } catch (const json::parse_error& e) {
    return {error_message("parse", e.what())};
  }
  return handle(msg);
}

std::shared_ptr<ServiceHub::Live> ServiceHub::find(const json& msg) {
  if (!msg.contains("session_id") || !msg.at("session_id").is_string())
    throw ValidationError({"session_id: missing"});
  const auto id = msg.at("session_id").get<std::string>();
  std::lock_guard lock(mu_);
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) throw NotFoundError("unknown session " + id);
  return it->second;
}

std::vector<json> ServiceHub::handle(const json& msg) {
  std::string type;
  try {
    if (!msg.is_object() || !msg.contains("type") || !msg.at("type").is_string())
      return {error_message("bad_request", "message needs a string 'type'")};
    type = msg.at("type").get<std::string>();
    if (type == "create") return create(msg);
    if (type != "frame" && type != "set_difficulty" && type != "metrics" && type != "finalize")
      return {error_message("bad_request", "unknown message type '" + type + "'")};
    auto live = find(msg);
    std::lock_guard lock(live->mu);
    return dispatch(*live, msg.at("session_id").get<std::string>(), type, msg);
  } catch (const NotFoundError& e) {
    return {error_message("not_found", e.what())};
  } catch (const StateError& e) {
    return {error_message("state", e.what())};
  } catch (const StreamError& e) {
    return {error_message("stream", e.what())};
  } catch (const ValidationError& e) {
    return {error_message("validation", e.what())};
  } catch (const ParseError& e) {
    return {error_message("validation", e.what())};
  } catch (const json::exception& e) {
    return {error_message("bad_request", e.what())};
  } catch (const Error& e) {
    return {error_message("error", e.what())};
  }
}

std::vector<json> ServiceHub::create(const json& msg) {
  if (!msg.contains("profile")) throw ValidationError({"profile: missing"});
  const auto profile = profile_from_json(msg.at("profile"));
  SessionConfig config = msg.contains("config") ? config_from_json(msg.at("config")) : SessionConfig{};
  if (msg.contains("params")) config.params = params_from_json(msg.at("params"), config.params);
  validate_params(config.params);
  const std::uint64_t seed = msg.value("seed", std::uint64_t{0});

  auto live = std::make_shared<Live>();
  std::string id;
  {
    std::lock_guard lock(mu_);
    id = "s" + std::to_string(next_id_++);
  }
  SessionOptions opts;
  opts.session_id = id;
  opts.created_at = clock_();
  Live* raw = live.get();
  opts.on_snapshot = [raw](const json& s) {
    if (!raw->quiet) raw->outbox.push_back(s);
  };
  opts.on_scent = [raw, id](const Emission& e) {
    json m = to_json(e);
    m["type"] = "scent";
    m["session_id"] = id;
    raw->outbox.push_back(std::move(m));
  };
  // Registered only once the engine exists, so a rejected config leaves no entry.
  std::lock_guard lock(live->mu);
  live->engine = std::make_unique<SessionEngine>(profile, config, seed, std::move(opts));
  {
    std::lock_guard hub_lock(mu_);
    sessions_[id] = live;
  }
  json created{{"type", "created"},
               {"session_id", id},
               {"tick_ms", kTickStep.us() / 1000},
               {"snapshot_hz", 1'000'000 / (kTickStep.us() * kSnapshotEvery)},
               {"params", to_json(config.params)}};
  return {created, live->engine->snapshot()};
}

std::vector<json> ServiceHub::dispatch(Live& live, const std::string& id, const std::string& type,
                                       const json& msg) {
  auto& engine = *live.engine;
  live.outbox.clear();
  if (type == "frame") {
    if (live.record) throw StateError("session " + id + " is finalized");
    InputFrame f;
    f.t = SimTime::seconds(msg.at("t").get<double>());
    f.pos = {msg.at("x").get<double>(), msg.at("y").get<double>(), msg.value("z", 0.0)};
    f.grab = msg.at("grab").get<double>();
    f.hand_present = msg.value("hand_present", true);
    engine.push_frame(f);
    return std::move(live.outbox);
  }
  if (type == "set_difficulty") {
    if (live.record) throw StateError("session " + id + " is finalized");
    const auto params = params_from_json(msg.at("params"), engine.params());
    engine.set_difficulty(params);
    const bool cashier = engine.stage() == Stage::Play && engine.game() == GameId::Cashier;
    return {json{{"type", "set_difficulty"},
                 {"session_id", id},
                 {"params", to_json(params)},
                 {"applies", cashier ? "next_trial" : "next_game_start"}}};
  }
  if (type == "metrics") {
    return {json{{"type", "metrics"},
                 {"session_id", id},
                 {"finished", engine.done()},
                 {"metrics", metrics_json(engine.metrics())}}};
  }
  // finalize
  if (live.record) throw StateError("session " + id + " is already finalized");
  const auto q = msg.contains("questionnaires") ? questionnaires_from_json(msg.at("questionnaires")) : QuestionnaireBundle{};
  live.quiet = true;
  live.record = engine.finalize(q);
  auto out = std::move(live.outbox);
  out.push_back(engine.snapshot());
  out.push_back({{"type", "metrics"}, {"session_id", id}, {"finished", true}, {"metrics", metrics_json(live.record->metrics)}});
  out.push_back({{"type", "finalize"}, {"session_id", id}, {"record", to_json(*live.record)}});
  return out;
}

}  // namespace senso
