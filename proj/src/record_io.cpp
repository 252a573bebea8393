#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "senso/errors.hpp"
#include "senso/record.hpp"

namespace senso {

using nlohmann::json;

namespace {

template <class T>
T get(const json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing field '") + key + "'", 0);
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("field '") + key + "': " + e.what(), 0);
  }
}

// Re-throws a shape error with the enclosing path prepended.
template <class F>
auto at_path(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.line());
  } catch (const Error& e) {
    throw ParseError(path + ": " + e.what(), 0);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what(), 0);
  }
}

std::string fmt_double(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

double parse_double(const std::string& s, std::size_t line) {
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size()) throw ParseError("bad number '" + s + "'", line);
  return v;
}

int parse_int(const std::string& s, std::size_t line) {
  int v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size()) throw ParseError("bad integer '" + s + "'", line);
  return v;
}

}  // namespace

json to_json(const ParticipantProfile& p) {
  return {{"participant_id", p.participant_id},
          {"age", p.age},
          {"gender", to_string(p.gender)},
          {"education_band", to_string(p.education)},
          {"moca_score", p.moca_score},
          {"tech_background",
           {{"gaming_frequency", p.tech.gaming_frequency},
            {"computer_proficiency", p.tech.computer_proficiency},
            {"prior_vr", p.tech.prior_vr},
            {"prior_motion_capture", p.tech.prior_motion_capture},
            {"sensory_impairment", p.tech.sensory_impairment}}}};
}

ParticipantProfile profile_from_json(const json& j) {
  RawProfile raw;
  raw.participant_id = get<std::string>(j, "participant_id");
  raw.age = get<int>(j, "age");
  raw.gender = get<std::string>(j, "gender");
  raw.education = get<std::string>(j, "education_band");
  raw.moca_score = get<int>(j, "moca_score");
  if (j.contains("tech_background")) {
    const auto& t = j.at("tech_background");
    raw.tech.gaming_frequency = get<int>(t, "gaming_frequency");
    raw.tech.computer_proficiency = get<int>(t, "computer_proficiency");
    raw.tech.prior_vr = get<bool>(t, "prior_vr");
    raw.tech.prior_motion_capture = get<bool>(t, "prior_motion_capture");
    raw.tech.sensory_impairment = get<bool>(t, "sensory_impairment");
  }
  return validate_profile(raw);
}

json to_json(const DifficultyParams& p) {
  return {{"dimsum_item_count", p.dimsum_item_count},
          {"memorize_duration_s", p.memorize_duration_s},
          {"dimsum_time_limit_s", p.dimsum_time_limit_s},
          {"steamer_item_count", p.steamer_item_count},
          {"cook_time_s", p.cook_time_s},
          {"overcook_time_s", p.overcook_time_s},
          {"steamer_time_limit_s", p.steamer_time_limit_s},
          {"cashier_trial_count", p.cashier_trial_count},
          {"cashier_time_limit_s", p.cashier_time_limit_s},
          {"max_change_amount", p.max_change_amount},
          {"tutorial_duration_s", p.tutorial_duration_s}};
}

DifficultyParams params_from_json(const json& j, const DifficultyParams& base) {
  if (!j.is_object()) throw ParseError("params must be an object", 0);
  DifficultyParams p = base;
  auto opt = [&](const char* key, auto& field) {
    if (j.contains(key)) field = get<std::decay_t<decltype(field)>>(j, key);
  };
  opt("dimsum_item_count", p.dimsum_item_count);
  opt("memorize_duration_s", p.memorize_duration_s);
  opt("dimsum_time_limit_s", p.dimsum_time_limit_s);
  opt("steamer_item_count", p.steamer_item_count);
  opt("cook_time_s", p.cook_time_s);
  opt("overcook_time_s", p.overcook_time_s);
  opt("steamer_time_limit_s", p.steamer_time_limit_s);
  opt("cashier_trial_count", p.cashier_trial_count);
  opt("cashier_time_limit_s", p.cashier_time_limit_s);
  opt("max_change_amount", p.max_change_amount);
  opt("tutorial_duration_s", p.tutorial_duration_s);
  for (const auto& [key, value] : j.items())
    if (!to_json(DifficultyParams{}).contains(key)) throw ParseError("unknown parameter '" + key + "'", 0);
  return p;
}

json to_json(const SessionConfig& c) {
  json denoms = json::array();
  for (const auto& d : c.denominations) denoms.push_back({{"value", d.value.deci}, {"kind", to_string(d.kind)}});
  return {{"params", to_json(c.params)},
          {"denominations", std::move(denoms)},
          {"dimsum_catalog", c.dimsum_catalog},
          {"skip_tutorials", c.skip_tutorials}};
}

SessionConfig config_from_json(const json& j) {
  SessionConfig c;
  if (j.contains("params")) c.params = at_path("params", [&] { return params_from_json(j.at("params")); });
  if (j.contains("denominations")) {
    c.denominations.clear();
    for (const auto& d : j.at("denominations")) {
      const auto kind = parse_denomination_kind(get<std::string>(d, "kind"));
      if (!kind) throw ParseError("unknown denomination kind", 0);
      const auto value = get<std::int64_t>(d, "value");
      if (value <= 0) throw ParseError("denomination value must be positive", 0);
      c.denominations.push_back({{value}, *kind});
    }
  }
  if (j.contains("dimsum_catalog")) c.dimsum_catalog = get<std::vector<std::string>>(j, "dimsum_catalog");
  if (j.contains("skip_tutorials")) c.skip_tutorials = get<bool>(j, "skip_tutorials");
  validate_params(c.params);
  return c;
}

json to_json(const GameEvent& e) {
  return {{"seq", e.seq},
          {"t", e.t.sec()},
          {"game", e.game ? json(to_string(*e.game)) : json()},
          {"kind", to_string(e.kind)},
          {"payload", e.payload}};
}

GameEvent event_from_json(const json& j) {
  GameEvent e;
  e.seq = get<std::int64_t>(j, "seq");
  e.t = SimTime::seconds(get<double>(j, "t"));
  if (!j.at("game").is_null()) {
    const auto g = parse_game(get<std::string>(j, "game"));
    if (!g) throw ParseError("unknown game", 0);
    e.game = *g;
  }
  const auto kind = parse_event_kind(get<std::string>(j, "kind"));
  if (!kind) throw ParseError("unknown event kind", 0);
  e.kind = *kind;
  e.payload = j.at("payload");
  return e;
}

json to_json(const TaskMetrics& m) {
  return {{"inaccuracy_pct", m.inaccuracy_pct},       {"omission_pct", m.omission_pct},
          {"total_time_s", m.total_time_s},           {"required_actions", m.required_actions},
          {"incorrect_actions", m.incorrect_actions}, {"missed_actions", m.missed_actions},
          {"inaccuracy_events", m.inaccuracy_events}};
}

TaskMetrics metrics_from_json(const json& j) {
  TaskMetrics m;
  m.inaccuracy_pct = get<double>(j, "inaccuracy_pct");
  m.omission_pct = get<double>(j, "omission_pct");
  m.total_time_s = get<double>(j, "total_time_s");
  m.required_actions = get<int>(j, "required_actions");
  m.incorrect_actions = get<int>(j, "incorrect_actions");
  m.missed_actions = get<int>(j, "missed_actions");
  m.inaccuracy_events = get<int>(j, "inaccuracy_events");
  return m;
}

json to_json(const Emission& e) {
  return {{"t", e.t.sec()},
          {"scent_id", e.scent_id},
          {"duration_ms", e.duration_ms},
          {"sources", e.sources},
          {"status", e.status == EmissionStatus::Emitted ? "emitted" : "failed"}};
}

Emission emission_from_json(const json& j) {
  Emission e;
  e.t = SimTime::seconds(get<double>(j, "t"));
  e.scent_id = get<std::string>(j, "scent_id");
  e.duration_ms = get<std::int64_t>(j, "duration_ms");
  e.sources = get<std::vector<std::int64_t>>(j, "sources");
  const auto status = get<std::string>(j, "status");
  if (status != "emitted" && status != "failed") throw ParseError("unknown emission status", 0);
  e.status = status == "emitted" ? EmissionStatus::Emitted : EmissionStatus::Failed;
  return e;
}

json to_json(const QuestionnaireBundle& q) {
  json tlx;
  if (q.tlx) {
    tlx = json::object();
    for (auto d : kTlxDimensions) tlx[std::string(to_string(d))] = (*q.tlx)[d];
  }
  return {{"sus", q.sus ? json(q.sus->items) : json()},
          {"tlx", tlx},
          {"pre_interest", q.pre_interest},
          {"post_satisfaction", q.post_satisfaction}};
}

QuestionnaireBundle questionnaires_from_json(const json& j) {
  QuestionnaireBundle q;
  if (j.contains("sus") && !j.at("sus").is_null()) {
    const auto items = get<std::vector<int>>(j, "sus");
    if (items.size() != 10) throw ParseError("sus needs exactly 10 items", 0);
    SusResponse r;
    std::copy(items.begin(), items.end(), r.items.begin());
    q.sus = r;
  }
  if (j.contains("tlx") && !j.at("tlx").is_null()) {
    TlxResponse r;
    for (std::size_t d = 0; d < 6; ++d)
      r.ratings[d] = get<int>(j.at("tlx"), std::string(to_string(kTlxDimensions[d])).c_str());
    q.tlx = r;
  }
  if (j.contains("pre_interest")) q.pre_interest = get<LikertAnswers>(j, "pre_interest");
  if (j.contains("post_satisfaction")) q.post_satisfaction = get<LikertAnswers>(j, "post_satisfaction");
  validate_bundle(q);
  return q;
}

json to_json(const SessionRecord& r) {
  json events = json::array();
  for (const auto& e : r.events) events.push_back(to_json(e));
  json metrics = json::object();
  for (const auto& [g, m] : r.metrics) metrics[std::string(to_string(g))] = to_json(m);
  json scents = json::array();
  for (const auto& e : r.scents) scents.push_back(to_json(e));
  return {{"schema_version", r.schema_version},
          {"session_id", r.session_id},
          {"created_at", r.created_at},
          {"profile", to_json(r.profile)},
          {"config", to_json(r.config)},
          {"seed", r.seed},
          {"events", std::move(events)},
          {"metrics", std::move(metrics)},
          {"scents", std::move(scents)},
          {"questionnaires", to_json(r.questionnaires)}};
}

SessionRecord record_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("record must be a JSON object", 1);
  const int version = get<int>(j, "schema_version");
  if (version != kSchemaVersion) throw SchemaVersionError(version, kSchemaVersion);
  SessionRecord r;
  r.session_id = get<std::string>(j, "session_id");
  r.created_at = get<std::string>(j, "created_at");
  r.profile = at_path("profile", [&] { return profile_from_json(j.at("profile")); });
  r.config = at_path("config", [&] { return config_from_json(j.at("config")); });
  r.seed = get<std::uint64_t>(j, "seed");
  const auto& events = j.at("events");
  for (std::size_t i = 0; i < events.size(); ++i)
    r.events.push_back(at_path("events[" + std::to_string(i) + "]", [&] { return event_from_json(events[i]); }));
  for (std::size_t i = 1; i < r.events.size(); ++i)
    if (r.events[i].t < r.events[i - 1].t)
      throw ParseError("events[" + std::to_string(i) + "]: timestamp regression", 0);
  for (const auto& [key, value] : j.at("metrics").items()) {
    const auto g = parse_game(key);
    if (!g) throw ParseError("metrics: unknown game '" + key + "'", 0);
    auto m = at_path("metrics." + key, [&] { return metrics_from_json(value); });
    m.game = *g;
    r.metrics[*g] = m;
  }
  const auto& scents = j.at("scents");
  for (std::size_t i = 0; i < scents.size(); ++i)
    r.scents.push_back(at_path("scents[" + std::to_string(i) + "]", [&] { return emission_from_json(scents[i]); }));
  r.questionnaires = at_path("questionnaires", [&] { return questionnaires_from_json(j.at("questionnaires")); });
  return r;
}

std::string serialize_record(const SessionRecord& r) { return to_json(r).dump(2) + "\n"; }

SessionRecord parse_record(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + upto, '\n'));
    throw ParseError(e.what(), line);
  }
  return record_from_json(j);
}

void save_record(const std::filesystem::path& path, const SessionRecord& r) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot write " + path.string());
  os << serialize_record(r);
}

SessionRecord load_record(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw NotFoundError("cannot read " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_record(ss.str());
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t record_digest(const SessionRecord& r) { return fnv1a64(serialize_record(r)); }

void validate_dataset(const Dataset& d) {
  std::set<std::string> seen;
  std::vector<std::string> bad;
  for (const auto& r : d.records)
    if (!seen.insert(r.profile.participant_id).second) bad.push_back("duplicate participant_id " + r.profile.participant_id);
  if (!bad.empty()) throw ValidationError(std::move(bad));
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path, std::size_t columns) {
  std::ifstream is(path);
  if (!is) throw NotFoundError("cannot read " + path.string());
  std::vector<std::vector<std::string>> rows;
  std::string line;
  std::size_t n = 0;
  while (std::getline(is, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (n == 1 || line.empty()) continue;
    auto cells = split_csv(line);
    if (cells.size() != columns)
      throw ParseError(path.filename().string() + ": expected " + std::to_string(columns) + " columns", n);
    rows.push_back(std::move(cells));
  }
  return rows;
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw Error("cannot write " + p.string());
  return os;
}

void check_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") != std::string::npos) throw ValidationError({"value '" + s + "' not CSV-safe"});
}

}  // namespace

void export_csv(const Dataset& d, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto participants = open_out(dir / "participants.csv");
  auto sus = open_out(dir / "sus.csv");
  auto tlx = open_out(dir / "tlx.csv");
  auto metrics = open_out(dir / "metrics.csv");
  auto likert = open_out(dir / "likert.csv");
  participants << "participant_id,age,age_group,gender,education_band,moca_score,gaming_frequency,"
                  "computer_proficiency,prior_vr,prior_motion_capture,sensory_impairment\n";
  sus << "participant_id,q1,q2,q3,q4,q5,q6,q7,q8,q9,q10,score\n";
  tlx << "participant_id,mental,physical,temporal,performance,effort,frustration\n";
  metrics << "participant_id,game,inaccuracy_pct,omission_pct,total_time_s,required_actions,incorrect_actions,"
             "missed_actions,inaccuracy_events\n";
  likert << "participant_id,section,item,response\n";
  for (const auto& r : d.records) {
    const auto& p = r.profile;
    check_cell(p.participant_id);
    participants << p.participant_id << ',' << p.age << ',' << to_string(derive_age_group(p.age)) << ','
                 << to_string(p.gender) << ',' << to_string(p.education) << ',' << p.moca_score << ','
                 << p.tech.gaming_frequency << ',' << p.tech.computer_proficiency << ',' << int(p.tech.prior_vr) << ','
                 << int(p.tech.prior_motion_capture) << ',' << int(p.tech.sensory_impairment) << '\n';
    if (const auto& s = r.questionnaires.sus) {
      sus << p.participant_id;
      for (int v : s->items) sus << ',' << v;
      sus << ',' << fmt_double(score_sus(*s).score) << '\n';
    }
    if (const auto& t = r.questionnaires.tlx) {
      tlx << p.participant_id;
      for (int v : t->ratings) tlx << ',' << v;
      tlx << '\n';
    }
    for (const auto& [g, m] : r.metrics)
      metrics << p.participant_id << ',' << to_string(g) << ',' << fmt_double(m.inaccuracy_pct) << ','
              << fmt_double(m.omission_pct) << ',' << fmt_double(m.total_time_s) << ',' << m.required_actions << ','
              << m.incorrect_actions << ',' << m.missed_actions << ',' << m.inaccuracy_events << '\n';
    for (const auto& [section, answers] :
         {std::pair{"pre_interest", &r.questionnaires.pre_interest},
          std::pair{"post_satisfaction", &r.questionnaires.post_satisfaction}})
      for (const auto& [item, v] : *answers) {
        check_cell(item);
        likert << p.participant_id << ',' << section << ',' << item << ',' << v << '\n';
      }
  }
}

namespace {

Dataset load_csv_dataset(const std::filesystem::path& dir) {
  Dataset d;
  std::map<std::string, std::size_t> index;
  for (const auto& row : read_csv(dir / "participants.csv", 11)) {
    RawProfile raw;
    raw.participant_id = row[0];
    raw.age = parse_int(row[1], 0);
    raw.gender = row[3];
    raw.education = row[4];
    raw.moca_score = parse_int(row[5], 0);
    raw.tech = {parse_int(row[6], 0), parse_int(row[7], 0), row[8] == "1", row[9] == "1", row[10] == "1"};
    SessionRecord r;
    r.profile = validate_profile(raw);
    r.session_id = raw.participant_id;
    index[raw.participant_id] = d.records.size();
    d.records.push_back(std::move(r));
  }
  auto find = [&](const std::string& id) -> SessionRecord& {
    const auto it = index.find(id);
    if (it == index.end()) throw ValidationError({"unknown participant_id " + id});
    return d.records[it->second];
  };
  if (std::filesystem::exists(dir / "metrics.csv"))
    for (const auto& row : read_csv(dir / "metrics.csv", 9)) {
      const auto g = parse_game(row[1]);
      if (!g) throw ParseError("metrics.csv: unknown game " + row[1], 0);
      TaskMetrics m;
      m.game = *g;
      m.inaccuracy_pct = parse_double(row[2], 0);
      m.omission_pct = parse_double(row[3], 0);
      m.total_time_s = parse_double(row[4], 0);
      m.required_actions = parse_int(row[5], 0);
      m.incorrect_actions = parse_int(row[6], 0);
      m.missed_actions = parse_int(row[7], 0);
      m.inaccuracy_events = parse_int(row[8], 0);
      find(row[0]).metrics[*g] = m;
    }
  if (std::filesystem::exists(dir / "sus.csv"))
    for (const auto& row : read_csv(dir / "sus.csv", 12)) {
      SusResponse s;
      for (std::size_t i = 0; i < 10; ++i) s.items[i] = parse_int(row[i + 1], 0);
      find(row[0]).questionnaires.sus = s;
    }
  if (std::filesystem::exists(dir / "tlx.csv"))
    for (const auto& row : read_csv(dir / "tlx.csv", 7)) {
      TlxResponse t;
      for (std::size_t i = 0; i < 6; ++i) t.ratings[i] = parse_int(row[i + 1], 0);
      find(row[0]).questionnaires.tlx = t;
    }
  if (std::filesystem::exists(dir / "likert.csv"))
    for (const auto& row : read_csv(dir / "likert.csv", 4)) {
      auto& q = find(row[0]).questionnaires;
      auto& answers = row[1] == "pre_interest" ? q.pre_interest : q.post_satisfaction;
      if (row[1] != "pre_interest" && row[1] != "post_satisfaction")
        throw ParseError("likert.csv: unknown section " + row[1], 0);
      answers[row[2]] = parse_int(row[3], 0);
    }
  for (const auto& r : d.records) validate_bundle(r.questionnaires);
  return d;
}

}  // namespace

Dataset load_dataset(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw NotFoundError("no dataset directory " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& base : {dir, dir / "records"}) {
    if (!std::filesystem::is_directory(base)) continue;
    for (const auto& entry : std::filesystem::directory_iterator(base))
      if (entry.path().extension() == ".json" && entry.path().filename() != "dataset.json")
        files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  Dataset d;
  if (files.empty()) {
    d = load_csv_dataset(dir);
  } else {
    for (const auto& f : files) {
      try {
        d.records.push_back(load_record(f));
      } catch (const ParseError& e) {
        throw ParseError(f.filename().string() + ": " + e.what(), e.line());
      }
    }
  }
  if (std::filesystem::exists(dir / "dataset.json")) {
    std::ifstream is(dir / "dataset.json");
    try {
      d.provenance = json::parse(is);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("dataset.json: ") + e.what(), 0);
    }
    if (d.provenance.value("schema_version", kSchemaVersion) != kSchemaVersion)
      throw SchemaVersionError(d.provenance.value("schema_version", 0), kSchemaVersion);
  }
  validate_dataset(d);
  return d;
}

}  // namespace senso
