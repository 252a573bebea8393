#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "senso/analysis.hpp"
#include "senso/cohort.hpp"
#include "senso/errors.hpp"
#include "senso/player.hpp"
#include "senso/record.hpp"
#include "senso/service.hpp"
#include "senso/session.hpp"

using namespace senso;

namespace {

nlohmann::json read_json(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw NotFoundError("cannot read " + path);
  try {
    return nlohmann::json::parse(is);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what(), 0);
  }
}

void print_metrics(const SessionRecord& r) {
  for (const auto& [g, m] : r.metrics)
    std::cout << label(g) << ": inaccuracy " << format_1dp(m.inaccuracy_pct) << "%, omission "
              << format_1dp(m.omission_pct) << "%, time " << format_1dp(m.total_time_s) << " s\n";
}

TcpServer* g_server = nullptr;

void on_signal(int) {
  if (g_server) g_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SENSO serious-game engine and analysis pipeline"};
  app.require_subcommand(1);

  auto* sim = app.add_subcommand("simulate", "Run one session from a recorded frame script");
  std::string profile_path, script_path, out_path, params_path, questionnaire_path, scent_log;
  std::string created_at = "1970-01-01T00:00:00Z", session_id;
  std::optional<std::uint64_t> seed;
  bool skip_tutorials = false;
  sim->add_option("--profile", profile_path, "Participant profile (JSON)")->required();
  sim->add_option("--script", script_path, "Frame recording")->required();
  sim->add_option("--seed", seed, "Session seed (defaults to the script's seed header)");
  sim->add_option("--out", out_path, "Session record to write")->required();
  sim->add_option("--params", params_path, "Difficulty parameters (JSON, partial allowed)");
  sim->add_option("--questionnaires", questionnaire_path, "Questionnaire responses (JSON)");
  sim->add_option("--scent-log", scent_log, "Write the mock scent device log here");
  sim->add_option("--created-at", created_at, "Timestamp stored in the record");
  sim->add_option("--session-id", session_id, "Session id stored in the record");
  sim->add_flag("--skip-tutorials", skip_tutorials, "Start each game without its tutorial");

  auto* rep = app.add_subcommand("replay", "Re-execute a session record");
  std::string record_path, snapshots_path;
  bool verify = false;
  rep->add_option("--record", record_path, "Session record")->required();
  rep->add_flag("--verify-digest", verify, "Fail unless the replayed record is byte-identical");
  rep->add_option("--snapshots", snapshots_path, "Write every reconstructed snapshot as JSON lines");

  auto* ana = app.add_subcommand("analyze", "Summarize a dataset of session records");
  std::string dataset_dir, report_dir, published_path;
  ana->add_option("--dataset", dataset_dir, "Dataset directory")->required();
  ana->add_option("--out", report_dir, "Report directory")->required();
  ana->add_option("--published", published_path,
                  "Published summary table to echo (default: <dataset>/published_table3.csv if present)");

  auto* srv = app.add_subcommand("serve", "Serve live sessions over line-delimited JSON on TCP");
  std::uint16_t port = 7878;
  std::string host = "127.0.0.1";
  srv->add_option("--port", port, "Listen port")->required();
  srv->add_option("--host", host, "Listen address");

  auto* coh = app.add_subcommand("gen-cohort", "Generate a synthetic cohort dataset");
  int cohort_n = 41;
  std::uint64_t cohort_seed = 0;
  std::string cohort_out = "cohort";
  bool no_records = false;
  coh->add_option("--n", cohort_n, "Participants")->required();
  coh->add_option("--seed", cohort_seed, "Seed")->required();
  coh->add_option("--out", cohort_out, "Output directory");
  coh->add_flag("--no-records", no_records, "Write only the CSV exports");

  auto* gen = app.add_subcommand("gen-script", "Record a simulated player's frames as a script");
  std::uint64_t script_seed = 0;
  std::string script_out, script_label = "simulated";
  ErrorInjection errors;
  PlayerTraits traits;
  traits.jitter = 0.0;
  gen->add_option("--seed", script_seed, "Session seed the script is recorded against")->required();
  gen->add_option("--out", script_out, "Recording to write")->required();
  gen->add_option("--label", script_label, "Label stored in the header");
  gen->add_option("--jitter", traits.jitter, "Aim noise");
  gen->add_option("--dimsum-wrong", errors.dimsum_wrong);
  gen->add_option("--dimsum-forget", errors.dimsum_forget);
  gen->add_option("--steamer-skip-steam", errors.steamer_skip_steam);
  gen->add_option("--steamer-skip-transfer", errors.steamer_skip_transfer);
  gen->add_option("--steamer-early", errors.steamer_early);
  gen->add_option("--steamer-late", errors.steamer_late);
  gen->add_option("--cashier-idle-trials", errors.cashier_idle_trials);
  gen->add_option("--cashier-overshoots", errors.cashier_overshoots);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sim) {
      const auto profile = profile_from_json(read_json(profile_path));
      const auto script = load_recording(script_path);
      SessionConfig config;
      if (!params_path.empty()) config.params = params_from_json(read_json(params_path));
      config.skip_tutorials = skip_tutorials;
      QuestionnaireBundle q;
      if (!questionnaire_path.empty()) q = questionnaires_from_json(read_json(questionnaire_path));
      const std::uint64_t s = seed ? *seed : script.seed.value_or(0);
      std::ofstream scent_os;
      if (!scent_log.empty()) scent_os.open(scent_log, std::ios::binary);
      MockScentDriver driver(scent_log.empty() ? nullptr : &scent_os);
      SessionOptions opts;
      opts.session_id = session_id.empty() ? "sim-" + profile.participant_id + "-" + std::to_string(s) : session_id;
      opts.created_at = created_at;
      opts.driver = &driver;
      const auto record = run_session(profile, config, s, script, q, opts);
      save_record(out_path, record);
      print_metrics(record);
      std::cout << "digest " << hex64(record_digest(record)) << "\n";
    } else if (*rep) {
      std::ifstream is(record_path, std::ios::binary);
      if (!is) throw NotFoundError("cannot read " + record_path);
      std::ostringstream ss;
      ss << is.rdbuf();
      const std::string original = ss.str();
      const auto record = parse_record(original);
      std::ofstream snaps;
      if (!snapshots_path.empty()) snaps.open(snapshots_path, std::ios::binary);
      SessionOptions opts;
      if (snaps.is_open()) opts.on_snapshot = [&](const nlohmann::json& s) { snaps << s.dump() << "\n"; };
      const auto replayed = replay_record(record, opts);
      print_metrics(replayed);
      const auto want = fnv1a64(original);
      const auto got = record_digest(replayed);
      std::cout << "record digest   " << hex64(want) << "\nreplayed digest " << hex64(got) << "\n";
      if (verify) {
        if (want != got) {
          std::cerr << "digest mismatch\n";
          return 1;
        }
        std::cout << "digest verified\n";
      }
    } else if (*ana) {
      const auto dataset = load_dataset(dataset_dir);
      std::optional<SummaryTable> published;
      if (!published_path.empty())
        published = load_summary_table(published_path);
      else if (std::filesystem::exists(std::filesystem::path(dataset_dir) / "published_table3.csv"))
        published = load_summary_table(std::filesystem::path(dataset_dir) / "published_table3.csv");
      const auto report = analyze(dataset, published);
      write_report(report, report_dir);
      std::cout << report.text;
    } else if (*srv) {
      ServiceHub hub;
      TcpServer server(hub, port, host);
      g_server = &server;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cout << "listening on " << host << ":" << server.port() << std::endl;
      server.run();
    } else if (*coh) {
      const auto dataset = gen_cohort(cohort_n, cohort_seed);
      write_cohort(dataset, cohort_out, !no_records);
      std::cout << "wrote " << dataset.records.size() << " participants to " << cohort_out << "\n";
    } else if (*gen) {
      SimulatedPlayer player(traits, errors, script_seed);
      ParticipantProfile profile{"script", 65, Gender::Other, EducationBand::Y12_Plus, 28, {}};
      const auto record = run_session(profile, SessionConfig{}, script_seed, player);
      auto script = player.recorded();
      script.label = script_label;
      save_recording(script_out, script);
      print_metrics(record);
      std::cout << script.frames.size() << " frames\n";
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
