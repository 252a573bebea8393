// Prints one PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "senso/analysis.hpp"
#include "senso/player.hpp"
#include "senso/questionnaire.hpp"
#include "senso/session.hpp"
#include "senso/stats.hpp"
#include "support.hpp"

using namespace senso;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [failed: " << what << "]";
    }
  }
};

const nlohmann::json& stats_oracle() {
  static const auto j = test::read_json(test::data_path("tests/data/stats_oracle.json"));
  return j;
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

void sus_formula_check(Check& c) {
  auto score = [](int odd, int even) {
    SusResponse r;
    for (std::size_t i = 0; i < 10; ++i) r.items[i] = i % 2 == 0 ? odd : even;
    return score_sus(r).score;
  };
  c.expect(score(3, 3) == 50.0, "all 3s");
  c.expect(score(5, 1) == 100.0, "best");
  c.expect(score(1, 5) == 0.0, "worst");
  const std::array<double, 10> means{3.34, 2.41, 3.56, 3.39, 3.66, 3.07, 3.71, 2.68, 4.17, 2.07};
  const double pseudo = sus_formula(means);
  c.expect(near(pseudo, 62.05, 0.01), "item-mean vector");
  c.detail << "item-mean vector -> " << pseudo;
}

void sus_band_check(Check& c) {
  c.expect(band_sus(49.99) == SusBand::NotAcceptable, "49.99");
  c.expect(band_sus(50.0) == SusBand::Marginal, "50");
  c.expect(band_sus(70.0) == SusBand::Marginal, "70");
  c.expect(band_sus(70.01) == SusBand::Acceptable, "70.01");
  c.detail << "49.99/50/70/70.01 -> " << to_string(band_sus(49.99)) << "/" << to_string(band_sus(50.0)) << "/"
           << to_string(band_sus(70.0)) << "/" << to_string(band_sus(70.01));
}

void kruskal_wallis_check(Check& c) {
  const auto hand = kruskal_wallis(std::vector<Sample>{{"a", {1, 2}}, {"b", {3, 4}}, {"c", {5, 6}}});
  c.expect(near(hand.statistic, 4.5714, 1e-3) && near(hand.p_value, 0.1017, 1e-3), "hand case");
  const auto same = kruskal_wallis(std::vector<Sample>{{"a", {4, 4, 4}}, {"b", {4, 4}}});
  c.expect(same.statistic == 0.0 && same.p_value == 1.0, "all identical");

  int invariant = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(mix_seed(seed, 0x4B57));
    std::vector<Sample> a, b;
    const auto k = rng.uniform_int(2, 5);
    for (std::int64_t g = 0; g < k; ++g) {
      Sample s{"g" + std::to_string(g), {}};
      const auto n = rng.uniform_int(1, 12);
      for (std::int64_t i = 0; i < n; ++i) s.values.push_back(static_cast<double>(rng.uniform_int(-5, 5)));
      Sample t = s;
      for (auto& v : t.values) v = std::cbrt(v) * 10.0 + std::exp(v / 3.0);
      a.push_back(std::move(s));
      b.push_back(std::move(t));
    }
    std::size_t total = 0;
    for (const auto& s : a) total += s.values.size();
    if (total < 3) {
      a[0].values.push_back(1.0);
      a[0].values.push_back(2.0);
      b[0].values.push_back(std::cbrt(1.0) * 10.0 + std::exp(1.0 / 3.0));
      b[0].values.push_back(std::cbrt(2.0) * 10.0 + std::exp(2.0 / 3.0));
    }
    const auto ra = kruskal_wallis(a);
    const auto rb = kruskal_wallis(b);
    invariant += near(ra.statistic, rb.statistic, 1e-9) && near(ra.p_value, rb.p_value, 1e-9);
  }
  c.expect(invariant == 100, "monotone invariance");

  int tied = 0, matched = 0;
  double worst = 0.0;
  for (const auto& cs : stats_oracle()["kruskal_wallis"]) {
    if (cs["label"] == "hand_case") continue;
    std::vector<Sample> groups;
    for (const auto& g : cs["groups"]) groups.push_back({"g", g.get<std::vector<double>>()});
    const auto r = kruskal_wallis(groups);
    const double err = std::max(std::abs(r.statistic - cs["H"].get<double>()), std::abs(r.p_value - cs["p"].get<double>()));
    worst = std::max(worst, err);
    ++tied;
    matched += err <= 1e-6;
  }
  c.expect(tied == 50 && matched == 50, "reference agreement");
  c.detail << "H=" << hand.statistic << " p=" << hand.p_value << "; monotone " << invariant << "/100; reference "
           << matched << "/" << tied << " (max err " << worst << ")";
}

void shapiro_wilk_check(Check& c) {
  int affine = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(mix_seed(seed, 0x5A));
    std::vector<double> x, y;
    const auto n = rng.uniform_int(3, 200);
    for (std::int64_t i = 0; i < n; ++i) {
      x.push_back(rng.normal() * rng.uniform(0.5, 2.0));
      y.push_back(-3.5 * x.back() + 1000.0);
    }
    const auto a = shapiro_wilk(x);
    const auto b = shapiro_wilk(y);
    affine += near(a.statistic, b.statistic, 1e-9) && near(a.p_value, b.p_value, 1e-9);
  }
  c.expect(affine == 100, "affine invariance");

  int ref = 0;
  for (const auto& cs : stats_oracle()["shapiro_wilk"]) {
    const auto label = cs["label"].get<std::string>();
    if (label != "n5" && label != "n20" && label != "n50") continue;
    const auto r = shapiro_wilk(cs["x"].get<std::vector<double>>());
    const bool ok = near(r.statistic, cs["W"].get<double>(), 1e-3) && near(r.p_value, cs["p"].get<double>(), 1e-3);
    c.expect(ok, "reference " + label);
    ref += ok;
  }

  int hits = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    Rng ru(mix_seed(s, 0x55));
    Rng rn(mix_seed(s, 0x4E));
    std::vector<double> xu, xn;
    for (int i = 0; i < 50; ++i) {
      xu.push_back(ru.uniform01());
      xn.push_back(rn.normal());
    }
    hits += shapiro_wilk(xu).p_value < shapiro_wilk(xn).p_value;
  }
  c.expect(hits >= 95, "uniform-vs-bell ordering");
  c.detail << "affine " << affine << "/100; reference n=5,20,50 " << ref << "/3; uniform p < normal p in " << hits
           << "/100 seed pairs";
}

void metrics_check(Check& c) {
  const auto s = load_recording(test::data_path("data/scripts/planted_errors_seed1.frames").string());
  const auto r = run_session(test::profile(), {}, *s.seed, s);
  const double d = r.metrics.at(GameId::DimSum).inaccuracy_pct;
  const double st = r.metrics.at(GameId::Steamer).omission_pct;
  const double ca = r.metrics.at(GameId::Cashier).omission_pct;
  c.expect(near(d, 16.67, 0.01), "dim sum inaccuracy");
  c.expect(near(st, 62.50, 0.01), "steamer omission");
  c.expect(near(ca, 80.00, 0.01), "cashier omission");
  c.detail << "Dim Sum inaccuracy " << format_1dp(d) << "% (" << r.metrics.at(GameId::DimSum).incorrect_actions
           << "/6), Steamer omission " << st << "% (" << r.metrics.at(GameId::Steamer).missed_actions
           << "/8), Cashier omission " << ca << "% (" << r.metrics.at(GameId::Cashier).missed_actions << "/5)";
}

void scent_check(Check& c) {
  constexpr int kSessions = 1000;
  std::size_t overcooks = 0, steams = 0, merged = 0, failed = 0, burnt_pulses = 0, bad_sessions = 0;
  for (int i = 0; i < kSessions; ++i) {
    const auto seed = mix_seed(20'260'101, static_cast<std::uint64_t>(i));
    Rng rng(seed);
    SessionConfig config;
    config.skip_tutorials = rng.bernoulli(0.7);
    auto& p = config.params;
    p.tutorial_duration_s = static_cast<double>(rng.uniform_int(0, 4));
    p.dimsum_item_count = static_cast<int>(rng.uniform_int(1, 4));
    p.memorize_duration_s = 1.0;
    p.dimsum_time_limit_s = rng.uniform(5.0, 30.0);
    p.steamer_item_count = static_cast<int>(rng.uniform_int(1, 8));
    p.cook_time_s = 0.05 * static_cast<double>(rng.uniform_int(2, 100));
    p.overcook_time_s = p.cook_time_s + 0.05 * static_cast<double>(rng.uniform_int(1, 60));
    p.steamer_time_limit_s = rng.uniform(5.0, 60.0);
    p.cashier_trial_count = 1;
    p.cashier_time_limit_s = 2.0;

    PlayerTraits traits;
    // A third of the players are fast enough to start several items within
    // one merge window, so overcooks land together.
    const bool fast = rng.bernoulli(0.33);
    traits.reach_s = fast ? rng.uniform(0.05, 0.15) : rng.uniform(0.05, 1.5);
    traits.grip_s = fast ? 0.0 : rng.uniform(0.0, 0.3);
    traits.think_s = fast ? 0.0 : rng.uniform(0.0, 0.6);
    traits.jitter = rng.uniform(0.0, 0.05);
    traits.hand_loss_prob = rng.uniform(0.0, 0.2);
    traits.skip_tutorials = rng.bernoulli(0.5);
    ErrorInjection err;
    err.steamer_late = static_cast<int>(rng.uniform_int(0, 8));
    err.steamer_early = static_cast<int>(rng.uniform_int(0, 2));
    err.steamer_skip_transfer = static_cast<int>(rng.uniform_int(0, 2));
    err.steamer_skip_steam = static_cast<int>(rng.uniform_int(0, 1));
    err.cashier_idle_trials = 1;

    MockScentDriver driver;
    driver.fail_on({static_cast<std::size_t>(rng.uniform_int(0, 20))});
    SessionOptions opts;
    opts.driver = &driver;
    SimulatedPlayer player(traits, err, seed);
    const auto r = run_session(test::profile(), config, seed, player, {}, opts);

    const auto n_over = count_kind(r.events, EventKind::Overcook);
    const auto n_steam = count_kind(r.events, EventKind::StartSteam);
    std::size_t burnt_src = 0, food_src = 0;
    for (const auto& e : r.scents) {
      if (e.scent_id == kBurntScent) {
        burnt_src += e.sources.size();
        ++burnt_pulses;
      } else {
        food_src += e.sources.size();
      }
      merged += e.sources.size() - 1;
      failed += e.status == EmissionStatus::Failed;
    }
    overcooks += n_over;
    steams += n_steam;
    if (burnt_src != n_over || food_src != n_steam) ++bad_sessions;
  }
  c.expect(bad_sessions == 0, "per-session accounting");
  c.expect(overcooks > 0 && merged > 0, "coverage");
  c.detail << kSessions << " sessions, " << bad_sessions << " mismatching; " << overcooks << " Overcook / " << steams
           << " StartSteam events; " << burnt_pulses << " burnt pulses, " << merged << " merged commands, " << failed
           << " failed emissions";
}

void change_check(Check& c) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto& denoms = default_denominations();
  std::vector<int> best(10001, 1 << 29);
  best[0] = 0;
  for (std::int64_t v = 1; v <= 10000; ++v)
    for (const auto& d : denoms)
      if (d.value.deci <= v)
        best[static_cast<std::size_t>(v)] =
            std::min(best[static_cast<std::size_t>(v)], best[static_cast<std::size_t>(v - d.value.deci)] + 1);
  int equal = 0;
  for (std::int64_t v = 1; v <= 10000; ++v) {
    const auto g = minimal_change({v}, denoms);
    std::int64_t sum = 0;
    for (const auto& d : g) sum += d.value.deci;
    equal += sum == v && static_cast<int>(g.size()) == best[static_cast<std::size_t>(v)];
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.expect(equal == 10000, "greedy == exhaustive");
  c.expect(secs < 60.0, "runtime");
  c.detail << equal << "/10000 amounts minimal, " << secs << " s";
}

void determinism_check(Check& c) {
  int identical = 0, replayed = 0;
  std::size_t snapshots = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    ErrorInjection err{static_cast<int>(seed % 2), 0, static_cast<int>(seed % 3), 1, 1, 1, static_cast<int>(seed % 4), 1};
    PlayerTraits traits;
    traits.hand_loss_prob = 0.05;
    SimulatedPlayer player(traits, err, seed);
    SessionOptions o;
    o.session_id = "det";
    o.created_at = "1970-01-01T00:00:00Z";
    run_session(test::profile(), {}, seed, player, {}, o);
    const auto script = player.recorded();

    std::vector<std::string> live, again;
    auto o1 = o;
    o1.on_snapshot = [&](const nlohmann::json& s) { live.push_back(s.dump()); };
    const auto a = serialize_record(run_session(test::profile(), {}, seed, script, {}, o1));
    const auto b = serialize_record(run_session(test::profile(), {}, seed, script, {}, o));
    identical += a == b;

    auto o2 = o;
    o2.on_snapshot = [&](const nlohmann::json& s) { again.push_back(s.dump()); };
    const auto back = replay_record(parse_record(a), o2);
    replayed += live == again && serialize_record(back) == a;
    snapshots += live.size();
  }
  c.expect(identical == 20, "byte-identical runs");
  c.expect(replayed == 20, "replay snapshots");
  c.detail << identical << "/20 seeds byte-identical over 2 runs; " << replayed << "/20 replays reproduce all "
           << snapshots << " snapshots";
}

void analysis_check(Check& c) {
  const auto d = load_dataset(test::data_path("data/cohort"));
  const auto pub = load_summary_table(test::data_path("data/published_table3.csv"));
  const auto rep = analyze(d, pub);
  const auto oracle = test::read_json(test::data_path("tests/data/cohort_oracle.json"));
  c.expect(rep.group_n == std::array<std::size_t, 3>{22, 17, 2}, "22/17/2 split");
  int cells = 0, exact = 0;
  for (const auto& cell : oracle["cells"]) {
    const auto game = *parse_game(cell["game"].get<std::string>());
    const auto ind = cell["indicator"] == "Inaccuracy" ? Indicator::Inaccuracy
                     : cell["indicator"] == "Omission" ? Indicator::Omission
                                                       : Indicator::Time;
    for (const auto& cmp : rep.comparisons) {
      if (cmp.game != game || cmp.indicator != ind) continue;
      for (std::size_t g = 0; g < 3; ++g) {
        ++cells;
        exact += near(*cmp.means[g], cell["means"][g].get<double>(), 1e-9) &&
                 format_1dp(*cmp.means[g]) == cell["means_1dp"][g].get<std::string>();
      }
    }
  }
  c.expect(cells == 27 && exact == 27, "group means");
  for (const char* heading : {"Table 1. Demographics", "Table 2. System Usability Scale", "Table 3. Performance"})
    c.expect(rep.text.find(heading) != std::string::npos, heading);
  const bool verbatim = rep.tables.count("published_table3.csv") && rep.tables.at("published_table3.csv") == pub.raw &&
                        pub.raw == test::read_text(test::data_path("data/published_table3.csv"));
  c.expect(verbatim, "published table verbatim");
  const bool stars = pub.rows.size() == 9 && pub.rows[4][5] == "0.003*" && pub.rows[5][5] == "0.022*" &&
                     rep.text.find("0.003*") != std::string::npos && rep.text.find("0.022*") != std::string::npos;
  c.expect(stars, "published stars");
  c.detail << exact << "/" << cells << " group means exact; tables 1-3 rendered; published table echoed verbatim"
           << (stars ? " with 0.003* and 0.022*" : "");
}

}  // namespace

int main() {
  ::unsetenv("DISPLAY");
  ::unsetenv("WAYLAND_DISPLAY");
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
      {"SUS formula anchors", sus_formula_check},
      {"SUS banding", sus_band_check},
      {"Kruskal-Wallis", kruskal_wallis_check},
      {"Shapiro-Wilk", shapiro_wilk_check},
      {"metrics from planted errors", metrics_check},
      {"scent accounting", scent_check},
      {"cashier change minimality", change_check},
      {"determinism and replay", determinism_check},
      {"analysis report", analysis_check},
  };
  int passed = 0;
  int index = 0;
  for (const auto& [name, fn] : criteria) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      fn(c);
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail << " [exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    passed += c.ok;
    ++index;
    std::printf("criterion %2d: %s  %s: %s (%.2f s)\n", index, c.ok ? "PASS" : "FAIL", name.c_str(),
                c.detail.str().c_str(), secs);
  }
  const bool headless = passed == index;
  std::printf("criterion %2d: %s  headless suite: %d/%d criteria passed with no display and no UI component linked\n",
              index + 1, headless ? "PASS" : "FAIL", passed, index);
  ++index;
  std::fflush(stdout);
  return passed + (headless ? 1 : 0) == index ? 0 : 1;
}
