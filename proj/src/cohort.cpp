#include "senso/cohort.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "senso/errors.hpp"
#include "senso/player.hpp"
#include "senso/rng.hpp"
#include "senso/session.hpp"

namespace senso {

namespace {

// Published counts for the 41-person cohort, per age group.
constexpr std::array<int, 3> kGroupN{22, 17, 2};
constexpr std::array<int, 3> kMales{4, 6, 1};
// Y0_3, Y4_6, Y7_9, Y10_12, Y12_PLUS. One 7-9 participant is moved from the
// 70-79 column to 60-69 so each column sums to its group size.
constexpr std::array<std::array<int, 5>, 3> kEducation{{{0, 2, 4, 9, 7}, {1, 3, 3, 7, 3}, {1, 0, 1, 0, 0}}};
constexpr std::array<double, 3> kMocaMean{27.0, 27.1, 24.5};

constexpr std::array<double, 10> kSusMean{3.34, 2.41, 3.56, 3.39, 3.66, 3.07, 3.71, 2.68, 4.17, 2.07};
constexpr std::array<double, 10> kSusSd{1.22, 1.07, 0.92, 1.07, 0.99, 0.96, 1.15, 1.11, 0.92, 1.17};
// Share answering 4 or 5, pre then post items.
constexpr std::array<double, 5> kTop2{0.927, 0.829, 0.854, 0.732, 0.888};

// Splits n in the given proportions, largest remainders first.
template <std::size_t K>
std::array<int, K> apportion(int n, const std::array<int, K>& weights) {
  int total = 0;
  for (int w : weights) total += w;
  std::array<int, K> out{};
  std::array<double, K> rem{};
  int used = 0;
  for (std::size_t i = 0; i < K; ++i) {
    const double exact = static_cast<double>(n) * weights[i] / total;
    out[i] = static_cast<int>(std::floor(exact));
    rem[i] = exact - out[i];
    used += out[i];
  }
  while (used < n) {
    const auto i = static_cast<std::size_t>(std::max_element(rem.begin(), rem.end()) - rem.begin());
    ++out[i];
    rem[i] = -1.0;
    ++used;
  }
  return out;
}

template <class T>
std::vector<T> exact_mix(Rng& rng, int n, const std::vector<std::pair<T, int>>& counts) {
  std::vector<T> v;
  for (const auto& [value, c] : counts)
    for (int k = 0; k < c && static_cast<int>(v.size()) < n; ++k) v.push_back(value);
  rng.shuffle(v);
  return v;
}

int likert(Rng& rng, bool top2) { return top2 ? static_cast<int>(rng.uniform_int(4, 5)) : static_cast<int>(rng.uniform_int(2, 3)); }

int binomial(Rng& rng, int trials, double p) {
  int k = 0;
  for (int i = 0; i < trials; ++i) k += rng.bernoulli(p) ? 1 : 0;
  return k;
}

ErrorInjection errors_for(AgeGroup g, Rng& rng) {
  const int level = static_cast<int>(g);
  ErrorInjection e;
  e.dimsum_wrong = binomial(rng, 2, 0.15 + 0.1 * level);
  e.dimsum_forget = binomial(rng, 2, 0.15 + 0.05 * level);
  e.steamer_skip_steam = binomial(rng, 2, 0.1 + 0.25 * level);
  e.steamer_skip_transfer = binomial(rng, 2, 0.15 + 0.1 * level);
  e.steamer_early = binomial(rng, 1, 0.15);
  e.steamer_late = binomial(rng, 1, 0.1 + 0.05 * level);
  e.cashier_idle_trials = static_cast<int>(rng.uniform_int(1, 3 + (level > 0 ? 1 : 0)));
  e.cashier_overshoots = binomial(rng, 2, 0.25);
  return e;
}

}  // namespace

Dataset gen_cohort(int n, std::uint64_t seed, const CohortOptions& opts) {
  if (n < 1) throw DomainError("cohort size must be at least 1");
  Rng rng(mix_seed(seed, 0xC0));
  const auto group_n = n == 41 ? kGroupN : apportion<3>(n, kGroupN);

  struct Person {
    AgeGroup group;
    Gender gender;
    EducationBand education;
  };
  std::vector<Person> people;
  for (std::size_t g = 0; g < 3; ++g) {
    const int size = group_n[g];
    const int males = n == 41 ? kMales[g] : static_cast<int>(std::lround(size * kMales[g] / double(kGroupN[g])));
    const auto edu = n == 41 ? kEducation[g] : apportion<5>(size, kEducation[g]);
    auto genders = exact_mix<Gender>(rng, size, {{Gender::Male, males}, {Gender::Female, size}});
    std::vector<std::pair<EducationBand, int>> edu_counts;
    for (std::size_t b = 0; b < 5; ++b) edu_counts.emplace_back(kEducationBands[b], edu[b]);
    edu_counts.emplace_back(EducationBand::Y10_12, size);
    auto bands = exact_mix<EducationBand>(rng, size, edu_counts);
    for (int i = 0; i < size; ++i)
      people.push_back({kAgeGroups[g], genders[static_cast<std::size_t>(i)], bands[static_cast<std::size_t>(i)]});
  }

  auto gaming = exact_mix<int>(rng, n, {{5, (n * 11 + 20) / 41}, {1, (n * 8 + 20) / 41}, {3, n}});
  auto vr = exact_mix<bool>(rng, n, {{true, (n * 22 + 20) / 41}, {false, n}});
  auto mocap = exact_mix<bool>(rng, n, {{true, (n * 12 + 20) / 41}, {false, n}});
  std::array<std::vector<bool>, 5> top2;
  for (std::size_t k = 0; k < 5; ++k)
    top2[k] = exact_mix<bool>(rng, n, {{true, static_cast<int>(std::lround(kTop2[k] * n))}, {false, n}});

  Dataset d;
  d.provenance = {{"schema_version", kSchemaVersion}, {"generator", "gen-cohort"}, {"seed", seed}, {"n", n}};
  for (int i = 0; i < n; ++i) {
    const auto& person = people[static_cast<std::size_t>(i)];
    const auto g = static_cast<std::size_t>(person.group);
    Rng prng(mix_seed(seed, 0x1000 + static_cast<std::uint64_t>(i)));

    char id[16];
    std::snprintf(id, sizeof id, "P%03d", i + 1);
    ParticipantProfile p;
    p.participant_id = id;
    const int lo = 60 + 10 * static_cast<int>(g);
    p.age = static_cast<int>(prng.uniform_int(lo, g == 2 ? 89 : lo + 9));
    p.gender = person.gender;
    p.education = person.education;
    p.moca_score = static_cast<int>(std::clamp(std::lround(kMocaMean[g] + 2.0 * prng.normal()), 18L, 30L));
    const auto row = static_cast<std::size_t>(i);
    p.tech.gaming_frequency = gaming[row] == 3 ? static_cast<int>(prng.uniform_int(2, 4)) : gaming[row];
    p.tech.computer_proficiency = static_cast<int>(prng.uniform_int(1, 4));
    p.tech.prior_vr = vr[row];
    p.tech.prior_motion_capture = mocap[row];
    p.tech.sensory_impairment = prng.bernoulli(0.1);

    QuestionnaireBundle q;
    SusResponse sus;
    for (std::size_t k = 0; k < 10; ++k)
      sus.items[k] = static_cast<int>(std::clamp(std::lround(kSusMean[k] + kSusSd[k] * prng.normal()), 1L, 5L));
    q.sus = sus;
    TlxResponse tlx;
    tlx.ratings = {static_cast<int>(prng.uniform_int(3, 7)), static_cast<int>(prng.uniform_int(2, 6)),
                   static_cast<int>(prng.uniform_int(3, 6)), static_cast<int>(prng.uniform_int(4, 7)),
                   static_cast<int>(prng.uniform_int(4, 7)), static_cast<int>(prng.uniform_int(1, 3))};
    q.tlx = tlx;
    const auto& pre = pre_interest_section().items;
    const auto& post = post_satisfaction_section().items;
    for (std::size_t k = 0; k < pre.size(); ++k) q.pre_interest[pre[k]] = likert(prng, top2[k][row]);
    for (std::size_t k = 0; k < post.size(); ++k)
      q.post_satisfaction[post[k]] = likert(prng, top2[pre.size() + k][row]);

    SessionConfig config;
    config.skip_tutorials = opts.skip_tutorials;
    const auto session_seed = mix_seed(seed, 0x2000 + static_cast<std::uint64_t>(i));
    SimulatedPlayer player(traits_for(person.group, prng), errors_for(person.group, prng), session_seed);
    SessionOptions so;
    so.session_id = std::string("cohort-") + id;
    so.created_at = opts.created_at;
    d.records.push_back(run_session(p, config, session_seed, player, q, std::move(so)));
  }
  return d;
}

void write_cohort(const Dataset& d, const std::filesystem::path& dir, bool with_records) {
  std::filesystem::create_directories(dir);
  if (with_records) {
    std::filesystem::create_directories(dir / "records");
    for (const auto& r : d.records) save_record(dir / "records" / (r.profile.participant_id + ".json"), r);
  }
  export_csv(d, dir);
  std::ofstream os(dir / "dataset.json", std::ios::binary);
  os << d.provenance.dump(2) << "\n";
}

}  // namespace senso
