#include "senso/analysis.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "senso/errors.hpp"
#include "senso/questionnaire.hpp"

namespace senso {

namespace {

std::string fmt(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string count_pct(std::size_t k, std::size_t n) {
  if (n == 0) return "-";
  return std::to_string(k) + " (" + fmt(100.0 * static_cast<double>(k) / static_cast<double>(n), 1) + ")";
}

// Fixed-width text table; first column left-aligned.
std::string render(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows)
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (width.size() <= c) width.push_back(0);
      width[c] = std::max(width[c], r[c].size());
    }
  std::string out;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t c = 0; c < r.size(); ++c) {
      const auto pad = std::string(width[c] - r[c].size(), ' ');
      line += c == 0 ? r[c] + pad : "  " + pad + r[c];
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  return out;
}

std::string csv(const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (c) out += ',';
      const bool quote = r[c].find_first_of(",\"") != std::string::npos;
      if (quote) {
        out += '"';
        for (char ch : r[c]) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        out += '"';
      } else {
        out += r[c];
      }
    }
    out += '\n';
  }
  return out;
}

std::string group_header(AgeGroup g, std::size_t n) {
  return "Age group (" + std::string(g == AgeGroup::G80_Plus ? "80 or above" : label(g)) + ") (n=" + std::to_string(n) + ")";
}

}  // namespace

SummaryTable load_summary_table(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw NotFoundError("cannot read " + path.string());
  SummaryTable t;
  std::ostringstream ss;
  ss << is.rdbuf();
  t.raw = ss.str();
  std::istringstream lines(t.raw);
  std::string line;
  std::size_t n = 0;
  while (std::getline(lines, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream cs(line);
    while (std::getline(cs, cell, ',')) cells.push_back(cell);
    if (t.header.empty()) {
      t.header = std::move(cells);
      continue;
    }
    if (cells.size() != t.header.size()) throw ParseError(path.filename().string() + ": wrong column count", n);
    t.rows.push_back(std::move(cells));
  }
  if (t.header.empty()) throw ParseError(path.filename().string() + ": empty table", 1);
  return t;
}

AnalysisReport analyze(const Dataset& d, const std::optional<SummaryTable>& published) {
  if (d.records.empty()) throw DomainError("dataset is empty");
  validate_dataset(d);
  AnalysisReport rep;
  std::ostringstream out;

  std::array<std::vector<const SessionRecord*>, 3> groups;
  for (const auto& r : d.records) groups[static_cast<std::size_t>(derive_age_group(r.profile.age))].push_back(&r);
  for (std::size_t g = 0; g < 3; ++g) rep.group_n[g] = groups[g].size();
  const std::size_t total = d.records.size();
  std::vector<std::size_t> present;
  for (std::size_t g = 0; g < 3; ++g)
    if (rep.group_n[g] > 0) present.push_back(g);

  out << "SENSO session analysis\n";
  out << "Participants: " << total << "\n";
  if (d.provenance.contains("generator"))
    out << "Dataset: " << d.provenance.value("generator", "") << ", seed " << d.provenance.value("seed", 0ULL) << "\n";
  for (std::size_t g = 0; g < 3; ++g)
    if (rep.group_n[g] == 0) out << "Note: age group " << label(kAgeGroups[g]) << " has no participants and is omitted.\n";
  const bool single = total == 1;
  if (single) out << "Note: single participant; descriptive values only, no tests run.\n";
  const bool small = std::any_of(present.begin(), present.end(), [&](std::size_t g) { return rep.group_n[g] < 5; });
  if (small && !single)
    out << "Caveat: at least one age group has fewer than 5 participants; chi-square p-values are approximate "
           "and interpretation is limited by the small sample.\n";
  out << "Session budget: about 60 minutes per participant (documented, not enforced).\n\n";

  // Demographics.
  {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> head{""};
    for (auto g : present) head.push_back(group_header(kAgeGroups[g], rep.group_n[g]));
    head.push_back("All age group (n=" + std::to_string(total) + ")");
    rows.push_back(head);
    auto add_row = [&](const std::string& name, auto pred) {
      std::vector<std::string> row{name};
      std::size_t all = 0;
      for (auto g : present) {
        const auto k = static_cast<std::size_t>(std::count_if(groups[g].begin(), groups[g].end(), pred));
        all += k;
        row.push_back(count_pct(k, rep.group_n[g]));
      }
      row.push_back(count_pct(all, total));
      rows.push_back(row);
    };
    rows.push_back({"Gender, n (%)"});
    add_row("Male", [](const SessionRecord* r) { return r->profile.gender == Gender::Male; });
    add_row("Female", [](const SessionRecord* r) { return r->profile.gender == Gender::Female; });
    if (std::any_of(d.records.begin(), d.records.end(), [](const auto& r) { return r.profile.gender == Gender::Other; }))
      add_row("Other", [](const SessionRecord* r) { return r->profile.gender == Gender::Other; });
    rows.push_back({"Education, n (%)"});
    for (auto band : kEducationBands)
      add_row(std::string(label(band)), [band](const SessionRecord* r) { return r->profile.education == band; });
    std::vector<std::string> moca{"MoCA"};
    std::vector<double> all_moca;
    for (auto g : present) {
      std::vector<double> v;
      for (const auto* r : groups[g]) v.push_back(r->profile.moca_score);
      all_moca.insert(all_moca.end(), v.begin(), v.end());
      moca.push_back(fmt(describe(v).mean, 1));
    }
    moca.push_back(fmt(describe(all_moca).mean, 1));
    rows.push_back(moca);
    out << "Table 1. Demographics\n" << render(rows);
    const auto sd = describe(all_moca).sd;
    out << "MoCA overall: M = " << fmt(describe(all_moca).mean, 1) << ", SD = " << (sd ? fmt(*sd, 1) : "n/a") << "\n";

    std::vector<std::vector<std::string>> tech{{"Technology background", "n (%)"}};
    auto tech_row = [&](const std::string& name, auto pred) {
      const auto k = static_cast<std::size_t>(std::count_if(d.records.begin(), d.records.end(), pred));
      tech.push_back({name, count_pct(k, total)});
    };
    tech_row("Gaming daily", [](const auto& r) { return r.profile.tech.gaming_frequency == 5; });
    tech_row("Never gaming", [](const auto& r) { return r.profile.tech.gaming_frequency == 1; });
    tech_row("Prior VR", [](const auto& r) { return r.profile.tech.prior_vr; });
    tech_row("Prior motion capture", [](const auto& r) { return r.profile.tech.prior_motion_capture; });
    tech_row("Sensory impairment", [](const auto& r) { return r.profile.tech.sensory_impairment; });
    out << "\n" << render(tech) << "\n";
    rep.tables["table1_demographics.csv"] = csv(rows);
    rep.tables["tech_background.csv"] = csv(tech);
  }

  // SUS.
  {
    std::vector<SusResponse> sus;
    for (const auto& r : d.records)
      if (r.questionnaires.sus) sus.push_back(*r.questionnaires.sus);
    if (sus.empty()) {
      out << "Table 2. System Usability Scale: no responses\n\n";
    } else {
      std::vector<std::vector<std::string>> rows{{"SUS item", "Average", "Standard deviation"}};
      std::array<double, 10> item_means{};
      for (std::size_t k = 0; k < 10; ++k) {
        std::vector<double> v;
        for (const auto& s : sus) v.push_back(s.items[k]);
        const auto desc = describe(v);
        item_means[k] = desc.mean;
        rows.push_back({std::to_string(k + 1), fmt(desc.mean, 2), desc.sd ? fmt(*desc.sd, 2) : "n/a"});
      }
      out << "Table 2. System Usability Scale (n=" << sus.size() << ")\n" << render(rows);
      std::vector<double> scores;
      std::array<std::size_t, 3> bands{};
      for (const auto& s : sus) {
        const auto res = score_sus(s);
        scores.push_back(res.score);
        ++bands[static_cast<std::size_t>(res.band)];
      }
      const auto desc = describe(scores);
      rep.sus_mean = desc.mean;
      rep.sus_pseudo_respondent = sus_formula(item_means);
      out << "Global SUS (mean of per-respondent scores): " << fmt(desc.mean, 2)
          << (desc.sd ? " (SD " + fmt(*desc.sd, 2) + ")" : "") << ", range " << fmt(desc.min, 1) << "-"
          << fmt(desc.max, 1) << ", band " << to_string(band_sus(desc.mean)) << "\n";
      out << "SUS from item means (pseudo-respondent): " << fmt(*rep.sus_pseudo_respondent, 2) << ", band "
          << to_string(band_sus(*rep.sus_pseudo_respondent)) << "\n";
      out << "Bands: NotAcceptable " << count_pct(bands[0], sus.size()) << ", Marginal "
          << count_pct(bands[1], sus.size()) << ", Acceptable " << count_pct(bands[2], sus.size()) << "\n\n";
      rep.tables["table2_sus.csv"] = csv(rows);
      std::vector<std::vector<std::string>> srows{{"participant_id", "score", "band"}};
      for (const auto& r : d.records)
        if (r.questionnaires.sus) {
          const auto res = score_sus(*r.questionnaires.sus);
          srows.push_back({r.profile.participant_id, fmt(res.score, 1), std::string(to_string(res.band))});
        }
      rep.tables["sus_scores.csv"] = csv(srows);
    }
  }

  // NASA-TLX and Likert sections.
  {
    std::vector<TlxResponse> tlx;
    for (const auto& r : d.records)
      if (r.questionnaires.tlx) tlx.push_back(*r.questionnaires.tlx);
    if (!tlx.empty()) {
      const auto s = summarize_tlx(tlx);
      std::vector<std::vector<std::string>> rows{{"NASA-TLX dimension", "Mean", "SD"}};
      for (std::size_t k = 0; k < 6; ++k)
        rows.push_back({std::string(to_string(kTlxDimensions[k])), fmt(s.dims[k].mean, 2),
                        s.dims[k].sd ? fmt(*s.dims[k].sd, 2) : "n/a"});
      out << "NASA-TLX, raw ratings 1-7 (n=" << s.n << ")\n" << render(rows) << "\n";
      rep.tables["tlx_summary.csv"] = csv(rows);
    }
    std::vector<std::vector<std::string>> rows{{"Section", "Item", "n", "1", "2", "3", "4", "5", "Top-2-box %"}};
    for (const auto* section : {&pre_interest_section(), &post_satisfaction_section()}) {
      std::vector<LikertAnswers> answers;
      for (const auto& r : d.records) {
        const auto& a = section == &pre_interest_section() ? r.questionnaires.pre_interest : r.questionnaires.post_satisfaction;
        if (!a.empty()) answers.push_back(a);
      }
      if (answers.empty()) continue;
      for (const auto& f : likert_frequencies(*section, answers)) {
        std::vector<std::string> row{section->name, f.item, std::to_string(f.n)};
        for (std::size_t k = 0; k < 5; ++k) row.push_back(count_pct(f.counts[k], f.n));
        row.push_back(fmt(f.top2_pct, 1));
        rows.push_back(row);
      }
    }
    if (rows.size() > 1) {
      out << "Likert sections\n" << render(rows) << "\n";
      rep.tables["likert_summary.csv"] = csv(rows);
    }
  }

  // Performance by age group.
  {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> head{"Game", "Indicator"};
    for (auto g : present) head.push_back(group_header(kAgeGroups[g], rep.group_n[g]));
    head.push_back("Significance between age groups");
    rows.push_back(head);
    std::vector<std::vector<std::string>> norm{{"Game", "Indicator", "n", "W", "p", "Normal at 0.05"}};
    std::vector<std::vector<std::string>> kw{{"Game", "Indicator", "H", "df", "p", "tie_corrected"}};
    for (auto game : kGameOrder) {
      for (auto ind : kIndicators) {
        IndicatorComparison c;
        c.game = game;
        c.indicator = ind;
        std::vector<Sample> samples;
        std::vector<double> pooled;
        for (auto g : present) {
          Sample s{std::string(label(kAgeGroups[g])), {}};
          for (const auto* r : groups[g]) {
            const auto it = r->metrics.find(game);
            if (it == r->metrics.end())
              throw IncompleteTaskError(r->profile.participant_id + " has no " + std::string(to_string(game)) + " metrics");
            s.values.push_back(indicator_value(it->second, ind));
          }
          c.means[g] = describe(s.values).mean;
          pooled.insert(pooled.end(), s.values.begin(), s.values.end());
          samples.push_back(std::move(s));
        }
        if (!single && samples.size() >= 2 && pooled.size() >= 3) c.kruskal_wallis = kruskal_wallis(samples);
        if (!single && pooled.size() >= 3 && *std::max_element(pooled.begin(), pooled.end()) >
                                                 *std::min_element(pooled.begin(), pooled.end()))
          c.shapiro_wilk = shapiro_wilk(pooled);

        std::vector<std::string> row{std::string(label(game)), std::string(label(ind))};
        for (auto g : present) row.push_back(format_1dp(*c.means[g]));
        row.push_back(c.kruskal_wallis ? format_p(c.kruskal_wallis->p_value) : "n/a");
        rows.push_back(row);
        if (c.kruskal_wallis)
          kw.push_back({std::string(label(game)), std::string(label(ind)), fmt(c.kruskal_wallis->statistic, 4),
                        std::to_string(*c.kruskal_wallis->df), fmt(c.kruskal_wallis->p_value, 4),
                        c.kruskal_wallis->tie_corrected ? "yes" : "no"});
        norm.push_back({std::string(label(game)), std::string(label(ind)), std::to_string(pooled.size()),
                        c.shapiro_wilk ? fmt(c.shapiro_wilk->statistic, 4) : "n/a",
                        c.shapiro_wilk ? fmt(c.shapiro_wilk->p_value, 4) : "n/a",
                        c.shapiro_wilk ? (c.shapiro_wilk->p_value >= kAlpha ? "yes" : "no") : "n/a"});
        rep.comparisons.push_back(std::move(c));
      }
    }
    out << "Table 3. Performance by age group (means; Kruskal-Wallis p, * p < 0.05)\n" << render(rows) << "\n";
    if (!single) {
      out << "Normality screening (Shapiro-Wilk, pooled)\n" << render(norm) << "\n";
      out << "Kruskal-Wallis detail (tie-corrected, chi-square approximation)\n" << render(kw) << "\n";
    }
    rep.tables["table3_performance.csv"] = csv(rows);
    rep.tables["normality.csv"] = csv(norm);
    rep.tables["kruskal_wallis.csv"] = csv(kw);
  }

  if (published) {
    std::vector<std::vector<std::string>> rows{published->header};
    rows.insert(rows.end(), published->rows.begin(), published->rows.end());
    out << "Published reference values (as printed)\n" << render(rows) << "\n";
    rep.tables["published_table3.csv"] = published->raw;
  }

  rep.text = out.str();
  return rep;
}

void write_report(const AnalysisReport& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& body) {
    std::ofstream os(dir / name, std::ios::binary);
    if (!os) throw Error("cannot write " + (dir / name).string());
    os << body;
  };
  write("report.txt", r.text);
  for (const auto& [name, body] : r.tables) write(name, body);
}

}  // namespace senso
