#include <doctest.h>

#include <cmath>

#include "senso/errors.hpp"
#include "senso/rng.hpp"
#include "senso/stats.hpp"
#include "support.hpp"

using namespace senso;

namespace {

const nlohmann::json& oracle() {
  static const auto j = test::read_json(test::data_path("tests/data/stats_oracle.json"));
  return j;
}

std::vector<Sample> samples(const nlohmann::json& groups) {
  std::vector<Sample> out;
  for (const auto& g : groups) out.push_back({"g" + std::to_string(out.size()), g.get<std::vector<double>>()});
  return out;
}

}  // namespace

TEST_CASE("Kruskal-Wallis hand case") {
  const std::vector<Sample> g{{"a", {1, 2}}, {"b", {3, 4}}, {"c", {5, 6}}};
  const auto r = kruskal_wallis(g);
  CHECK(r.statistic == doctest::Approx(4.5714).epsilon(1e-4));
  CHECK(r.p_value == doctest::Approx(0.1017).epsilon(1e-3));
  CHECK(*r.df == 2);
}

TEST_CASE("Kruskal-Wallis all identical") {
  const std::vector<Sample> g{{"a", {2, 2}}, {"b", {2, 2, 2}}};
  const auto r = kruskal_wallis(g);
  CHECK(r.statistic == 0.0);
  CHECK(r.p_value == 1.0);
}

TEST_CASE("Kruskal-Wallis matches the reference on tied data") {
  int checked = 0;
  for (const auto& c : oracle()["kruskal_wallis"]) {
    const auto r = kruskal_wallis(samples(c["groups"]));
    INFO(c["label"].get<std::string>());
    CHECK(std::abs(r.statistic - c["H"].get<double>()) <= 1e-6);
    CHECK(std::abs(r.p_value - c["p"].get<double>()) <= 1e-6);
    CHECK(*r.df == c["df"].get<int>());
    ++checked;
  }
  CHECK(checked == 51);
}

TEST_CASE("Kruskal-Wallis is invariant under monotone transforms") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    std::vector<Sample> a, b;
    const auto k = rng.uniform_int(2, 4);
    for (std::int64_t g = 0; g < k; ++g) {
      Sample s{"g", {}};
      const auto n = rng.uniform_int(2, 10);
      for (std::int64_t i = 0; i < n; ++i) s.values.push_back(static_cast<double>(rng.uniform_int(0, 8)) + 0.5);
      Sample t = s;
      for (auto& v : t.values) v = std::exp(v) * 3.0 + 7.0;
      a.push_back(s);
      b.push_back(t);
    }
    const auto ra = kruskal_wallis(a);
    const auto rb = kruskal_wallis(b);
    CHECK(ra.statistic == doctest::Approx(rb.statistic).epsilon(1e-12));
    CHECK(ra.p_value == doctest::Approx(rb.p_value).epsilon(1e-12));
  }
}

TEST_CASE("Kruskal-Wallis input errors") {
  CHECK_THROWS_AS(kruskal_wallis(std::vector<Sample>{{"a", {1, 2, 3}}}), DomainError);
  CHECK_THROWS_AS(kruskal_wallis(std::vector<Sample>{{"a", {1, 2}}, {"b", {}}}), DomainError);
  CHECK_THROWS_AS(kruskal_wallis(std::vector<Sample>{{"a", {1}}, {"b", {2}}}), DomainError);
  CHECK_THROWS_AS(kruskal_wallis(std::vector<Sample>{{"a", {1, NAN}}, {"b", {2}}}), DomainError);
}

TEST_CASE("Shapiro-Wilk matches the reference") {
  for (const auto& c : oracle()["shapiro_wilk"]) {
    const auto x = c["x"].get<std::vector<double>>();
    const auto r = shapiro_wilk(x);
    INFO(c["label"].get<std::string>());
    CHECK(std::abs(r.statistic - c["W"].get<double>()) <= 1e-3);
    CHECK(std::abs(r.p_value - c["p"].get<double>()) <= 1e-3);
  }
}

TEST_CASE("Shapiro-Wilk is affine invariant") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    std::vector<double> x, y;
    for (int i = 0; i < 30; ++i) {
      x.push_back(rng.normal() + (i % 3 == 0 ? rng.uniform01() : 0.0));
      y.push_back(x.back() * 4.5 - 120.0);
    }
    const auto a = shapiro_wilk(x);
    const auto b = shapiro_wilk(y);
    CHECK(std::abs(a.statistic - b.statistic) <= 1e-9);
    CHECK(std::abs(a.p_value - b.p_value) <= 1e-9);
  }
}

TEST_CASE("Shapiro-Wilk size and degenerate errors") {
  CHECK_THROWS_AS(shapiro_wilk(std::vector<double>{1, 2}), UnsupportedSizeError);
  CHECK_THROWS_AS(shapiro_wilk(std::vector<double>(5001, 1.0)), UnsupportedSizeError);
  CHECK_THROWS_AS(shapiro_wilk(std::vector<double>{3, 3, 3, 3}), DegenerateSampleError);
}

TEST_CASE("descriptives") {
  const std::vector<double> v{2, 4, 4, 4, 5, 5, 7, 9};
  const auto d = describe(v);
  CHECK(d.n == 8);
  CHECK(d.mean == 5.0);
  CHECK(*d.sd == doctest::Approx(2.138089935));
  CHECK(d.min == 2.0);
  CHECK(d.max == 9.0);
  CHECK_FALSE(describe(std::vector<double>{1.0}).sd.has_value());

  const std::vector<std::string> c{"m", "f", "f", "f"};
  const auto s = describe_categories(c);
  CHECK(s.categories.at("f").count == 3);
  CHECK(s.categories.at("m").pct == 25.0);
}

TEST_CASE("p formatting") {
  CHECK(format_p(0.003) == "0.003*");
  CHECK(format_p(0.022) == "0.022*");
  CHECK(format_p(0.05) == "0.050");
  CHECK(format_p(0.5) == "0.500");
}
