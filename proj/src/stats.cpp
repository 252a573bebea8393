#include "senso/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

#include "senso/errors.hpp"

namespace senso {

StatTestResult kruskal_wallis(std::span<const Sample> groups) {
  if (groups.size() < 2) throw DomainError("Kruskal-Wallis needs at least two groups");
  struct Obs {
    double v;
    std::size_t g;
  };
  std::vector<Obs> pooled;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (groups[g].values.empty()) throw DomainError("group '" + groups[g].label + "' is empty");
    for (double v : groups[g].values) {
      if (!std::isfinite(v)) throw DomainError("non-finite value in group '" + groups[g].label + "'");
      pooled.push_back({v, g});
    }
  }
  const auto n = static_cast<double>(pooled.size());
  if (pooled.size() < 3) throw DomainError("Kruskal-Wallis needs at least three observations");
  std::stable_sort(pooled.begin(), pooled.end(), [](const Obs& a, const Obs& b) { return a.v < b.v; });

  std::vector<double> rank_sum(groups.size(), 0.0);
  double tie_term = 0.0;
  for (std::size_t i = 0; i < pooled.size();) {
    std::size_t j = i;
    while (j < pooled.size() && pooled[j].v == pooled[i].v) ++j;
    const double mid = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) rank_sum[pooled[k].g] += mid;
    const auto t = static_cast<double>(j - i);
    tie_term += t * t * t - t;
    i = j;
  }

  StatTestResult r;
  r.df = static_cast<int>(groups.size()) - 1;
  r.tie_corrected = true;
  const double correction = 1.0 - tie_term / (n * n * n - n);
  if (correction <= 0.0) {
    r.statistic = 0.0;
    r.p_value = 1.0;
    return r;
  }
  double s = 0.0;
  for (std::size_t g = 0; g < groups.size(); ++g)
    s += rank_sum[g] * rank_sum[g] / static_cast<double>(groups[g].values.size());
  double h = 12.0 / (n * (n + 1.0)) * s - 3.0 * (n + 1.0);
  h = std::max(0.0, h / correction);
  r.statistic = h;
  const boost::math::chi_squared chi(*r.df);
  r.p_value = std::clamp(boost::math::cdf(boost::math::complement(chi, h)), 0.0, 1.0);
  return r;
}

namespace {

double poly(std::span<const double> c, double x) {
  double r = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) r = r * x + c[i];
  return r;
}

constexpr double c1[] = {0.0, 0.221157, -0.147981, -2.07119, 4.434685, -2.706056};
constexpr double c2[] = {0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633};
constexpr double c3[] = {0.544, -0.39978, 0.025054, -6.714e-4};
constexpr double c4[] = {1.3822, -0.77857, 0.062767, -0.0020322};
constexpr double c5[] = {-1.5861, -0.31082, -0.083751, 0.0038915};
constexpr double c6[] = {-0.4803, -0.082676, 0.0030302};
constexpr double g[] = {-2.273, 0.459};

}  // namespace

StatTestResult shapiro_wilk(std::span<const double> data) {
  const std::size_t n = data.size();
  if (n < 3 || n > 5000) throw UnsupportedSizeError("Shapiro-Wilk needs 3 <= n <= 5000, got " + std::to_string(n));
  std::vector<double> x(data.begin(), data.end());
  for (double v : x)
    if (!std::isfinite(v)) throw DomainError("non-finite value in sample");
  std::sort(x.begin(), x.end());
  if (x.back() - x.front() <= 0.0) throw DegenerateSampleError("sample has zero range");

  const boost::math::normal norm;
  const std::size_t half = n / 2;
  const auto dn = static_cast<double>(n);
  std::vector<double> a(half);
  if (n == 3) {
    a[0] = std::numbers::sqrt2 / 2.0;
  } else {
    std::vector<double> m(half);
    double summ2 = 0.0;
    for (std::size_t i = 0; i < half; ++i) {
      m[i] = boost::math::quantile(norm, (static_cast<double>(i + 1) - 0.375) / (dn + 0.25));
      summ2 += m[i] * m[i];
    }
    summ2 *= 2.0;
    const double ssumm2 = std::sqrt(summ2);
    const double rsn = 1.0 / std::sqrt(dn);
    const double a1 = poly(c1, rsn) - m[0] / ssumm2;
    std::size_t i1;
    double fac;
    if (n > 5) {
      i1 = 2;
      const double a2 = -m[1] / ssumm2 + poly(c2, rsn);
      fac = std::sqrt((summ2 - 2.0 * m[0] * m[0] - 2.0 * m[1] * m[1]) / (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
      a[1] = a2;
    } else {
      i1 = 1;
      fac = std::sqrt((summ2 - 2.0 * m[0] * m[0]) / (1.0 - 2.0 * a1 * a1));
    }
    a[0] = a1;
    for (std::size_t i = i1; i < half; ++i) a[i] = -m[i] / fac;
  }
  // m_i < 0 on the lower half, so every a_i here is positive.
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / dn;
  double ssq = 0.0;
  for (double v : x) ssq += (v - mean) * (v - mean);
  double num = 0.0;
  for (std::size_t i = 0; i < half; ++i) num += a[i] * (x[n - 1 - i] - x[i]);
  double w = std::min(1.0, num * num / ssq);

  StatTestResult r;
  r.statistic = w;
  const double w1 = 1.0 - w;
  if (n == 3) {
    const double pi6 = 6.0 / std::numbers::pi;
    const double stqr = std::numbers::pi / 3.0;
    r.p_value = std::max(0.0, pi6 * (std::asin(std::sqrt(w)) - stqr));
    return r;
  }
  if (w1 <= 0.0) {
    r.p_value = 1.0;
    return r;
  }
  double y = std::log(w1);
  double mu;
  double sigma;
  if (n <= 11) {
    const double gamma = poly(g, dn);
    if (y >= gamma) {
      r.p_value = 1e-99;
      return r;
    }
    y = -std::log(gamma - y);
    mu = poly(c3, dn);
    sigma = std::exp(poly(c4, dn));
  } else {
    const double xx = std::log(dn);
    mu = poly(c5, xx);
    sigma = std::exp(poly(c6, xx));
  }
  r.p_value = std::clamp(boost::math::cdf(boost::math::complement(norm, (y - mu) / sigma)), 0.0, 1.0);
  return r;
}

DescriptiveSummary describe(std::span<const double> values) {
  if (values.empty()) throw DomainError("cannot describe an empty column");
  DescriptiveSummary s;
  s.n = values.size();
  const auto n = static_cast<double>(s.n);
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  s.min = *lo;
  s.max = *hi;
  if (s.n > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.sd = std::sqrt(ss / (n - 1.0));
  }
  return s;
}

CategoricalSummary describe_categories(std::span<const std::string> values) {
  if (values.empty()) throw DomainError("cannot describe an empty column");
  CategoricalSummary s;
  s.n = values.size();
  for (const auto& v : values) ++s.categories[v].count;
  for (auto& [k, c] : s.categories) c.pct = 100.0 * static_cast<double>(c.count) / static_cast<double>(s.n);
  return s;
}

std::string format_p(double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f%s", p, p < kAlpha ? "*" : "");
  return buf;
}

}  // namespace senso
