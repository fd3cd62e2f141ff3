#include "wflo/harness/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wflo/optim/exhaustive.hpp"

namespace wflo::harness {

std::vector<Layout> enumerate_degenerate(const ExperimentConfig& config) {
  ExperimentConfig c = config;
  c.method = Method::exhaustive;
  c.validate();
  // exhaustive_power only knows the count constraint
  if (c.xi > 0.0) throw std::invalid_argument("degeneracy enumeration supports xi = 0 only");
  return optim::exhaustive_power(c.model(), c.m, optim::SearchMode::feasible_only).optimal;
}

double HeatmapResult::total() const {
  double s = 0.0;
  for (double v : cells) s += v;
  return s;
}

HeatmapResult mean_placement(std::span<const Layout> layouts, const GridGeometry& geometry) {
  if (layouts.empty()) throw std::invalid_argument("mean_placement needs at least one layout");
  const auto q = static_cast<std::size_t>(geometry.sites());
  HeatmapResult h{geometry.side(), std::vector<double>(q, 0.0)};
  for (const Layout& x : layouts) {
    if (x.size() != q) throw std::invalid_argument("layout size does not match the grid");
    for (std::size_t i = 0; i < q; ++i) h.cells[i] += x.occupied(i) ? 1.0 : 0.0;
  }
  for (double& v : h.cells) v /= double(layouts.size());
  return h;
}

PercentOfOptimal percent_of_optimal(std::span<const double> powers, double optimal_power) {
  if (!(optimal_power > 0.0)) throw std::invalid_argument("optimal power must be positive");
  PercentOfOptimal r;
  r.successes = powers.size();
  if (powers.empty()) {
    r.flagged = true;
    return r;
  }
  r.percent = 100.0 * sample_mean(powers) / optimal_power;
  return r;
}

PercentOfOptimal percent_of_optimal(std::span<const RunRecord> records, double optimal_power) {
  std::vector<double> powers;
  for (const RunRecord& rec : records) {
    if (rec.success()) powers.push_back(rec.power_kw);
  }
  PercentOfOptimal r = percent_of_optimal(powers, optimal_power);
  r.failures = records.size() - powers.size();
  return r;
}

double sample_mean(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("mean of an empty sample");
  double s = 0.0;
  for (double v : values) s += v;
  return s / double(values.size());
}

namespace {

double sorted_quantile(const std::vector<double>& s, double p) {
  const double pos = p * double(s.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, s.size() - 1);
  return s[lo] + (pos - double(lo)) * (s[hi] - s[lo]);
}

}  // namespace

double quantile(std::span<const double> values, double p) {
  if (values.empty()) throw std::invalid_argument("quantile of an empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("quantile level outside [0, 1]");
  std::vector<double> s(values.begin(), values.end());
  std::sort(s.begin(), s.end());
  return sorted_quantile(s, p);
}

BoxStats box_stats(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("box statistics of an empty sample");
  std::vector<double> s(values.begin(), values.end());
  std::sort(s.begin(), s.end());
  BoxStats b;
  b.n = s.size();
  b.mean = sample_mean(s);
  b.min = s.front();
  b.max = s.back();
  b.q1 = sorted_quantile(s, 0.25);
  b.median = sorted_quantile(s, 0.5);
  b.q3 = sorted_quantile(s, 0.75);
  const double iqr = b.q3 - b.q1;
  const double lo = b.q1 - 1.5 * iqr;
  const double hi = b.q3 + 1.5 * iqr;
  b.whisker_low = b.q1;
  b.whisker_high = b.q3;
  for (double v : s) {
    if (v < lo || v > hi) {
      b.outliers.push_back(v);
    } else {
      b.whisker_low = std::min(b.whisker_low, v);
      b.whisker_high = std::max(b.whisker_high, v);
    }
  }
  return b;
}

ScalingFit fit_scaling(std::span<const std::pair<double, double>> timings, double log_base) {
  if (!(log_base > 0.0) || log_base == 1.0) throw std::invalid_argument("invalid log base");
  if (timings.size() < 2) throw std::invalid_argument("scaling fit needs at least two points");
  ScalingFit fit;
  fit.log_base = log_base;
  const double ln_b = std::log(log_base);
  for (const auto& [v, t] : timings) {
    if (!(v > 0.0) || !(t > 0.0)) throw std::invalid_argument("scaling fit needs positive V and t");
    fit.points.emplace_back(std::log(v) / ln_b, std::log(t) / ln_b);
  }
  const double n = double(fit.points.size());
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : fit.points) {
    mx += x;
    my += y;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : fit.points) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("scaling fit needs two distinct volumes");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  return fit;
}

double intersection_log_volume(const ScalingFit& a, const ScalingFit& b) {
  if (a.log_base != b.log_base) throw std::invalid_argument("fits use different log bases");
  if (a.slope == b.slope) throw std::invalid_argument("parallel fits never intersect");
  return (b.intercept - a.intercept) / (a.slope - b.slope);
}

}  // namespace wflo::harness
