#ifndef WFLO_HARNESS_ANALYSIS_HPP_
#define WFLO_HARNESS_ANALYSIS_HPP_

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "wflo/grid.hpp"
#include "wflo/harness/experiment.hpp"

namespace wflo::harness {

// All feasible layouts of maximal power, ascending label order.
std::vector<Layout> enumerate_degenerate(const ExperimentConfig& config);

struct HeatmapResult {
  int l_grid = 0;
  std::vector<double> cells;  // row-major, row 1 = northern edge

  // 1-based row and column.
  double at(int row, int col) const { return cells[std::size_t((row - 1) * l_grid + col - 1)]; }
  double total() const;
};

// Fraction of the layouts with a turbine on each site.
HeatmapResult mean_placement(std::span<const Layout> layouts, const GridGeometry& geometry);

struct PercentOfOptimal {
  double percent = 0.0;     // 100 * mean power / optimum over successful runs
  std::size_t successes = 0;
  std::size_t failures = 0;  // runs without a valid layout
  bool flagged = false;      // no successful run, percent is meaningless
};

PercentOfOptimal percent_of_optimal(std::span<const RunRecord> records, double optimal_power);
PercentOfOptimal percent_of_optimal(std::span<const double> powers, double optimal_power);

double sample_mean(std::span<const double> values);

// Box-plot summary: quartiles by linear interpolation between order
// statistics, whiskers at the most extreme data within 1.5 IQR of the box.
struct BoxStats {
  std::size_t n = 0;
  double mean = 0.0;
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  double whisker_low = 0.0;
  double whisker_high = 0.0;
  std::vector<double> outliers;  // ascending
};

BoxStats box_stats(std::span<const double> values);

// Linear quantile (p in [0, 1]) of the values.
double quantile(std::span<const double> values, double p);

// Least squares line log_b(t) = slope * log_b(V) + intercept.
struct ScalingFit {
  std::vector<std::pair<double, double>> points;  // (log V, log t)
  double slope = 0.0;
  double intercept = 0.0;
  double log_base = 10.0;
};

// timings: (V, seconds), both positive; needs two distinct V.
ScalingFit fit_scaling(std::span<const std::pair<double, double>> timings, double log_base = 10.0);

// log_b V at which the two fitted power laws give the same time. Both fits
// must share the log base and have different slopes.
double intersection_log_volume(const ScalingFit& a, const ScalingFit& b);

}  // namespace wflo::harness

#endif  // WFLO_HARNESS_ANALYSIS_HPP_
