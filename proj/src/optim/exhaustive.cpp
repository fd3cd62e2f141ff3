#include "wflo/optim/exhaustive.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace wflo::optim {

namespace {

double tie_tolerance(double best) { return 1e-9 * std::max(1.0, std::abs(best)); }

// Running minimum plus every label within the tie tolerance of it.
struct Collector {
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::pair<std::uint64_t, double>> ties;
  std::uint64_t visited = 0;

  void offer(std::uint64_t label, double value) {
    ++visited;
    if (value > best + tie_tolerance(best)) return;
    if (value < best) {
      best = value;
      const double cut = best + tie_tolerance(best);
      std::erase_if(ties, [cut](const auto& t) { return t.second > cut; });
    }
    ties.emplace_back(label, value);
  }

  void merge(const Collector& other) {
    visited += other.visited;
    best = std::min(best, other.best);
    ties.insert(ties.end(), other.ties.begin(), other.ties.end());
    const double cut = best + tie_tolerance(best);
    std::erase_if(ties, [cut](const auto& t) { return t.second > cut; });
  }
};

// Next larger integer with the same popcount (Gosper).
std::uint64_t next_combination(std::uint64_t v) {
  const std::uint64_t c = v & -v;
  const std::uint64_t r = v + c;
  return (((r ^ v) >> 2) / c) | r;
}

// Every label < 2^width with k ones.
template <class F>
void for_each_combination(int width, int k, F&& f) {
  if (k > width) return;
  if (k == 0) {
    f(std::uint64_t{0});
    return;
  }
  const std::uint64_t end = std::uint64_t{1} << width;
  for (std::uint64_t v = (std::uint64_t{1} << k) - 1; v < end; v = next_combination(v)) f(v);
}

// Work items: for feasible_only, the highest set bit h of the label; the
// labels in item h are (1 << h) | (k-1 ones below h).
void scan_item(int item, int sites, const LabelScore& score, int m, SearchMode mode,
               Collector& out) {
  if (mode == SearchMode::all) {
    // item i covers labels [i * chunk, (i+1) * chunk)
    const int chunk_bits = std::max(0, sites - 8);
    const std::uint64_t lo = std::uint64_t(item) << chunk_bits;
    const std::uint64_t hi = lo + (std::uint64_t{1} << chunk_bits);
    for (std::uint64_t v = lo; v < hi; ++v) out.offer(v, score(v));
    return;
  }
  if (m == 0) {
    out.offer(0, score(0));
    return;
  }
  const std::uint64_t top = std::uint64_t{1} << item;
  for_each_combination(item, m - 1, [&](std::uint64_t low) { out.offer(top | low, score(top | low)); });
}

int item_count(int sites, int m, SearchMode mode) {
  if (mode == SearchMode::all) return 1 << std::min(sites, 8);
  return m == 0 ? 1 : sites;
}

int item_index(int k, int m, SearchMode mode) {
  // highest bit must be at least m-1
  return mode == SearchMode::feasible_only && m > 0 && k < m - 1 ? -1 : k;
}

}  // namespace

ExhaustiveResult exhaustive_minimize(int sites, const LabelScore& score, int m, SearchMode mode,
                                     Backend backend) {
  if (sites < 0 || sites > kMaxExhaustiveSites) {
    throw std::invalid_argument("exhaustive search is limited to 24 sites");
  }
  if (mode == SearchMode::feasible_only && (m < 0 || m > sites)) {
    throw std::invalid_argument("turbine count outside 0..q");
  }

  const int items = item_count(sites, m, mode);
  Collector total;
  if (backend == Backend::serial) {
    for (int k = 0; k < items; ++k) {
      if (item_index(k, m, mode) >= 0) scan_item(k, sites, score, m, mode, total);
    }
  } else {
    std::vector<Collector> parts(static_cast<std::size_t>(items));
#pragma omp parallel for schedule(dynamic, 1)
    for (int k = 0; k < items; ++k) {
      if (item_index(k, m, mode) >= 0) scan_item(k, sites, score, m, mode, parts[std::size_t(k)]);
    }
    for (const Collector& p : parts) total.merge(p);
  }

  std::sort(total.ties.begin(), total.ties.end());
  ExhaustiveResult result;
  result.optimum = total.best;
  result.visited = total.visited;
  result.optimal.reserve(total.ties.size());
  for (const auto& [label, value] : total.ties) result.optimal.push_back(Layout::from_label(label, sites));
  return result;
}

ExhaustiveResult exhaustive_search(const QuboProblem& problem, int m, SearchMode mode,
                                   Backend backend) {
  return exhaustive_minimize(
      problem.size(), [&](std::uint64_t label) { return evaluate_qubo(problem, label); }, m, mode,
      backend);
}

ExhaustiveResult exhaustive_power(const WindFarmModel& model, int m, SearchMode mode,
                                  Backend backend) {
  const WakeInteractions wakes(model);
  const int q = wakes.sites();
  auto negative_power = [&](std::uint64_t label) {
    double f = 0.0;
    for (int i = 0; i < q; ++i) {
      if (!((label >> (q - 1 - i)) & 1u)) continue;
      f += wakes.free_power();
      for (int j = 0; j < q; ++j) {
        if ((label >> (q - 1 - j)) & 1u) f -= wakes.deficit(i, j);
      }
    }
    return -f;
  };
  ExhaustiveResult r = exhaustive_minimize(q, negative_power, m, mode, backend);
  r.optimum = -r.optimum;
  return r;
}

}  // namespace wflo::optim
