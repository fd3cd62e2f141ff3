#ifndef WFLO_OPTIM_OBJECTIVE_HPP_
#define WFLO_OPTIM_OBJECTIVE_HPP_

#include <chrono>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace wflo::optim {

struct HistoryEntry {
  std::size_t iteration = 0;  // 1-based evaluation number
  std::vector<double> theta;
  double value = 0.0;
  double wall_seconds = 0.0;  // since the handle was created
};

// Thrown when the objective returns NaN or infinity.
class NonFiniteObjective : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Counting, recording wrapper around a (possibly stochastic) objective.
// Every call is appended to the history exactly once.
class ObjectiveHandle {
 public:
  using Function = std::function<double(std::span<const double>)>;

  explicit ObjectiveHandle(Function f);

  double operator()(std::span<const double> theta);

  std::size_t evaluation_count() const { return history_.size(); }
  const std::vector<HistoryEntry>& history() const { return history_; }

  // Lowest recorded value; requires at least one evaluation.
  const HistoryEntry& best() const;

 private:
  Function f_;
  std::vector<HistoryEntry> history_;
  std::size_t best_ = 0;
  std::chrono::steady_clock::time_point start_;
};

struct OptimizeResult {
  std::vector<double> theta_best;
  double value_best = 0.0;
  std::size_t evaluations = 0;
  std::size_t iterations = 0;  // optimiser-specific outer iterations
  bool converged = false;      // tolerance reached rather than budget
};

// Fills the result from the best recorded evaluation.
OptimizeResult result_from(const ObjectiveHandle& objective, std::size_t iterations,
                           bool converged);

}  // namespace wflo::optim

#endif  // WFLO_OPTIM_OBJECTIVE_HPP_
