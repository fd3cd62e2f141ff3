#include "wflo/optim/objective.hpp"

#include <cmath>
#include <sstream>

namespace wflo::optim {

ObjectiveHandle::ObjectiveHandle(Function f)
    : f_(std::move(f)), start_(std::chrono::steady_clock::now()) {}

double ObjectiveHandle::operator()(std::span<const double> theta) {
  const double value = f_(theta);
  if (!std::isfinite(value)) {
    std::ostringstream msg;
    msg << "objective returned " << value << " at evaluation " << history_.size() + 1 << " (theta =";
    for (double t : theta) msg << ' ' << t;
    msg << ')';
    throw NonFiniteObjective(msg.str());
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  history_.push_back({history_.size() + 1, {theta.begin(), theta.end()}, value, elapsed});
  if (value < history_[best_].value) best_ = history_.size() - 1;
  return value;
}

const HistoryEntry& ObjectiveHandle::best() const {
  if (history_.empty()) throw std::logic_error("no evaluations recorded");
  return history_[best_];
}

OptimizeResult result_from(const ObjectiveHandle& objective, std::size_t iterations,
                           bool converged) {
  const HistoryEntry& b = objective.best();
  return {b.theta, b.value, objective.evaluation_count(), iterations, converged};
}

}  // namespace wflo::optim
