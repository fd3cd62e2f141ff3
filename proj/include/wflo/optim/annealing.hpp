#ifndef WFLO_OPTIM_ANNEALING_HPP_
#define WFLO_OPTIM_ANNEALING_HPP_

#include <cstdint>
#include <vector>

#include "wflo/grid.hpp"
#include "wflo/qubo.hpp"

namespace wflo::optim {

struct SaSchedule {
  int sweeps = 1000;
  double beta_initial = 0.0;
  double beta_final = 0.0;
  int moves_per_sweep = 0;  // 0 means one flip attempt per variable

  // 1000 sweeps, beta from 0.1 / max|Q| to 10 / min nonzero |Q|.
  static SaSchedule defaults_for(const QuboProblem& problem);

  void validate() const;
  // Inverse temperature of sweep s, geometric between the two ends.
  double beta_at(int sweep) const;
};

struct SaResult {
  Layout best;
  double value = 0.0;
  std::vector<double> trace;  // best-so-far after each sweep
};

// Metropolis single-bit-flip chain from a uniformly random start. Flip
// attempts visit the variables in index order, wrapping around.
SaResult simulated_annealing(const QuboProblem& problem, const SaSchedule& schedule,
                             std::uint64_t seed);

}  // namespace wflo::optim

#endif  // WFLO_OPTIM_ANNEALING_HPP_
