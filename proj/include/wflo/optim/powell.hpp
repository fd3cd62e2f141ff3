#ifndef WFLO_OPTIM_POWELL_HPP_
#define WFLO_OPTIM_POWELL_HPP_

#include <cstddef>
#include <span>

#include "wflo/optim/objective.hpp"

namespace wflo::optim {

struct PowellOptions {
  double initial_step = 0.5;  // bracketing step of each line search
  double ftol = 1e-10;        // relative decrease per sweep below which we stop
  double line_tol = 1e-8;     // relative tolerance of the Brent line search
  std::size_t max_evals = 5000;
};

// Powell's conjugate-direction method: line minimisations along a
// direction set that is updated with the net displacement of each sweep.
// `iterations` in the result counts direction sweeps.
OptimizeResult powell_minimize(ObjectiveHandle& objective, std::span<const double> theta0,
                               const PowellOptions& options = {});

}  // namespace wflo::optim

#endif  // WFLO_OPTIM_POWELL_HPP_
