#ifndef WFLO_OPTIM_COBYLA_HPP_
#define WFLO_OPTIM_COBYLA_HPP_

#include <cstddef>
#include <span>

#include "wflo/optim/objective.hpp"

namespace wflo::optim {

struct CobylaOptions {
  double rho_begin = 0.5;  // initial trust radius (and simplex edge)
  double rho_end = 1e-4;   // final trust radius
  std::size_t max_evals = 1000;
};

// Unconstrained COBYLA-style minimiser.
//
// Keeps n+1 interpolation points, fits the linear model through them and
// steps to the edge of the trust region along its negative gradient. When
// the simplex degenerates a geometry step replaces the worst-placed vertex
// instead. The radius halves whenever a step fails to realise a tenth of
// the predicted decrease, down to rho_end.
OptimizeResult cobyla_minimize(ObjectiveHandle& objective, std::span<const double> theta0,
                               const CobylaOptions& options = {});

}  // namespace wflo::optim

#endif  // WFLO_OPTIM_COBYLA_HPP_
