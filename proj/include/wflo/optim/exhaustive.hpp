#ifndef WFLO_OPTIM_EXHAUSTIVE_HPP_
#define WFLO_OPTIM_EXHAUSTIVE_HPP_

#include <cstdint>
#include <functional>
#include <vector>

#include "wflo/grid.hpp"
#include "wflo/kernels.hpp"
#include "wflo/qubo.hpp"
#include "wflo/wake_model.hpp"

namespace wflo::optim {

inline constexpr int kMaxExhaustiveSites = 24;

enum class SearchMode { feasible_only, all };

struct ExhaustiveResult {
  double optimum = 0.0;
  std::vector<Layout> optimal;  // ascending label order
  std::uint64_t visited = 0;    // layouts scored
};

// Layouts whose score is within 1e-9 * max(1, |optimum|) of the optimum
// count as optimal. feasible_only enumerates the C(q, m) labels with m ones;
// all enumerates every label. Both reject q > 24.
using LabelScore = std::function<double(std::uint64_t label)>;
ExhaustiveResult exhaustive_minimize(int sites, const LabelScore& score, int m, SearchMode mode,
                                     Backend backend = Backend::parallel);

// Minimum of the QUBO energy.
ExhaustiveResult exhaustive_search(const QuboProblem& problem, int m, SearchMode mode,
                                   Backend backend = Backend::parallel);

// Maximum of the LS power; `optimum` is the power itself.
ExhaustiveResult exhaustive_power(const WindFarmModel& model, int m, SearchMode mode,
                                  Backend backend = Backend::parallel);

}  // namespace wflo::optim

#endif  // WFLO_OPTIM_EXHAUSTIVE_HPP_
