#ifndef WFLO_HARNESS_EXPERIMENT_HPP_
#define WFLO_HARNESS_EXPERIMENT_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "wflo/grid.hpp"
#include "wflo/kernels.hpp"
#include "wflo/optim/bayes.hpp"
#include "wflo/optim/cobyla.hpp"
#include "wflo/optim/powell.hpp"
#include "wflo/qubo.hpp"
#include "wflo/wake_model.hpp"

namespace wflo::harness {

enum class Method { exhaustive, sa, vqe_cobyla, vqe_powell, vqe_bo, vqe_exact };

// "exhaustive", "sa", "vqe-cobyla", "vqe-powell", "vqe-bo", "vqe-exact"
std::string_view method_name(Method m);
Method parse_method(std::string_view name);  // throws std::invalid_argument
bool is_vqe(Method m);

struct ExperimentConfig {
  int l_grid = 4;
  int m = 4;
  double xi = 0.0;
  double lambda1 = 1000.0;
  double lambda2 = 0.0;
  WindRegime regime = mosetti_regime_2();
  WakeParams wake{};

  Method method = Method::vqe_cobyla;
  double cvar_alpha = 1.0;
  std::uint64_t shots = 1024;
  int layers = 0;  // 0 means one layer per qubit
  std::vector<RotationAxis> layer_axes{RotationAxis::y, RotationAxis::x};
  int num_runs = 36;
  std::uint64_t master_seed = 0;
  int workers = 0;  // concurrent runs; 0 = OpenMP default

  optim::CobylaOptions cobyla{};
  optim::PowellOptions powell{};
  optim::BoOptions bo{};
  int sa_sweeps = 1000;

  // Wall-clock fields are written as 0 unless enabled, so that repeated
  // runs give byte-identical output.
  bool record_timing = false;
  Backend backend = Backend::parallel;

  // Throws std::invalid_argument naming the first offending field.
  void validate() const;

  WindFarmModel model() const;
  // build_q plus lambda2 on every pair closer than xi.
  QuboProblem problem() const;
};

// Every key is optional; absent keys keep the defaults above.
ExperimentConfig config_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const ExperimentConfig& config);

struct HistoryPoint {
  std::size_t iteration = 0;
  double value = 0.0;
  double wall_seconds = 0.0;
};

struct RunRecord {
  int run_index = 0;
  std::uint64_t seed = 0;
  Method method = Method::vqe_cobyla;
  double alpha = 1.0;
  std::optional<Layout> layout;  // empty when no valid layout was selected
  double power_kw = 0.0;         // objective_f(layout), 0 without a layout
  double final_value = 0.0;      // best objective value seen by the solver
  std::size_t evaluations = 0;
  std::vector<HistoryPoint> history;
  double wall_time_seconds = 0.0;
  std::string error;  // non-empty if the run threw

  bool success() const { return layout.has_value(); }
};

// One seeded run; the seed is split_seed(master_seed, run_index).
RunRecord run_single(const ExperimentConfig& config, int run_index);

// num_runs independent runs, executed concurrently, sorted by run_index.
// A run that throws is recorded with its error and no layout.
std::vector<RunRecord> run_experiment(const ExperimentConfig& config);

}  // namespace wflo::harness

#endif  // WFLO_HARNESS_EXPERIMENT_HPP_
