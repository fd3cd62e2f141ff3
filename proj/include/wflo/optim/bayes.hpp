#ifndef WFLO_OPTIM_BAYES_HPP_
#define WFLO_OPTIM_BAYES_HPP_

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "wflo/optim/cobyla.hpp"
#include "wflo/optim/objective.hpp"

namespace wflo::optim {

// standard:   sin^2(pi |d| / p).
// as_printed: sin^2(pi |d|^2 / p), the square taken inside the sine. This
// is not a positive semi-definite function (in one dimension random
// designs routinely give Gram eigenvalues near -sigma^2), so a GP fit with
// it usually ends in KernelNotPositiveDefinite. Kept for comparison.
enum class KernelForm { standard, as_printed };

struct KernelParams {
  double sigma = 1.0;
  double length = 1.0;
  double period = 2.0 * std::numbers::pi;
  KernelForm form = KernelForm::standard;

  void validate() const;
};

// sigma^2 prod_i exp(-2/l^2 sin^2(...)) over the coordinates.
double periodic_kernel(std::span<const double> a, std::span<const double> b,
                       const KernelParams& params);

class KernelNotPositiveDefinite : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GpPrediction {
  double mean = 0.0;
  double std = 0.0;  // of the latent function, noise excluded
};

// GP regression with a constant prior mean equal to the average training
// value. fit() factors K + noise I; if that is not positive definite a
// diagonal jitter is added, growing by decades from 1e-12 sigma^2 to
// 1e-4 sigma^2, before giving up with KernelNotPositiveDefinite.
class GpModel {
 public:
  explicit GpModel(KernelParams kernel = {}, double noise_variance = 0.0);

  void add(std::span<const double> theta, double value);
  void fit();
  GpPrediction predict(std::span<const double> theta) const;

  std::size_t size() const { return values_.size(); }
  const KernelParams& kernel() const { return kernel_; }
  double noise_variance() const { return noise_; }
  double jitter() const { return jitter_; }  // used by the last fit

 private:
  KernelParams kernel_;
  double noise_;
  std::vector<std::vector<double>> points_;
  std::vector<double> values_;

  bool fitted_ = false;
  double prior_mean_ = 0.0;
  double jitter_ = 0.0;
  Eigen::LLT<Eigen::MatrixXd> chol_;
  Eigen::VectorXd weights_;  // (K + noise I)^-1 (y - prior mean)
};

// Closed-form EI for minimisation; max(0, e_min - mean) when std == 0.
double expected_improvement(double mean, double std, double e_min);
double expected_improvement(const GpModel& model, std::span<const double> theta, double e_min);

struct BoOptions {
  std::size_t budget = 200;         // total objective evaluations
  std::size_t initial_points = 10;  // uniform random design in [0, 2 pi)^d
  // Extra evaluations at the first design point; their sample variance is
  // the GP noise. Taken from the budget, skipped when it has no room.
  std::size_t noise_repeats = 3;
  std::size_t acquisition_starts = 8;
  KernelParams kernel;
  CobylaOptions acquisition{0.5, 1e-4, 100};
};

// Observations are standardised (zero mean, unit variance) before each fit.
OptimizeResult bo_minimize(ObjectiveHandle& objective, std::size_t dimension,
                           const BoOptions& options, std::uint64_t seed);

}  // namespace wflo::optim

#endif  // WFLO_OPTIM_BAYES_HPP_
