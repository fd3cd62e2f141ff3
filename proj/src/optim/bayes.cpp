#include "wflo/optim/bayes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wflo/rng.hpp"

namespace wflo::optim {

void KernelParams::validate() const {
  if (!(sigma > 0.0) || !(length > 0.0) || !(period > 0.0)) {
    throw std::invalid_argument("kernel sigma, length and period must be positive");
  }
}

double periodic_kernel(std::span<const double> a, std::span<const double> b,
                       const KernelParams& params) {
  if (a.size() != b.size()) throw std::invalid_argument("kernel arguments differ in dimension");
  const double scale = -2.0 / (params.length * params.length);
  double exponent = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = std::abs(a[i] - b[i]);
    const double arg = params.form == KernelForm::as_printed
                           ? std::numbers::pi * d * d / params.period
                           : std::numbers::pi * d / params.period;
    const double s = std::sin(arg);
    exponent += scale * s * s;
  }
  return params.sigma * params.sigma * std::exp(exponent);
}

GpModel::GpModel(KernelParams kernel, double noise_variance)
    : kernel_(kernel), noise_(noise_variance) {
  kernel_.validate();
  if (!(noise_ >= 0.0) || !std::isfinite(noise_)) {
    throw std::invalid_argument("noise variance must be finite and >= 0");
  }
}

void GpModel::add(std::span<const double> theta, double value) {
  if (!points_.empty() && theta.size() != points_.front().size()) {
    throw std::invalid_argument("training point dimension mismatch");
  }
  points_.emplace_back(theta.begin(), theta.end());
  values_.push_back(value);
  fitted_ = false;
}

void GpModel::fit() {
  if (values_.empty()) throw std::logic_error("GP fit needs at least one training point");
  const auto n = static_cast<Eigen::Index>(values_.size());
  Eigen::MatrixXd k(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      k(i, j) = k(j, i) = periodic_kernel(points_[i], points_[j], kernel_);
    }
  }
  const double s2 = kernel_.sigma * kernel_.sigma;
  k.diagonal().array() += noise_;

  jitter_ = 0.0;
  chol_.compute(k);
  for (int e = -12; chol_.info() != Eigen::Success; ++e) {
    if (e > -4) {
      throw KernelNotPositiveDefinite(
          "kernel matrix not positive definite even with jitter 1e-4 sigma^2");
    }
    jitter_ = std::pow(10.0, e) * s2;
    Eigen::MatrixXd kj = k;
    kj.diagonal().array() += jitter_;
    chol_.compute(kj);
  }

  prior_mean_ = 0.0;
  for (double v : values_) prior_mean_ += v;
  prior_mean_ /= double(n);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) y[i] = values_[std::size_t(i)] - prior_mean_;
  weights_ = chol_.solve(y);
  fitted_ = true;
}

GpPrediction GpModel::predict(std::span<const double> theta) const {
  if (!fitted_) throw std::logic_error("GP predict before fit");
  const auto n = static_cast<Eigen::Index>(values_.size());
  Eigen::VectorXd ks(n);
  for (Eigen::Index i = 0; i < n; ++i) ks[i] = periodic_kernel(theta, points_[i], kernel_);
  const double mean = prior_mean_ + ks.dot(weights_);
  // k*^T K^-1 k* = |L^-1 k*|^2
  const Eigen::VectorXd v = chol_.matrixL().solve(ks);
  const double var = kernel_.sigma * kernel_.sigma - v.squaredNorm();
  return {mean, std::sqrt(std::max(var, 0.0))};
}

double expected_improvement(double mean, double std, double e_min) {
  const double gap = e_min - mean;
  if (!(std > 0.0)) return std::max(0.0, gap);
  const double z = gap / std;
  const double cdf = 0.5 * std::erfc(-z / std::numbers::sqrt2);
  const double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
  return std::max(0.0, gap * cdf + std * pdf);
}

double expected_improvement(const GpModel& model, std::span<const double> theta, double e_min) {
  const GpPrediction p = model.predict(theta);
  return expected_improvement(p.mean, p.std, e_min);
}

OptimizeResult bo_minimize(ObjectiveHandle& objective, std::size_t dimension,
                           const BoOptions& options, std::uint64_t seed) {
  options.kernel.validate();
  if (options.initial_points == 0) throw std::invalid_argument("BO needs initial_points >= 1");
  if (options.budget < options.initial_points) {
    throw std::invalid_argument("BO budget is smaller than the initial design");
  }

  Rng rng(seed);
  std::vector<std::vector<double>> xs;
  std::vector<double> ys;
  auto observe = [&](std::vector<double> theta) {
    ys.push_back(objective(theta));
    xs.push_back(std::move(theta));
  };
  auto random_point = [&] {
    std::vector<double> t(dimension);
    for (double& v : t) v = uniform_angle(rng);
    return t;
  };

  const std::size_t repeats = std::min(options.noise_repeats, options.budget - options.initial_points);
  const std::vector<double> first = random_point();
  observe(first);
  for (std::size_t r = 0; r < repeats; ++r) observe(first);
  double noise_raw = 0.0;
  if (repeats > 0) {
    double mu = 0.0;
    for (std::size_t r = 0; r <= repeats; ++r) mu += ys[r];
    mu /= double(repeats + 1);
    for (std::size_t r = 0; r <= repeats; ++r) noise_raw += (ys[r] - mu) * (ys[r] - mu);
    noise_raw /= double(repeats);
  }
  for (std::size_t i = 1; i < options.initial_points; ++i) observe(random_point());

  std::size_t steps = 0;
  while (ys.size() < options.budget) {
    ++steps;
    double mu = 0.0;
    for (double y : ys) mu += y;
    mu /= double(ys.size());
    double var = 0.0;
    for (double y : ys) var += (y - mu) * (y - mu);
    var /= double(ys.size());
    const double scale = var > 0.0 ? std::sqrt(var) : 1.0;

    GpModel gp(options.kernel, noise_raw / (scale * scale));
    double e_min = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < ys.size(); ++i) {
      const double z = (ys[i] - mu) / scale;
      gp.add(xs[i], z);
      e_min = std::min(e_min, z);
    }
    gp.fit();

    std::vector<double> best_theta;
    double best_neg_ei = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < std::max<std::size_t>(1, options.acquisition_starts); ++s) {
      ObjectiveHandle acq([&](std::span<const double> t) {
        return -expected_improvement(gp, t, e_min);
      });
      const std::vector<double> start = random_point();
      const OptimizeResult r = cobyla_minimize(acq, start, options.acquisition);
      if (r.value_best < best_neg_ei) {
        best_neg_ei = r.value_best;
        best_theta = r.theta_best;
      }
    }
    observe(best_theta);
  }
  return result_from(objective, steps, false);
}

}  // namespace wflo::optim
