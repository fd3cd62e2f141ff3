#include "wflo/optim/cobyla.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace wflo::optim {

namespace {

// Powell's simplex acceptability constants.
constexpr double kMinDistance = 0.25;  // vertex must be >= 0.25 rho from opposite face
constexpr double kMaxEdge = 2.1;       // and <= 2.1 rho from the pole
constexpr double kGeometryStep = 0.5;
constexpr double kReplaceEdge = 1.1;
constexpr double kAcceptRatio = 0.1;
constexpr double kExpandRatio = 0.7;
constexpr double kMaxRadiusFactor = 4.0;  // trust radius cap, in units of rho_begin

class BudgetExhausted {};

}  // namespace

OptimizeResult cobyla_minimize(ObjectiveHandle& objective, std::span<const double> theta0,
                               const CobylaOptions& options) {
  if (!(options.rho_begin > 0.0) || !(options.rho_end > 0.0) ||
      options.rho_end > options.rho_begin) {
    throw std::invalid_argument("COBYLA needs 0 < rho_end <= rho_begin");
  }
  if (options.max_evals == 0) throw std::invalid_argument("COBYLA needs max_evals >= 1");
  for (double t : theta0) {
    if (!std::isfinite(t)) throw std::invalid_argument("COBYLA start point is not finite");
  }

  const auto n = static_cast<Eigen::Index>(theta0.size());
  const std::size_t first_eval = objective.evaluation_count();
  auto eval = [&](const Eigen::VectorXd& x) {
    if (objective.evaluation_count() - first_eval >= options.max_evals) throw BudgetExhausted{};
    return objective(std::span<const double>(x.data(), std::size_t(x.size())));
  };

  std::size_t iterations = 0;
  bool converged = false;
  try {
    Eigen::VectorXd x0 = Eigen::Map<const Eigen::VectorXd>(theta0.data(), n);
    // rho is the resolution and only decreases; delta is the trust radius
    // and may grow again after very successful steps.
    double rho = options.rho_begin;
    double delta = rho;
    const double delta_max = kMaxRadiusFactor * options.rho_begin;
    double f0 = eval(x0);
    if (n == 0) return result_from(objective, 0, true);

    Eigen::MatrixXd sim = rho * Eigen::MatrixXd::Identity(n, n);  // columns: vertex offsets
    Eigen::VectorXd fv(n);
    for (Eigen::Index j = 0; j < n; ++j) fv[j] = eval(x0 + sim.col(j));
    Eigen::MatrixXd simi = sim.inverse();  // rows: dual basis

    auto replace_vertex = [&](Eigen::Index l, const Eigen::VectorXd& d, double value) {
      sim.col(l) = d;
      fv[l] = value;
      simi.row(l) /= simi.row(l).dot(d);
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j != l) simi.row(j) -= simi.row(j).dot(d) * simi.row(l);
      }
    };

    bool reduce_pending = false;
    for (;;) {
      ++iterations;
      if (iterations % std::size_t(4 * n + 16) == 0) simi = sim.inverse();

      // keep the best point as the pole
      Eigen::Index jbest;
      if (fv.minCoeff(&jbest) < f0) {
        const Eigen::VectorXd dj = sim.col(jbest);
        x0 += dj;
        for (Eigen::Index k = 0; k < n; ++k) {
          if (k != jbest) sim.col(k) -= dj;
        }
        sim.col(jbest) = -dj;
        simi.row(jbest) = (-simi.colwise().sum()).eval();
        std::swap(f0, fv[jbest]);
      }

      const Eigen::VectorXd g = simi.transpose() * (fv.array() - f0).matrix();

      // simplex geometry
      Eigen::Index jfix = -1;
      {
        Eigen::Index jeta, jsig;
        const double eta = sim.colwise().norm().maxCoeff(&jeta);
        const double sig = 1.0 / simi.rowwise().norm().maxCoeff(&jsig);
        if (eta > kMaxEdge * delta) {
          jfix = jeta;
        } else if (sig < kMinDistance * delta) {
          jfix = jsig;
        }
      }
      if (jfix >= 0) {
        Eigen::VectorXd dx = simi.row(jfix).transpose();
        dx *= kGeometryStep * delta / dx.norm();
        if (g.dot(dx) > 0.0) dx = -dx;
        replace_vertex(jfix, dx, eval(x0 + dx));
        continue;
      }

      if (reduce_pending) {
        reduce_pending = false;
        if (rho <= options.rho_end) {
          converged = true;
          break;
        }
        rho *= 0.5;
        if (rho <= 1.5 * options.rho_end) rho = options.rho_end;
        delta = rho;
        continue;
      }

      const double gnorm = g.norm();
      if (!(gnorm > 0.0)) {
        reduce_pending = true;
        continue;
      }
      const Eigen::VectorXd d = (-delta / gnorm) * g;
      const double predicted = delta * gnorm;
      const double fnew = eval(x0 + d);
      const double actual = f0 - fnew;

      // vertex whose removal keeps the simplex best conditioned
      double weight = actual > 0.0 ? 0.0 : 1.0;
      Eigen::Index drop = -1;
      for (Eigen::Index j = 0; j < n; ++j) {
        double w = std::abs(simi.row(j).dot(d));
        const double dist = (d - sim.col(j)).norm();
        if (dist > kReplaceEdge * delta) w *= std::pow(dist / (kReplaceEdge * delta), 3);
        if (w > weight) {
          weight = w;
          drop = j;
        }
      }
      if (drop >= 0) replace_vertex(drop, d, fnew);

      if (actual >= kExpandRatio * predicted) {
        delta = std::min(2.0 * delta, delta_max);
      } else if (actual < kAcceptRatio * predicted) {
        if (delta > rho) {
          delta = std::max(0.5 * delta, rho);
        } else {
          reduce_pending = true;
        }
      }
    }
  } catch (const BudgetExhausted&) {
  }
  return result_from(objective, iterations, converged);
}

}  // namespace wflo::optim
