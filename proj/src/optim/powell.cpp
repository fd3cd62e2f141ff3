#include "wflo/optim/powell.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include <Eigen/Dense>

namespace wflo::optim {

namespace {

constexpr double kGold = 1.618033988749895;
constexpr double kCGold = 0.3819660112501051;  // 2 - golden ratio
constexpr double kTiny = 1e-20;
constexpr int kMaxExpand = 60;
constexpr int kMaxBrent = 200;

class BudgetExhausted {};

struct LineMin {
  double t;
  double f;
};

// Brent minimisation of phi inside the bracket a < b < c with phi(b) known
// to be no larger than the ends.
template <class Phi>
LineMin brent(Phi& phi, double a, double b, double c, double fb, double tol) {
  if (a > c) std::swap(a, c);
  double x = b, w = b, v = b;
  double fx = fb, fw = fb, fv = fb;
  double d = 0.0, e = 0.0;
  for (int it = 0; it < kMaxBrent; ++it) {
    const double xm = 0.5 * (a + c);
    const double tol1 = tol * std::abs(x) + 1e-12;
    const double tol2 = 2.0 * tol1;
    if (std::abs(x - xm) <= tol2 - 0.5 * (c - a)) break;

    bool golden = true;
    if (std::abs(e) > tol1) {
      // parabola through x, w, v
      double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::abs(q);
      const double e_prev = e;
      if (std::abs(p) < std::abs(0.5 * q * e_prev) && p > q * (a - x) && p < q * (c - x)) {
        e = d;
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || c - u < tol2) d = xm >= x ? tol1 : -tol1;
        golden = false;
      }
    }
    if (golden) {
      e = x >= xm ? a - x : c - x;
      d = kCGold * e;
    }
    const double u = std::abs(d) >= tol1 ? x + d : x + (d >= 0.0 ? tol1 : -tol1);
    const double fu = phi(u);
    if (fu <= fx) {
      if (u >= x) a = x; else c = x;
      v = w; fv = fw;
      w = x; fw = fx;
      x = u; fx = fu;
    } else {
      if (u < x) a = u; else c = u;
      if (fu <= fw || w == x) {
        v = w; fv = fw;
        w = u; fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u; fv = fu;
      }
    }
  }
  return {x, fx};
}

// Minimises phi(t) starting from t = 0 where phi(0) = f0.
template <class Phi>
LineMin line_minimize(Phi& phi, double f0, double step, double tol) {
  double a = 0.0, fa = f0;
  double b = step, fb = phi(b);
  if (fb > fa) {
    std::swap(a, b);
    std::swap(fa, fb);
  }
  double c = b + kGold * (b - a);
  double fc = phi(c);
  int expansions = 0;
  while (fb > fc && expansions++ < kMaxExpand) {
    a = b; fa = fb;
    b = c; fb = fc;
    c = b + kGold * (b - a);
    fc = phi(c);
  }
  if (fc < fb) return {c, fc};  // still descending after the expansion cap
  LineMin best = brent(phi, a, b, c, fb, tol);
  if (fa < best.f) best = {a, fa};
  return best;
}

}  // namespace

OptimizeResult powell_minimize(ObjectiveHandle& objective, std::span<const double> theta0,
                               const PowellOptions& options) {
  if (!(options.initial_step > 0.0)) throw std::invalid_argument("Powell needs initial_step > 0");
  if (!(options.ftol >= 0.0) || !(options.line_tol > 0.0)) {
    throw std::invalid_argument("Powell tolerances must be positive");
  }
  if (options.max_evals == 0) throw std::invalid_argument("Powell needs max_evals >= 1");
  for (double t : theta0) {
    if (!std::isfinite(t)) throw std::invalid_argument("Powell start point is not finite");
  }

  const auto n = static_cast<Eigen::Index>(theta0.size());
  const std::size_t first_eval = objective.evaluation_count();
  auto eval = [&](const Eigen::VectorXd& x) {
    if (objective.evaluation_count() - first_eval >= options.max_evals) throw BudgetExhausted{};
    return objective(std::span<const double>(x.data(), std::size_t(x.size())));
  };

  std::size_t sweeps = 0;
  bool converged = false;
  try {
    Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(theta0.data(), n);
    double fx = eval(x);
    if (n == 0) return result_from(objective, 0, true);

    Eigen::MatrixXd dirs = Eigen::MatrixXd::Identity(n, n);
    auto minimize_along = [&](const Eigen::VectorXd& u) {
      auto phi = [&](double t) { return eval(x + t * u); };
      const LineMin lm = line_minimize(phi, fx, options.initial_step, options.line_tol);
      if (lm.f < fx) {
        x += lm.t * u;
        fx = lm.f;
      }
    };

    for (;;) {
      ++sweeps;
      const Eigen::VectorXd x_start = x;
      const double f_start = fx;
      Eigen::Index biggest = 0;
      double biggest_drop = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        const double before = fx;
        minimize_along(dirs.col(i));
        if (before - fx > biggest_drop) {
          biggest_drop = before - fx;
          biggest = i;
        }
      }
      if (2.0 * (f_start - fx) <= options.ftol * (std::abs(f_start) + std::abs(fx)) + kTiny) {
        converged = true;
        break;
      }

      const Eigen::VectorXd shift = x - x_start;
      const double f_ext = eval(x + shift);
      if (f_ext < f_start) {
        const double t1 = f_start - fx - biggest_drop;
        const double t2 = f_start - f_ext;
        const double test = 2.0 * (f_start - 2.0 * fx + f_ext) * t1 * t1 - biggest_drop * t2 * t2;
        const double len = shift.norm();
        if (test < 0.0 && len > 0.0) {
          const Eigen::VectorXd u = shift / len;
          minimize_along(u);
          dirs.col(biggest) = dirs.col(n - 1);
          dirs.col(n - 1) = u;
        }
      }
    }
  } catch (const BudgetExhausted&) {
  }
  return result_from(objective, sweeps, converged);
}

}  // namespace wflo::optim
