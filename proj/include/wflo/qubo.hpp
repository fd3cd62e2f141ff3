#ifndef WFLO_QUBO_HPP_
#define WFLO_QUBO_HPP_

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "wflo/grid.hpp"
#include "wflo/wake_model.hpp"

namespace wflo {

// Upper-triangular QUBO  min_x sum_{i<=j} Q_ij x_i x_j.
//
// Each unordered pair is stored once at (min, max); entries below the
// diagonal are never read. `constant_offset` is the part of the penalty
// that does not depend on x (lambda1 * m^2), so that
//   evaluate(x) + constant_offset == -f(x) + g(x).
class QuboProblem {
 public:
  QuboProblem() = default;
  explicit QuboProblem(int variables);

  int size() const { return n_; }
  double at(int i, int j) const;
  void set(int i, int j, double value);
  void add(int i, int j, double value) { set(i, j, at(i, j) + value); }

  // Largest |Q_ij| and smallest non-zero |Q_ij| over the upper triangle.
  double max_abs() const;
  double min_abs_nonzero() const;

  double lambda1 = 0.0;
  double lambda2 = 0.0;
  int m = 0;
  double xi = 0.0;
  double constant_offset = 0.0;

 private:
  int n_ = 0;
  std::vector<double> upper_;  // row-major n x n, lower part unused
};

// Power of a layout written as the quadratic form
//   sum_i x_i P_free - sum_{i != j} x_i x_j deficit(i, j).
double objective_f(const Layout& layout, const WakeInteractions& wakes);
double objective_f(const Layout& layout, const WindFarmModel& model);

// lambda1 (sum x - m)^2 + lambda2 * #{pairs i<j : |i-j| < xi, x_i = x_j = 1}.
double penalty_g(const Layout& layout, double lambda1, double lambda2, int m, double xi,
                 const GridGeometry& geometry);

// Weight matrix for -f + lambda1 (sum x - m)^2 (proximity term not
// included, i.e. xi = 0).
QuboProblem build_q(const WindFarmModel& model, double lambda1, int m);

double evaluate_qubo(const QuboProblem& problem, const Layout& layout);
// Same, with the layout given as a basis label (site 1 = highest bit).
double evaluate_qubo(const QuboProblem& problem, std::uint64_t label);

bool is_feasible(const Layout& layout, int m, double xi, const GridGeometry& geometry);

// {"q", "lambda1", "lambda2", "m", "xi", "constant_offset",
//  "upper": [Q_00, Q_01, ..., Q_0(q-1), Q_11, ...]}  (row-major, i <= j)
nlohmann::json to_json(const QuboProblem& problem);
QuboProblem qubo_from_json(const nlohmann::json& doc);

}  // namespace wflo

#endif  // WFLO_QUBO_HPP_
