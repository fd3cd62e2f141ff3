#include "wflo/qubo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace wflo {

QuboProblem::QuboProblem(int variables) : n_(variables), upper_(std::size_t(variables) * variables) {
  if (variables < 0) throw std::invalid_argument("negative QUBO size");
}

double QuboProblem::at(int i, int j) const {
  if (i > j) std::swap(i, j);
  return upper_[std::size_t(i) * n_ + j];
}

void QuboProblem::set(int i, int j, double value) {
  if (i > j) std::swap(i, j);
  if (i < 0 || j >= n_) throw std::out_of_range("QUBO index out of range");
  upper_[std::size_t(i) * n_ + j] = value;
}

double QuboProblem::max_abs() const {
  double best = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = i; j < n_; ++j) best = std::max(best, std::abs(at(i, j)));
  return best;
}

double QuboProblem::min_abs_nonzero() const {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_; ++i)
    for (int j = i; j < n_; ++j)
      if (at(i, j) != 0.0) best = std::min(best, std::abs(at(i, j)));
  return std::isfinite(best) ? best : 0.0;
}

double objective_f(const Layout& layout, const WakeInteractions& wakes) {
  if (static_cast<int>(layout.size()) != wakes.sites()) {
    throw std::invalid_argument("layout size does not match wake table");
  }
  const std::vector<int> on = layout.occupied_sites();
  double f = 0.0;
  for (int i : on) {
    f += wakes.free_power();
    for (int j : on) f -= wakes.deficit(i, j);
  }
  return f;
}

double objective_f(const Layout& layout, const WindFarmModel& model) {
  return objective_f(layout, WakeInteractions(model));
}

double penalty_g(const Layout& layout, double lambda1, double lambda2, int m, double xi,
                 const GridGeometry& geometry) {
  if (lambda1 < 0.0 || lambda2 < 0.0) throw std::invalid_argument("penalty weights must be >= 0");
  const double excess = layout.count() - m;
  double g = lambda1 * excess * excess;
  if (lambda2 != 0.0 && xi > 0.0) {
    const std::vector<int> on = layout.occupied_sites();
    for (std::size_t a = 0; a < on.size(); ++a)
      for (std::size_t b = a + 1; b < on.size(); ++b)
        if (geometry.distance(on[a], on[b]) < xi) g += lambda2;
  }
  return g;
}

QuboProblem build_q(const WindFarmModel& model, double lambda1, int m) {
  const WakeInteractions wakes(model);
  const int q = wakes.sites();
  QuboProblem problem(q);
  problem.lambda1 = lambda1;
  problem.m = m;
  problem.constant_offset = lambda1 * double(m) * double(m);
  for (int i = 0; i < q; ++i) {
    problem.set(i, i, -wakes.free_power() + lambda1 * (1.0 - 2.0 * m));
    for (int j = i + 1; j < q; ++j) {
      problem.set(i, j, wakes.deficit(i, j) + wakes.deficit(j, i) + 2.0 * lambda1);
    }
  }
  return problem;
}

double evaluate_qubo(const QuboProblem& problem, const Layout& layout) {
  if (static_cast<int>(layout.size()) != problem.size()) {
    throw std::invalid_argument("layout size does not match QUBO");
  }
  const std::vector<int> on = layout.occupied_sites();
  double e = 0.0;
  for (std::size_t a = 0; a < on.size(); ++a)
    for (std::size_t b = a; b < on.size(); ++b) e += problem.at(on[a], on[b]);
  return e;
}

double evaluate_qubo(const QuboProblem& problem, std::uint64_t label) {
  const int q = problem.size();
  double e = 0.0;
  for (int i = 0; i < q; ++i) {
    if (!((label >> (q - 1 - i)) & 1u)) continue;
    for (int j = i; j < q; ++j) {
      if ((label >> (q - 1 - j)) & 1u) e += problem.at(i, j);
    }
  }
  return e;
}

bool is_feasible(const Layout& layout, int m, double xi, const GridGeometry& geometry) {
  if (layout.count() != m) return false;
  if (xi <= 0.0) return true;
  const std::vector<int> on = layout.occupied_sites();
  for (std::size_t a = 0; a < on.size(); ++a)
    for (std::size_t b = a + 1; b < on.size(); ++b)
      if (geometry.distance(on[a], on[b]) < xi) return false;
  return true;
}

nlohmann::json to_json(const QuboProblem& problem) {
  std::vector<double> upper;
  const int q = problem.size();
  upper.reserve(std::size_t(q) * (q + 1) / 2);
  for (int i = 0; i < q; ++i)
    for (int j = i; j < q; ++j) upper.push_back(problem.at(i, j));
  return {{"q", q},
          {"lambda1", problem.lambda1},
          {"lambda2", problem.lambda2},
          {"m", problem.m},
          {"xi", problem.xi},
          {"constant_offset", problem.constant_offset},
          {"upper", upper}};
}

QuboProblem qubo_from_json(const nlohmann::json& doc) {
  const int q = doc.at("q").get<int>();
  const auto upper = doc.at("upper").get<std::vector<double>>();
  if (upper.size() != std::size_t(q) * (q + 1) / 2) {
    throw std::invalid_argument("QUBO 'upper' has wrong length for q");
  }
  QuboProblem problem(q);
  std::size_t k = 0;
  for (int i = 0; i < q; ++i)
    for (int j = i; j < q; ++j) problem.set(i, j, upper[k++]);
  problem.lambda1 = doc.value("lambda1", 0.0);
  problem.lambda2 = doc.value("lambda2", 0.0);
  problem.m = doc.value("m", 0);
  problem.xi = doc.value("xi", 0.0);
  problem.constant_offset = doc.value("constant_offset", 0.0);
  return problem;
}

}  // namespace wflo
