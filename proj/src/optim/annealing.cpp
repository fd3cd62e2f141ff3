#include "wflo/optim/annealing.hpp"

#include <cmath>
#include <stdexcept>

#include "wflo/rng.hpp"

namespace wflo::optim {

SaSchedule SaSchedule::defaults_for(const QuboProblem& problem) {
  SaSchedule s;
  const double hi = problem.max_abs();
  const double lo = problem.min_abs_nonzero();
  if (!(hi > 0.0)) {
    // all-zero Q: every layout is optimal, any positive range will do
    s.beta_initial = s.beta_final = 1.0;
    return s;
  }
  s.beta_initial = 0.1 / hi;
  s.beta_final = 10.0 / lo;
  return s;
}

void SaSchedule::validate() const {
  if (sweeps < 0) throw std::invalid_argument("SA sweeps must be >= 0");
  if (moves_per_sweep < 0) throw std::invalid_argument("SA moves per sweep must be >= 0");
  if (!(beta_initial > 0.0) || !(beta_final >= beta_initial) || !std::isfinite(beta_final)) {
    throw std::invalid_argument("SA needs 0 < beta_initial <= beta_final");
  }
}

double SaSchedule::beta_at(int sweep) const {
  if (sweeps <= 1) return beta_initial;
  const double frac = double(sweep) / double(sweeps - 1);
  return beta_initial * std::pow(beta_final / beta_initial, frac);
}

SaResult simulated_annealing(const QuboProblem& problem, const SaSchedule& schedule,
                             std::uint64_t seed) {
  schedule.validate();
  const int q = problem.size();
  if (q == 0) return {Layout(0), 0.0, std::vector<double>(std::size_t(schedule.sweeps), 0.0)};

  // dense symmetric coupling, diagonal kept separately
  std::vector<double> c(std::size_t(q) * q, 0.0);
  std::vector<double> diag(q);
  for (int i = 0; i < q; ++i) {
    diag[i] = problem.at(i, i);
    for (int j = i + 1; j < q; ++j) c[std::size_t(i) * q + j] = c[std::size_t(j) * q + i] = problem.at(i, j);
  }

  Rng rng(seed);
  Layout x(static_cast<std::size_t>(q));
  for (int i = 0; i < q; ++i) x.set(i, (rng() >> 63) != 0);

  // field[i] = change in energy when x_i goes 0 -> 1
  std::vector<double> field(diag);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j)
      if (x.occupied(j)) field[i] += c[std::size_t(i) * q + j];

  double energy = evaluate_qubo(problem, x);
  SaResult result{x, energy, {}};
  result.trace.reserve(std::size_t(schedule.sweeps));

  const int moves = schedule.moves_per_sweep > 0 ? schedule.moves_per_sweep : q;
  int site = 0;
  for (int s = 0; s < schedule.sweeps; ++s) {
    const double beta = schedule.beta_at(s);
    for (int k = 0; k < moves; ++k, site = (site + 1) % q) {
      const bool on = x.occupied(site);
      const double delta = on ? -field[site] : field[site];
      if (delta > 0.0 && uniform01(rng) >= std::exp(-beta * delta)) continue;
      x.flip(site);
      energy += delta;
      const double sign = on ? -1.0 : 1.0;
      const double* row = &c[std::size_t(site) * q];
      for (int j = 0; j < q; ++j) field[j] += sign * row[j];
      if (energy < result.value) {
        result.value = energy;
        result.best = x;
      }
    }
    result.trace.push_back(result.value);
  }
  // recompute to shed accumulated rounding in the running energy
  result.value = evaluate_qubo(problem, result.best);
  return result;
}

}  // namespace wflo::optim
