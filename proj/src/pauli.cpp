#include "wflo/pauli.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "wflo/kernels.hpp"

namespace wflo {

namespace {

constexpr double kPruneBelow = 1e-15;

std::vector<PauliTerm> expand(const QuboProblem& problem) {
  const int q = problem.size();
  auto bit = [q](int i) { return std::uint64_t{1} << (q - 1 - i); };

  // Q_ii x_i         = Q_ii/2 (1 - z_i)
  // Q_ij x_i x_j     = Q_ij/4 (1 - z_i - z_j + z_i z_j)
  double identity = 0.0;
  std::vector<double> single(q, 0.0);
  std::vector<PauliTerm> pairs;
  for (int i = 0; i < q; ++i) {
    const double d = problem.at(i, i);
    identity += d / 2.0;
    single[i] -= d / 2.0;
    for (int j = i + 1; j < q; ++j) {
      const double c = problem.at(i, j);
      identity += c / 4.0;
      single[i] -= c / 4.0;
      single[j] -= c / 4.0;
      pairs.push_back({c / 4.0, bit(i) | bit(j)});
    }
  }

  std::vector<PauliTerm> terms;
  terms.reserve(1 + q + pairs.size());
  terms.push_back({identity, 0});
  for (int i = 0; i < q; ++i) terms.push_back({single[i], bit(i)});
  terms.insert(terms.end(), pairs.begin(), pairs.end());
  return terms;
}

}  // namespace

DiagonalHamiltonian::DiagonalHamiltonian(int num_qubits, std::vector<PauliTerm> terms)
    : num_qubits_(num_qubits), terms_(std::move(terms)) {
  if (num_qubits < 0 || num_qubits > 63) throw std::invalid_argument("unsupported qubit count");
  const std::uint64_t limit = std::uint64_t{1} << num_qubits;
  for (const auto& t : terms_) {
    if (t.z_mask >= limit) throw std::invalid_argument("Pauli term acts outside register");
  }
}

DiagonalHamiltonian qubo_to_hamiltonian_unpruned(const QuboProblem& problem) {
  return DiagonalHamiltonian(problem.size(), expand(problem));
}

DiagonalHamiltonian qubo_to_hamiltonian(const QuboProblem& problem) {
  std::vector<PauliTerm> kept;
  for (const auto& t : expand(problem)) {
    if (std::abs(t.coefficient) >= kPruneBelow) kept.push_back(t);
  }
  return DiagonalHamiltonian(problem.size(), std::move(kept));
}

double basis_energy(const DiagonalHamiltonian& h, std::uint64_t label) {
  double e = 0.0;
  for (const auto& t : h.terms()) {
    e += (std::popcount(t.z_mask & label) & 1) ? -t.coefficient : t.coefficient;
  }
  return e;
}

std::vector<double> diagonal_energies(const DiagonalHamiltonian& h) {
  std::vector<double> out(std::size_t{1} << h.num_qubits());
  kernels::parallel::diagonal_energies(h.terms(), out);
  return out;
}

}  // namespace wflo
