#ifndef WFLO_PAULI_HPP_
#define WFLO_PAULI_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "wflo/qubo.hpp"

namespace wflo {

// h * prod_{k in mask} Z_k. Bit b of `z_mask` addresses the same bit of a
// basis label, so qubit for site i (0-based) sits at bit q-1-i.
struct PauliTerm {
  double coefficient = 0.0;
  std::uint64_t z_mask = 0;
  bool operator==(const PauliTerm&) const = default;
};

class DiagonalHamiltonian {
 public:
  DiagonalHamiltonian(int num_qubits, std::vector<PauliTerm> terms);

  int num_qubits() const { return num_qubits_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }

 private:
  int num_qubits_;
  std::vector<PauliTerm> terms_;
};

// Substitutes x_i = (1 - z_i) / 2, so label bit 1 <=> x_i = 1 <=> Z
// eigenvalue -1. Terms are ordered identity, single Z (by site), then ZZ
// pairs (row-major); coefficients with |h| < 1e-15 are dropped.
DiagonalHamiltonian qubo_to_hamiltonian(const QuboProblem& problem);

// Same, without the pruning step. Used to check the raw term count.
DiagonalHamiltonian qubo_to_hamiltonian_unpruned(const QuboProblem& problem);

double basis_energy(const DiagonalHamiltonian& h, std::uint64_t label);

// All 2^q diagonal entries, computed with the OpenMP kernel.
std::vector<double> diagonal_energies(const DiagonalHamiltonian& h);

}  // namespace wflo

#endif  // WFLO_PAULI_HPP_
