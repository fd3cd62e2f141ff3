#ifndef WFLO_VQE_HPP_
#define WFLO_VQE_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "wflo/grid.hpp"
#include "wflo/kernels.hpp"
#include "wflo/pauli.hpp"
#include "wflo/rng.hpp"

namespace wflo {

inline constexpr int kMaxSimulatedQubits = 24;

// Layered hardware-efficient circuit acting on |0...0>.
//
// Layer l applies one rotation per qubit about layer_axes[l % size]
// (qubit k gets parameter l*q + k), then, if `entangle`, the CNOT chain
// 1->2, 2->3, ..., (q-1)->q. The default axis cycle alternates Y and X
// layers.
struct AnsatzSpec {
  int num_qubits = 1;
  int num_layers = 1;
  std::vector<RotationAxis> layer_axes{RotationAxis::y, RotationAxis::x};
  bool entangle = true;

  // q qubits, q layers.
  static AnsatzSpec standard(int num_qubits) {
    AnsatzSpec s;
    s.num_qubits = num_qubits;
    s.num_layers = num_qubits;
    return s;
  }

  int parameter_count() const { return num_qubits * num_layers; }
  RotationAxis axis_of_layer(int layer) const {
    return layer_axes[std::size_t(layer) % layer_axes.size()];
  }
  void validate() const;
};

class Statevector {
 public:
  explicit Statevector(int num_qubits);  // |0...0>
  Statevector(int num_qubits, std::vector<Amplitude> amplitudes);

  int num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return amps_.size(); }
  std::span<const Amplitude> amplitudes() const { return amps_; }
  std::span<Amplitude> amplitudes() { return amps_; }
  const Amplitude& operator[](std::size_t i) const { return amps_[i]; }

  double norm() const;
  std::vector<double> probabilities(Backend backend = Backend::parallel) const;

 private:
  int num_qubits_;
  std::vector<Amplitude> amps_;
};

// U(theta)|0...0>. Angles are reduced modulo 2 pi before use.
Statevector apply_ansatz(const AnsatzSpec& spec, std::span<const double> theta,
                         Backend backend = Backend::parallel);

struct ShotResult {
  int num_qubits = 0;
  std::map<std::uint64_t, std::uint64_t> counts;  // label -> observations
  std::uint64_t shots = 0;
};

ShotResult sample_shots(std::span<const double> probabilities, std::uint64_t shots, Rng& rng);
ShotResult sample_shots(const Statevector& state, std::uint64_t shots, std::uint64_t seed);

// Mean of the ceil(alpha K) lowest of K energies.
double cvar_estimate(std::span<const double> energies, double alpha);

// Probability-weighted counterpart: mean energy of the lowest alpha of the
// probability mass, the boundary state weighted fractionally.
double exact_cvar(std::span<const double> probabilities, std::span<const double> energies,
                  double alpha);

struct ExpectationMode {
  enum class Kind { exact, exact_cvar, sampled };
  Kind kind = Kind::exact;
  double alpha = 1.0;
  std::uint64_t shots = 1024;
  std::uint64_t seed = 0;

  static ExpectationMode exact() { return {}; }
  static ExpectationMode exact_cvar_mode(double alpha) { return {Kind::exact_cvar, alpha, 0, 0}; }
  static ExpectationMode sampled(std::uint64_t shots, double alpha, std::uint64_t seed) {
    return {Kind::sampled, alpha, shots, seed};
  }
};

// `energies` is the Hamiltonian diagonal (see diagonal_energies). Sampled
// mode draws from an Rng seeded with mode.seed.
double expectation(const Statevector& state, std::span<const double> energies,
                   const ExpectationMode& mode);
double expectation(const Statevector& state, const DiagonalHamiltonian& h,
                   const ExpectationMode& mode);

// Variational objective theta -> estimated energy. In sampled mode the
// shot stream continues across calls, so a given seed reproduces the
// whole optimisation trace.
class VqeEnergy {
 public:
  VqeEnergy(AnsatzSpec spec, std::vector<double> diagonal, ExpectationMode mode,
            Backend backend = Backend::parallel);

  double operator()(std::span<const double> theta);

  Statevector state(std::span<const double> theta) const;
  ShotResult measure(std::span<const double> theta);  // mode.shots draws

  const AnsatzSpec& spec() const { return spec_; }
  std::span<const double> diagonal() const { return diagonal_; }

 private:
  AnsatzSpec spec_;
  std::vector<double> diagonal_;
  ExpectationMode mode_;
  Backend backend_;
  Rng rng_;
};

// Highest-weight basis label with exactly m ones; ties go to the lower
// label. Empty when no such label was observed.
std::optional<Layout> select_solution(const ShotResult& shots, int m);
std::optional<Layout> select_solution(const Statevector& state, int m);

// Real Jacobian of the circuit output: column k is (Re d_k psi; Im d_k psi),
// shape 2^(q+1) x parameter_count.
Eigen::MatrixXd dea_jacobian(const AnsatzSpec& spec, std::span<const double> theta);

struct ParameterVerdict {
  int index = 0;  // 0-based parameter index
  bool independent = false;
  double eigen_ratio = 0.0;  // smallest / largest eigenvalue of S_k
};

inline constexpr double kDeaRankTolerance = 1e-10;

// Sequential rank test. Parameter k is independent iff S = J^T J built from
// the columns already judged independent plus column k has smallest
// eigenvalue > 1e-10 * largest. Redundant columns are dropped before the
// next parameter is tested, so one redundancy does not taint later ones.
std::vector<ParameterVerdict> dea_check(const AnsatzSpec& spec, std::span<const double> theta);

}  // namespace wflo

#endif  // WFLO_VQE_HPP_
