#include "wflo/vqe.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace wflo {

namespace {

int qubit_bit(int num_qubits, int qubit) { return num_qubits - 1 - qubit; }

double wrap_angle(double theta) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(theta, two_pi);
  return r < 0.0 ? r + two_pi : r;
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("CVaR alpha must lie in (0, 1]");
}

// Runs the circuit; if `derivative` names a parameter, the generator is
// applied right after that rotation.
Statevector run_circuit(const AnsatzSpec& spec, std::span<const double> theta, Backend backend,
                        int derivative = -1) {
  spec.validate();
  if (static_cast<int>(theta.size()) != spec.parameter_count()) {
    throw std::invalid_argument("ansatz expects " + std::to_string(spec.parameter_count()) +
                                " parameters, got " + std::to_string(theta.size()));
  }
  const int q = spec.num_qubits;
  Statevector psi(q);
  auto amps = psi.amplitudes();
  int p = 0;
  for (int layer = 0; layer < spec.num_layers; ++layer) {
    const RotationAxis axis = spec.axis_of_layer(layer);
    for (int k = 0; k < q; ++k, ++p) {
      kernels::apply_rotation(backend, amps, qubit_bit(q, k), axis, wrap_angle(theta[p]));
      if (p == derivative) kernels::apply_generator(backend, amps, qubit_bit(q, k), axis);
    }
    if (spec.entangle) {
      for (int k = 0; k + 1 < q; ++k) {
        kernels::apply_cnot(backend, amps, qubit_bit(q, k), qubit_bit(q, k + 1));
      }
    }
  }
  return psi;
}

}  // namespace

void AnsatzSpec::validate() const {
  if (num_qubits < 1 || num_qubits > kMaxSimulatedQubits) {
    throw std::invalid_argument("ansatz qubit count must lie in 1.." +
                                std::to_string(kMaxSimulatedQubits));
  }
  if (num_layers < 0) throw std::invalid_argument("negative layer count");
  if (layer_axes.empty()) throw std::invalid_argument("ansatz needs at least one rotation axis");
}

Statevector::Statevector(int num_qubits)
    : num_qubits_(num_qubits), amps_(std::size_t{1} << num_qubits) {
  amps_[0] = 1.0;
}

Statevector::Statevector(int num_qubits, std::vector<Amplitude> amplitudes)
    : num_qubits_(num_qubits), amps_(std::move(amplitudes)) {
  if (amps_.size() != (std::size_t{1} << num_qubits)) {
    throw std::invalid_argument("amplitude count must be 2^q");
  }
}

double Statevector::norm() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

std::vector<double> Statevector::probabilities(Backend backend) const {
  std::vector<double> p(amps_.size());
  kernels::probabilities(backend, amps_, p);
  return p;
}

Statevector apply_ansatz(const AnsatzSpec& spec, std::span<const double> theta, Backend backend) {
  return run_circuit(spec, theta, backend);
}

ShotResult sample_shots(std::span<const double> probabilities, std::uint64_t shots, Rng& rng) {
  if (shots == 0) throw std::invalid_argument("shot count must be positive");
  if (!std::has_single_bit(probabilities.size())) {
    throw std::invalid_argument("probability table size must be a power of two");
  }
  std::vector<double> cdf(probabilities.size());
  std::partial_sum(probabilities.begin(), probabilities.end(), cdf.begin());
  const double total = cdf.back();
  ShotResult out;
  out.num_qubits = std::countr_zero(probabilities.size());
  out.shots = shots;
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = uniform01(rng) * total;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    // u can reach `total` through rounding; fall back to the last label
    // that actually carries weight
    if (it == cdf.end()) it = std::prev(cdf.end());
    while (probabilities[std::size_t(it - cdf.begin())] == 0.0 && it != cdf.begin()) --it;
    ++out.counts[static_cast<std::uint64_t>(it - cdf.begin())];
  }
  return out;
}

ShotResult sample_shots(const Statevector& state, std::uint64_t shots, std::uint64_t seed) {
  Rng rng(seed);
  const auto p = state.probabilities();
  return sample_shots(p, shots, rng);
}

double cvar_estimate(std::span<const double> energies, double alpha) {
  check_alpha(alpha);
  if (energies.empty()) throw std::invalid_argument("CVaR of an empty sample");
  const auto keep = static_cast<std::size_t>(std::ceil(alpha * double(energies.size())));
  const std::size_t n = std::clamp<std::size_t>(keep, 1, energies.size());
  std::vector<double> sorted(energies.begin(), energies.end());
  std::partial_sort(sorted.begin(), sorted.begin() + std::ptrdiff_t(n), sorted.end());
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += sorted[i];
  return sum / double(n);
}

double exact_cvar(std::span<const double> probabilities, std::span<const double> energies,
                  double alpha) {
  check_alpha(alpha);
  if (probabilities.size() != energies.size()) throw std::invalid_argument("size mismatch");
  std::vector<std::size_t> order(energies.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return energies[a] < energies[b] || (energies[a] == energies[b] && a < b);
  });
  double mass = 0.0;
  double sum = 0.0;
  for (std::size_t idx : order) {
    if (mass >= alpha) break;
    const double take = std::min(probabilities[idx], alpha - mass);
    if (take <= 0.0) continue;  // unpopulated label
    sum += take * energies[idx];
    mass += take;
  }
  return sum / mass;
}

double expectation(const Statevector& state, std::span<const double> energies,
                   const ExpectationMode& mode) {
  if (energies.size() != state.dimension()) throw std::invalid_argument("energy table size mismatch");
  switch (mode.kind) {
    case ExpectationMode::Kind::exact:
      return kernels::expectation(Backend::parallel, state.amplitudes(), energies);
    case ExpectationMode::Kind::exact_cvar:
      return exact_cvar(state.probabilities(), energies, mode.alpha);
    case ExpectationMode::Kind::sampled: {
      Rng rng(mode.seed);
      const ShotResult shots = sample_shots(state.probabilities(), mode.shots, rng);
      std::vector<double> sample;
      sample.reserve(mode.shots);
      for (const auto& [label, n] : shots.counts) sample.insert(sample.end(), n, energies[label]);
      return cvar_estimate(sample, mode.alpha);
    }
  }
  throw std::logic_error("unknown expectation mode");
}

double expectation(const Statevector& state, const DiagonalHamiltonian& h,
                   const ExpectationMode& mode) {
  return expectation(state, diagonal_energies(h), mode);
}

VqeEnergy::VqeEnergy(AnsatzSpec spec, std::vector<double> diagonal, ExpectationMode mode,
                     Backend backend)
    : spec_(std::move(spec)),
      diagonal_(std::move(diagonal)),
      mode_(mode),
      backend_(backend),
      rng_(mode.seed) {
  spec_.validate();
  if (diagonal_.size() != (std::size_t{1} << spec_.num_qubits)) {
    throw std::invalid_argument("diagonal size must be 2^q");
  }
  if (mode_.kind != ExpectationMode::Kind::exact) check_alpha(mode_.alpha);
}

double VqeEnergy::operator()(std::span<const double> theta) {
  const Statevector psi = state(theta);
  switch (mode_.kind) {
    case ExpectationMode::Kind::exact:
      return kernels::expectation(backend_, psi.amplitudes(), diagonal_);
    case ExpectationMode::Kind::exact_cvar:
      return exact_cvar(psi.probabilities(backend_), diagonal_, mode_.alpha);
    case ExpectationMode::Kind::sampled: {
      const ShotResult shots = sample_shots(psi.probabilities(backend_), mode_.shots, rng_);
      std::vector<double> sample;
      sample.reserve(mode_.shots);
      for (const auto& [label, n] : shots.counts) sample.insert(sample.end(), n, diagonal_[label]);
      return cvar_estimate(sample, mode_.alpha);
    }
  }
  throw std::logic_error("unknown expectation mode");
}

Statevector VqeEnergy::state(std::span<const double> theta) const {
  return apply_ansatz(spec_, theta, backend_);
}

ShotResult VqeEnergy::measure(std::span<const double> theta) {
  return sample_shots(state(theta).probabilities(backend_), mode_.shots, rng_);
}

std::optional<Layout> select_solution(const ShotResult& shots, int m) {
  std::optional<std::uint64_t> best;
  std::uint64_t best_count = 0;
  // std::map iterates labels in ascending order, so strict > keeps the
  // lowest label among ties.
  for (const auto& [label, n] : shots.counts) {
    if (std::popcount(label) != m || n == 0) continue;
    if (!best || n > best_count) {
      best = label;
      best_count = n;
    }
  }
  if (!best) return std::nullopt;
  return Layout::from_label(*best, shots.num_qubits);
}

std::optional<Layout> select_solution(const Statevector& state, int m) {
  constexpr double kObservable = 1e-12;
  const auto p = state.probabilities();
  std::optional<std::size_t> best;
  for (std::size_t label = 0; label < p.size(); ++label) {
    if (std::popcount(label) != m || p[label] <= kObservable) continue;
    if (!best || p[label] > p[*best]) best = label;
  }
  if (!best) return std::nullopt;
  return Layout::from_label(*best, state.num_qubits());
}

Eigen::MatrixXd dea_jacobian(const AnsatzSpec& spec, std::span<const double> theta) {
  spec.validate();
  const std::size_t dim = std::size_t{1} << spec.num_qubits;
  const int params = spec.parameter_count();
  Eigen::MatrixXd jac(Eigen::Index(2 * dim), params);
  for (int k = 0; k < params; ++k) {
    const Statevector d = run_circuit(spec, theta, Backend::serial, k);
    for (std::size_t i = 0; i < dim; ++i) {
      jac(Eigen::Index(i), k) = d[i].real();
      jac(Eigen::Index(dim + i), k) = d[i].imag();
    }
  }
  return jac;
}

std::vector<ParameterVerdict> dea_check(const AnsatzSpec& spec, std::span<const double> theta) {
  const Eigen::MatrixXd jac = dea_jacobian(spec, theta);
  std::vector<ParameterVerdict> out;
  std::vector<Eigen::Index> kept;
  for (Eigen::Index k = 0; k < jac.cols(); ++k) {
    Eigen::MatrixXd cols(jac.rows(), Eigen::Index(kept.size() + 1));
    for (std::size_t c = 0; c < kept.size(); ++c) cols.col(Eigen::Index(c)) = jac.col(kept[c]);
    cols.col(Eigen::Index(kept.size())) = jac.col(k);
    const Eigen::MatrixXd s = cols.transpose() * cols;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s, Eigen::EigenvaluesOnly);
    const double hi = eig.eigenvalues().maxCoeff();
    const double lo = eig.eigenvalues().minCoeff();
    const double ratio = hi > 0.0 ? lo / hi : 0.0;
    const bool independent = hi > 0.0 && ratio > kDeaRankTolerance;
    if (independent) kept.push_back(k);
    out.push_back({static_cast<int>(k), independent, ratio});
  }
  return out;
}

}  // namespace wflo
