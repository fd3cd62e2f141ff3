#include <cmath>
#include <cstdint>

#include "kernel_detail.hpp"
#include "wflo/kernels.hpp"

namespace wflo::kernels::parallel {

namespace {

inline bool worth_threading(std::size_t n) { return n >= kParallelThreshold; }

}  // namespace

void diagonal_energies(std::span<const PauliTerm> terms, std::span<double> out) {
  const auto n = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static) if (worth_threading(out.size()))
  for (std::int64_t label = 0; label < n; ++label) {
    out[label] = detail::energy_of(terms, static_cast<std::uint64_t>(label));
  }
}

void apply_rotation(std::span<Amplitude> amps, int bit, RotationAxis axis, double theta) {
  const auto g = detail::rotation_matrix(axis, theta);
  const auto half = static_cast<std::int64_t>(amps.size() / 2);
#pragma omp parallel for schedule(static) if (worth_threading(amps.size()))
  for (std::int64_t k = 0; k < half; ++k) detail::apply_2x2(amps, bit, std::size_t(k), g);
}

void apply_generator(std::span<Amplitude> amps, int bit, RotationAxis axis) {
  const auto g = detail::generator_matrix(axis);
  const auto half = static_cast<std::int64_t>(amps.size() / 2);
#pragma omp parallel for schedule(static) if (worth_threading(amps.size()))
  for (std::int64_t k = 0; k < half; ++k) detail::apply_2x2(amps, bit, std::size_t(k), g);
}

void apply_cnot(std::span<Amplitude> amps, int control_bit, int target_bit) {
  const auto quarter = static_cast<std::int64_t>(amps.size() / 4);
#pragma omp parallel for schedule(static) if (worth_threading(amps.size()))
  for (std::int64_t k = 0; k < quarter; ++k) {
    detail::cnot_pair(amps, control_bit, target_bit, std::size_t(k));
  }
}

void probabilities(std::span<const Amplitude> amps, std::span<double> out) {
  const auto n = static_cast<std::int64_t>(amps.size());
#pragma omp parallel for schedule(static) if (worth_threading(amps.size()))
  for (std::int64_t i = 0; i < n; ++i) out[i] = std::norm(amps[i]);
}

double expectation(std::span<const Amplitude> amps, std::span<const double> energies) {
  const auto n = static_cast<std::int64_t>(amps.size());
  double sum = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : sum) if (worth_threading(amps.size()))
  for (std::int64_t i = 0; i < n; ++i) sum += std::norm(amps[i]) * energies[i];
  return sum;
}

}  // namespace wflo::kernels::parallel
