#include <bit>
#include <cmath>

#include "kernel_detail.hpp"
#include "wflo/kernels.hpp"

namespace wflo::kernels {

namespace serial {

void diagonal_energies(std::span<const PauliTerm> terms, std::span<double> out) {
  for (std::size_t label = 0; label < out.size(); ++label) {
    out[label] = detail::energy_of(terms, label);
  }
}

void apply_rotation(std::span<Amplitude> amps, int bit, RotationAxis axis, double theta) {
  const auto g = detail::rotation_matrix(axis, theta);
  const std::size_t half = amps.size() / 2;
  for (std::size_t k = 0; k < half; ++k) detail::apply_2x2(amps, bit, k, g);
}

void apply_generator(std::span<Amplitude> amps, int bit, RotationAxis axis) {
  const auto g = detail::generator_matrix(axis);
  const std::size_t half = amps.size() / 2;
  for (std::size_t k = 0; k < half; ++k) detail::apply_2x2(amps, bit, k, g);
}

void apply_cnot(std::span<Amplitude> amps, int control_bit, int target_bit) {
  const std::size_t quarter = amps.size() / 4;
  for (std::size_t k = 0; k < quarter; ++k) detail::cnot_pair(amps, control_bit, target_bit, k);
}

void probabilities(std::span<const Amplitude> amps, std::span<double> out) {
  for (std::size_t i = 0; i < amps.size(); ++i) out[i] = std::norm(amps[i]);
}

double expectation(std::span<const Amplitude> amps, std::span<const double> energies) {
  double sum = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i) sum += std::norm(amps[i]) * energies[i];
  return sum;
}

}  // namespace serial

void apply_rotation(Backend b, std::span<Amplitude> amps, int bit, RotationAxis axis, double theta) {
  b == Backend::serial ? serial::apply_rotation(amps, bit, axis, theta)
                       : parallel::apply_rotation(amps, bit, axis, theta);
}

void apply_generator(Backend b, std::span<Amplitude> amps, int bit, RotationAxis axis) {
  b == Backend::serial ? serial::apply_generator(amps, bit, axis)
                       : parallel::apply_generator(amps, bit, axis);
}

void apply_cnot(Backend b, std::span<Amplitude> amps, int control_bit, int target_bit) {
  b == Backend::serial ? serial::apply_cnot(amps, control_bit, target_bit)
                       : parallel::apply_cnot(amps, control_bit, target_bit);
}

void probabilities(Backend b, std::span<const Amplitude> amps, std::span<double> out) {
  b == Backend::serial ? serial::probabilities(amps, out) : parallel::probabilities(amps, out);
}

double expectation(Backend b, std::span<const Amplitude> amps, std::span<const double> energies) {
  return b == Backend::serial ? serial::expectation(amps, energies)
                              : parallel::expectation(amps, energies);
}

}  // namespace wflo::kernels
