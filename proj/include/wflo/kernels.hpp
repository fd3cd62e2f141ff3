#ifndef WFLO_KERNELS_HPP_
#define WFLO_KERNELS_HPP_

// Dense data-parallel inner loops. `serial` is the reference
// implementation kept for testing; `parallel` is the OpenMP version used
// by default. Both namespaces expose identical signatures and must agree
// to rounding.

#include <complex>
#include <cstdint>
#include <span>

#include "wflo/pauli.hpp"

namespace wflo {

enum class Backend { serial, parallel };

enum class RotationAxis { x, y };

using Amplitude = std::complex<double>;

namespace kernels {

// Below this many amplitudes the parallel kernels stay on one thread.
inline constexpr std::size_t kParallelThreshold = std::size_t{1} << 12;

namespace serial {

void diagonal_energies(std::span<const PauliTerm> terms, std::span<double> out);

// exp(-i theta/2 sigma) on the qubit at label bit `bit`.
void apply_rotation(std::span<Amplitude> amps, int bit, RotationAxis axis, double theta);
// Multiplies by -i/2 sigma, the derivative generator of apply_rotation.
void apply_generator(std::span<Amplitude> amps, int bit, RotationAxis axis);
void apply_cnot(std::span<Amplitude> amps, int control_bit, int target_bit);

void probabilities(std::span<const Amplitude> amps, std::span<double> out);
double expectation(std::span<const Amplitude> amps, std::span<const double> energies);

}  // namespace serial

namespace parallel {

void diagonal_energies(std::span<const PauliTerm> terms, std::span<double> out);
void apply_rotation(std::span<Amplitude> amps, int bit, RotationAxis axis, double theta);
void apply_generator(std::span<Amplitude> amps, int bit, RotationAxis axis);
void apply_cnot(std::span<Amplitude> amps, int control_bit, int target_bit);
void probabilities(std::span<const Amplitude> amps, std::span<double> out);
double expectation(std::span<const Amplitude> amps, std::span<const double> energies);

}  // namespace parallel

// Runtime dispatch used by the simulator.
void apply_rotation(Backend b, std::span<Amplitude> amps, int bit, RotationAxis axis, double theta);
void apply_generator(Backend b, std::span<Amplitude> amps, int bit, RotationAxis axis);
void apply_cnot(Backend b, std::span<Amplitude> amps, int control_bit, int target_bit);
void probabilities(Backend b, std::span<const Amplitude> amps, std::span<double> out);
double expectation(Backend b, std::span<const Amplitude> amps, std::span<const double> energies);

}  // namespace kernels
}  // namespace wflo

#endif  // WFLO_KERNELS_HPP_
