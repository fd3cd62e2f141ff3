#ifndef WFLO_SRC_KERNEL_DETAIL_HPP_
#define WFLO_SRC_KERNEL_DETAIL_HPP_

// Per-element bodies shared by the serial and OpenMP kernels, so the two
// loops differ only in how iterations are scheduled.

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <span>

#include "wflo/kernels.hpp"

namespace wflo::kernels::detail {

using Matrix2 = std::array<Amplitude, 4>;  // row-major

inline Matrix2 rotation_matrix(RotationAxis axis, double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  if (axis == RotationAxis::y) return {Amplitude{c}, Amplitude{-s}, Amplitude{s}, Amplitude{c}};
  return {Amplitude{c}, Amplitude{0.0, -s}, Amplitude{0.0, -s}, Amplitude{c}};
}

inline Matrix2 generator_matrix(RotationAxis axis) {
  if (axis == RotationAxis::y) return {Amplitude{0.0}, Amplitude{-0.5}, Amplitude{0.5}, Amplitude{0.0}};
  return {Amplitude{0.0}, Amplitude{0.0, -0.5}, Amplitude{0.0, -0.5}, Amplitude{0.0}};
}

// Index of the k-th amplitude whose `bit` is 0.
inline std::size_t insert_zero(std::size_t k, int bit) {
  const std::size_t low = k & ((std::size_t{1} << bit) - 1);
  return ((k >> bit) << (bit + 1)) | low;
}

inline void apply_2x2(std::span<Amplitude> amps, int bit, std::size_t k, const Matrix2& g) {
  const std::size_t i0 = insert_zero(k, bit);
  const std::size_t i1 = i0 | (std::size_t{1} << bit);
  const Amplitude a0 = amps[i0];
  const Amplitude a1 = amps[i1];
  amps[i0] = g[0] * a0 + g[1] * a1;
  amps[i1] = g[2] * a0 + g[3] * a1;
}

inline void cnot_pair(std::span<Amplitude> amps, int control_bit, int target_bit, std::size_t k) {
  const int lo = control_bit < target_bit ? control_bit : target_bit;
  const int hi = control_bit < target_bit ? target_bit : control_bit;
  const std::size_t base = insert_zero(insert_zero(k, lo), hi);
  const std::size_t i0 = base | (std::size_t{1} << control_bit);
  const std::size_t i1 = i0 | (std::size_t{1} << target_bit);
  std::swap(amps[i0], amps[i1]);
}

inline double energy_of(std::span<const PauliTerm> terms, std::uint64_t label) {
  double e = 0.0;
  for (const auto& t : terms) {
    e += (std::popcount(t.z_mask & label) & 1) ? -t.coefficient : t.coefficient;
  }
  return e;
}

}  // namespace wflo::kernels::detail

#endif  // WFLO_SRC_KERNEL_DETAIL_HPP_
