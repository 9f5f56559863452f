#pragma once

#include <numbers>

namespace levmag::constants {

// CODATA 2018 exact / recommended values, SI units.
inline constexpr double hbar = 1.054571817e-34;      // J s
inline constexpr double k_B = 1.380649e-23;          // J / K
inline constexpr double mu_B = 9.2740100783e-24;     // J / T
inline constexpr double lande_g = 2.0;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

inline constexpr double pa_per_mbar = 100.0;

}  // namespace levmag::constants
