#pragma once

#include <complex>

#include "levmag/params.hpp"

namespace levmag {

/// Microwave-dressed NV ground triplet.
///   |a> = sin(theta)|0> + cos(theta)|+>
///   |b> = |->
///   |c> = cos(theta)|0> - sin(theta)|+>
/// with |+-> = (|+1> +- |-1>)/sqrt(2). Energies in rad/s, rotating frame.
struct DressedSpin {
  double rabi = 0.0;      // Omega_0
  double detuning = 0.0;  // Delta
  double omega_m = 0.0;
  double theta = 0.0;
  double omega_a = 0.0;
  double omega_b = 0.0;
  double omega_c = 0.0;
  double delta1 = 0.0;  // omega_m - (omega_b - omega_c)
  double delta2 = 0.0;  // omega_m - (omega_a - omega_b)

  bool populated = false;
  double rho_aa = 0.0;
  double rho_bb = 0.0;
  double rho_cc = 0.0;
  std::complex<double> rho_ca{0.0, 0.0};
};

/// theta = atan2(sqrt(2) Omega_0, -Delta) / 2, which lies in (0, pi/2) and
/// keeps |a> the upper eigenvector for either sign of Delta.
DressedSpin dressed_states(double rabi, double detuning, double omega_m);

/// Delta that puts the |c> -> |b> transition on resonance (Delta_1 = 0).
double resonant_detuning(double rabi, double omega_m);

/// Steady state of the driven triplet with optical pumping |+-1> -> |0> at
/// rate Gamma_1, solved as the null vector of the 9x9 Liouvillian in the bare
/// basis and rotated into the dressed basis.
DressedSpin steady_populations(const DressedSpin& d, double spin_decay);

/// Copies `o` into the populations of `d` after checking positivity.
DressedSpin with_populations(const DressedSpin& d, const PopulationOverride& o);

struct Alphas {
  double alpha1 = 0.0;  // s
  double alpha2 = 0.0;  // s
  double alpha3 = 0.0;  // s
};

/// Cooling, heating and frequency-shift coefficients from the dressed
/// populations; Gamma_2 is taken equal to Gamma_1.
Alphas alpha_coefficients(const DressedSpin& d, double spin_decay);
Alphas alpha_coefficients(const DressedSpin& d, double spin_decay, double delta1, double delta2);

/// Leading-order cooling coefficient for a resonant cooling transition and
/// far-detuned heating transition: A_- = g^2 alpha.
double resonant_alpha(double theta, double spin_decay);

struct SpinRates {
  double A_minus = 0.0;  // rad/s
  double A_plus = 0.0;   // rad/s
  double delta = 0.0;    // rad/s
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double alpha3 = 0.0;
};

/// A_- = 2 g^2 alpha1, A_+ = 2 g^2 alpha2, delta = 2 g^2 alpha3.
SpinRates spin_rates(const Alphas& a, double coupling);
/// Resonant regime: A_- = g^2 alpha, A_+ = delta = 0.
SpinRates resonant_spin_rates(double alpha, double coupling);

/// Dressed states of `p` with populations from the configured source.
DressedSpin dressed_spin(const SystemParams& p);

}  // namespace levmag
