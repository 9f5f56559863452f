#pragma once

#include <string>
#include <vector>

#include "levmag/params.hpp"
#include "levmag/spin_dressing.hpp"

namespace levmag {

/// dN/dt = -2 J N^2 - (J + K) N + M
struct PhononCoefficients {
  double J = 0.0;  // 12 (G - 9 G^2) chi^2 Phi
  double K = 0.0;  // eta_f/m + J + A_- + A_+
  double M = 0.0;  // D_p + A_t + A_p + gamma_opt + A_+
};

PhononCoefficients phonon_coefficients(const SystemParams& p, const MechanicsDerived& d, const SpinRates& r);

/// sqrt(M / 2J). Throws DomainError when J <= 0.
double steady_phonon(const PhononCoefficients& c);
/// Positive root of -2 J N^2 - (J + K) N + M = 0 (M / K when J = 0).
double steady_phonon_exact(const PhononCoefficients& c);
/// Initial thermal occupation k_B T_eff / (hbar omega_m).
double thermal_occupation(const SystemParams& p);
/// The square-root form is trusted when the thermal occupation is large.
bool steady_phonon_valid(const SystemParams& p);

struct PhononState {
  double mean = 0.0;  // value at the last grid time
  PhononCoefficients coeffs;
  std::vector<double> t;
  std::vector<double> n;
  std::vector<std::string> diagnostics;
};

/// Integrates the phonon rate equation with an adaptive Dormand-Prince
/// stepper (relative tolerance `rtol`) and samples it on `t_grid`.
PhononState phonon_dynamics(double n0, const PhononCoefficients& c, const std::vector<double>& t_grid,
                            double rtol = 1e-9);

}  // namespace levmag
