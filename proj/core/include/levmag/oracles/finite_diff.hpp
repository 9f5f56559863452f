#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "levmag/model.hpp"

namespace levmag::oracles {

/// Numerical d PSD / d B0 at `omega`: central differences at steps h and h/2
/// combined by one Richardson step, h = rel_step * B0. The operating point is
/// rebuilt at each gradient with Gamma frozen at the value of `op`.
double fd_psd_derivative(const OperatingPoint& op, double omega, double rel_step = 2e-3);

struct DerivativeCheck {
  Regime regime = Regime::Cooled;
  double coupling_over_omega_m = 0.0;
  double omega_over_omega_m = 0.0;
  double pressure = 0.0;  // Pa
  double analytic = 0.0;
  double numeric = 0.0;
  double rel_error = 0.0;
};

/// Analytic derivative of the regime against fd_psd_derivative. In the
/// cooled regime `p` must carry a fixed mean_phonon; in the general regime
/// the steady phonon number is used.
DerivativeCheck check_derivative(const SystemParams& p, Regime regime, double omega_over_omega_m);

/// Random operating points for derivative checks, reproducible from `seed`.
/// Cooled points draw g, N, pressure, T_eff and omega; general points draw g,
/// pressure, gamma_opt and omega at 300 K with the steady phonon number.
struct DerivativeSample {
  SystemParams params;
  double omega_over_omega_m = 1.0;
};
std::vector<DerivativeSample> random_derivative_points(const SystemParams& base, Regime regime,
                                                       std::size_t count, std::uint64_t seed);

}  // namespace levmag::oracles
