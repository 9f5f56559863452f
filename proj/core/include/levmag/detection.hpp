#pragma once

#include "levmag/params.hpp"

namespace levmag {

/// Fractional drop of the resonant (omega = omega_m) cooled-regime PSD when
/// the coupling is switched from 0 to g: (S(0) - S(g)) / S(0).
double resonant_relative_change(const SystemParams& p, double g_over_omega_m);

/// Resonant |chi|^2 S over the shot floor at coupling g.
double resonant_signal_to_floor(const SystemParams& p, double g_over_omega_m);

/// Couplings bounding the detection window, both in units of omega_m.
///   g_min: relative change reaches detection_threshold
///   g_max: resonant signal falls to the shot floor
/// Either is NaN when no crossing lies inside [lo, hi].
struct DetectionWindow {
  double g_min = 0.0;
  double g_max = 0.0;
};
DetectionWindow detection_window(const SystemParams& p, double lo = 1e-5, double hi = 10.0);

/// g / omega_m minimising the cooled-regime eta_B at omega_m, searched on
/// [lo, hi] in log g.
double optimal_coupling(const SystemParams& p, double lo = 1e-3, double hi = 10.0);

/// Photon flux that puts optimal_coupling at `target`, bracketed in
/// [phi_lo, phi_hi]. Throws DomainError when the target is not bracketed.
double calibrate_photon_flux(const SystemParams& p, double target, double phi_lo = 1e15, double phi_hi = 1e22);

}  // namespace levmag
