#pragma once

#include <optional>
#include <string>

#include "levmag/params.hpp"
#include "levmag/phonon.hpp"
#include "levmag/spectrum.hpp"
#include "levmag/spin_dressing.hpp"

namespace levmag {

/// Cooled: resonant cooling transition, A_- = g^2 alpha, A_+ = delta = 0.
/// General: all three alphas from the dressed populations.
enum class Regime { Cooled, General };

std::string_view to_string(Regime r);

struct OperatingOptions {
  /// Holds Gamma fixed instead of following the phonon number.
  std::optional<double> frozen_damping;
};

/// Everything the spectrum and sensitivity formulas consume at one
/// parameter point.
struct OperatingPoint {
  SystemParams params;
  MechanicsDerived mech;
  Regime regime = Regime::Cooled;
  OperatingOptions options;
  DressedSpin spin;
  Alphas alphas;
  double alpha_resonant = 0.0;  // cooled regime only
  SpinRates rates;
  PhononCoefficients phonon;
  double mean_phonon = 0.0;
  bool mean_phonon_from_steady = false;
  NoiseBudget noise;
  std::string params_hash;

  [[nodiscard]] double omega_m() const { return params.omega_m(); }
  [[nodiscard]] double coupling() const { return mech.coupling; }
  [[nodiscard]] std::complex<double> chi(double omega) const;
};

OperatingPoint make_operating_point(const SystemParams& p, Regime regime, const OperatingOptions& opt = {});

/// Same point with a new gradient; spin populations and alphas are reused.
OperatingPoint at_gradient(const OperatingPoint& base, double gradient);

/// Position spectrum using the signed spin-noise strength. This is the
/// function the sensitivity derivatives differentiate.
double psd_literal(const OperatingPoint& op, double omega);

}  // namespace levmag
