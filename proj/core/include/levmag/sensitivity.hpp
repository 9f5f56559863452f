#pragma once

#include <string>
#include <vector>

#include "levmag/model.hpp"

namespace levmag {

enum class SweepAxis { Frequency, Coupling, Pressure, Temperature };

std::string_view to_string(SweepAxis a);

/// eta_B in T m^-1 Hz^-1/2 along one axis.
///   Frequency: x = omega / omega_m
///   Coupling: x = g / omega_m
///   Pressure: x in Pa
///   Temperature: x in K (gas and effective temperature together)
struct SensitivityCurve {
  SweepAxis axis = SweepAxis::Frequency;
  Regime regime = Regime::Cooled;
  std::vector<double> x;
  std::vector<double> eta;
  std::vector<double> psd;
  std::vector<double> derivative;  // d PSD / d B0
  std::string meta;                // configuration snapshot
  std::vector<std::string> diagnostics;
};

/// Bracket D + m hbar omega_m N sqrt(alpha) of the cooled-regime formula.
double cooled_bracket(const OperatingPoint& op, double omega);
/// d PSD / d B0 in the cooled regime, from the bracket above.
double cooled_psd_derivative(const OperatingPoint& op, double omega);

struct GeneralTerms {
  double D1 = 0.0;
  double D2 = 0.0;
  double D3 = 0.0;
  double D4 = 0.0;
};

/// D1..D4 of the general-regime formula. They are the g-derivatives of the
/// three force strengths and of |chi|^2, with N following the square-root
/// steady state and Gamma held fixed.
GeneralTerms general_terms(const OperatingPoint& op, double omega);
double general_psd_derivative(const OperatingPoint& op, double omega);

/// PSD / |d PSD / d B0| * sqrt(t_m).
double sensitivity_cooled_at(const OperatingPoint& op, double omega, double t_m);
double sensitivity_general_at(const OperatingPoint& op, double omega, double t_m);

SensitivityCurve sensitivity_cooled(const std::vector<double>& omega_grid, const OperatingPoint& op, double t_m);
SensitivityCurve sensitivity_general(const std::vector<double>& omega_grid, const OperatingPoint& op, double t_m);

/// Rebuilds the operating point at every x and evaluates eta_B at
/// omega = omega_over_omega_m * omega_m with the configured measurement time.
SensitivityCurve sensitivity_sweep(const SystemParams& p, Regime regime, SweepAxis axis,
                                   const std::vector<double>& xs, double omega_over_omega_m = 1.0);

}  // namespace levmag
