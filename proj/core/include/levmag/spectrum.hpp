#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include "levmag/params.hpp"
#include "levmag/spin_dressing.hpp"

namespace levmag {

struct OperatingPoint;

/// Mechanical susceptibility (m/N) of the spin-dressed, damped oscillator.
std::complex<double> susceptibility(double omega, double mass, double omega_m, double delta, double A_minus,
                                    double A_plus, double damping);

/// Force strengths in N^2 s.
struct NoiseBudget {
  double S_T = 0.0;
  double S_F = 0.0;
  double S_S = 0.0;          // clamped at zero, used for reported spectra
  double S_S_literal = 0.0;  // signed value of the closed form
  double shot_floor = 0.0;   // z0^2 / (chi^2 Phi)
  double phonon_mean = 0.0;
  double gas_damping = 0.0;      // Gamma_0
  double feedback_damping = 0.0; // delta Gamma = 12 chi^2 Phi G (N + 1/2)
  double total_damping = 0.0;    // Gamma
  std::vector<std::string> diagnostics;

  [[nodiscard]] double total() const { return S_T + S_F + S_S; }
  [[nodiscard]] double total_literal() const { return S_T + S_F + S_S_literal; }
};

NoiseBudget noise_sources(const SystemParams& p, const MechanicsDerived& d, const SpinRates& r, double mean_phonon);

/// Closed-form peak |chi|^2 for the resonant cooling regime as usually
/// quoted, m^-2 [Y^2 (K - Y^2/2)]^-1 with Y = Gamma + A_-. It keeps Y^4/2
/// where the exact maximum has Y^4/4, so it is only accurate for Y << omega_m.
double peak_susceptibility_sq(double mass, double omega_m, double damping, double A_minus);

/// Exact maximum over omega >= 0 of |chi(omega)|^2.
double peak_susceptibility_sq_exact(double mass, double omega_m, double delta, double A_minus, double A_plus,
                                    double damping);
/// Frequency of that maximum (0 when overdamped).
double peak_frequency(double omega_m, double delta, double A_minus, double A_plus, double damping);

struct SpectrumResult {
  std::vector<double> omega;  // rad/s
  std::vector<std::complex<double>> chi;
  std::vector<double> psd;    // m^2/Hz, two-sided angular density
  std::vector<double> psd_T;
  std::vector<double> psd_F;
  std::vector<double> psd_S;
  double shot_floor = 0.0;
  double grid_peak_omega = 0.0;
  double grid_peak_psd = 0.0;
  double peak_omega = 0.0;
  double peak_chi_sq_exact = 0.0;
  double peak_chi_sq_literal = 0.0;
  NoiseBudget noise;
  std::string params_hash;
  std::vector<std::string> diagnostics;
};

/// |chi|^2 (S_T + S_F + S_S) + z0^2/(chi^2 Phi) on an ascending, non-negative
/// grid. PSD values follow <q^2> = (1/pi) * integral_0^inf S(omega) d omega;
/// a one-sided per-Hz estimate P1(f) corresponds to S = P1 / 2.
SpectrumResult position_psd(const std::vector<double>& omega_grid, const OperatingPoint& op);

/// RFC 4180 CSV; first line is a '#' comment carrying the parameter hash.
void write_csv(std::ostream& out, const SpectrumResult& s);

}  // namespace levmag
