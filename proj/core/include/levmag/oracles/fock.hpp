#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace levmag::oracles {

/// Spin {|0>, |+1>} times a truncated Fock space, in units with hbar = 1.
struct FockState {
  std::size_t dim = 0;
  Eigen::VectorXcd amplitudes;  // index s * dim + n

  [[nodiscard]] double norm() const { return amplitudes.squaredNorm(); }
};

struct FockRamseyResult {
  double p0 = 0.0;
  double phase = 0.0;             // arg <u_0|u_+1> before the second pulse
  double measured_prefactor = 0.0; // phase * omega_m / (g^2 T)
  double max_norm_error = 0.0;
  double max_leakage = 0.0;       // population in the top two Fock levels
};

/// Coherent state truncated to `dim` levels and renormalised.
Eigen::VectorXcd coherent_state(std::complex<double> alpha, std::size_t dim);

/// pi/2 pulse, free evolution under omega_m a^+a + g |+1><+1| (a + a^+) for
/// T = 2 pi / omega_m in `n_steps` exact segments, pi/2 pulse. Throws
/// DomainError when norm drifts by more than 1e-9 or the top two levels
/// carry more than 1e-6.
FockRamseyResult simulate_ramsey_fock(double coupling, double omega_m, const Eigen::VectorXcd& mech_state,
                                      std::size_t n_steps, std::complex<double> global_phase = {1.0, 0.0});

/// Convenience overload for a coherent initial state; requires
/// dim > 4 (|alpha|^2 + g^2/omega_m^2 + 3).
FockRamseyResult simulate_ramsey_fock(double coupling, double omega_m, std::complex<double> alpha0,
                                      std::size_t dim, std::size_t n_steps);

/// Thermal mixture with mean occupation `n_mean`, truncated at `dim` and
/// renormalised; returns the mixture-averaged P0.
double simulate_ramsey_fock_thermal(double coupling, double omega_m, double n_mean, std::size_t dim,
                                    std::size_t n_steps);

}  // namespace levmag::oracles
