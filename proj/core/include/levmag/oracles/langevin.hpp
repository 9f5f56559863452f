#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "levmag/model.hpp"

namespace levmag::oracles {

/// Linear position SDE  q'' + Y q' + K q = (F_T + F_F + F_S) / m.
struct LangevinModel {
  double mass = 0.0;
  double stiffness = 0.0;  // K, rad^2/s^2
  double damping = 0.0;    // Y, 1/s
  double S_T = 0.0;        // N^2 s
  double S_F = 0.0;
  double S_S = 0.0;
  double omega_m = 0.0;    // reference for the step-size guard
  double zpf = 0.0;        // reference for the instability guard

  [[nodiscard]] double total_strength() const { return S_T + S_F + S_S; }
};

/// Coefficients and force strengths of `op`, with the phonon number frozen
/// at its operating value.
LangevinModel langevin_model(const OperatingPoint& op);

/// Stationary <q^2> of the model, S / (2 m^2 Y K).
double stationary_variance(const LangevinModel& m);

enum class Integrator {
  SymplecticEuler,  // Euler-Maruyama with the velocity updated first
  ExactPropagator,  // exact Gaussian transition over one step (Van Loan)
};

struct LangevinConfig {
  double dt = 0.0;            // integration step, s
  double duration = 0.0;      // recorded time span, s
  double burn_in = 0.0;       // discarded lead-in, s
  std::size_t n_traj = 1;
  std::size_t record_stride = 1;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  Integrator integrator = Integrator::SymplecticEuler;
  double q0 = 0.0;
  double v0 = 0.0;
};

struct TrajectoryEnsemble {
  double dt = 0.0;  // spacing of recorded samples
  std::size_t n_steps = 0;
  std::size_t n_traj = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> stream_ids;  // Philox key word 1 per trajectory
  std::vector<std::vector<double>> positions;
  std::string params_hash;
};

/// Trajectory i draws its normals from Philox key {seed, i} with counter
/// {step, 0, 0, 0}, channel j using normal j of the block. Results do not
/// depend on the thread count.
TrajectoryEnsemble simulate_langevin(const LangevinModel& model, const LangevinConfig& cfg);
TrajectoryEnsemble simulate_langevin(const OperatingPoint& op, const LangevinConfig& cfg);

}  // namespace levmag::oracles
