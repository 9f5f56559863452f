#pragma once

#include <string>
#include <vector>

#include "levmag/params.hpp"

namespace levmag {

/// Readout constants resolved from a parameter set.
struct RamseyInputs {
  double omega_m = 0.0;
  double zpf = 0.0;
  double free_time = 0.0;        // T = 2 pi / omega_m
  double beta = 0.0;             // mean photons per measurement
  double beta0 = 0.0;
  double beta1 = 0.0;
  double contrast = 0.0;
  double phase_prefactor = 4.0;  // phase = k g^2 T / omega_m
};

/// beta0/beta1 win over beta/contrast when both are configured; a per-second
/// beta is multiplied by T.
RamseyInputs ramsey_inputs(const SystemParams& p);

struct RamseyPhase {
  double phase = 0.0;
  double p0 = 0.0;
};

/// P0 = (1 - cos(k g^2 T / omega_m)) / 2 with T = 2 pi / omega_m.
RamseyPhase ramsey_population(double coupling, double omega_m, double phase_prefactor = 4.0);

struct RamseyResult {
  double coupling = 0.0;
  double phase = 0.0;
  double p0 = 0.0;
  double signal = 0.0;   // photons per measurement
  double slope = 0.0;    // max |dS/dB0|, photons per (T/m)
  double dB_psn = 0.0;   // T/m
  double dB_spn = 0.0;   // T/m
  double dB_min = 0.0;   // T/m
  double eta = 0.0;      // T m^-1 Hz^-1/2
};

/// Shot and projection noise over the maximal fringe slope. The photon-shot
/// part is sqrt(beta)/slope and the projection part sqrt(1 - cos^4)/slope,
/// so their quadrature sum is the combined minimum exactly.
RamseyResult ramsey_sensitivity(double coupling, const RamseyInputs& in);

struct DecoherenceChannel {
  std::string name;
  double time = 0.0;    // s, infinity when the channel is absent
  double margin = 0.0;  // time / T
  bool pass = false;
};

struct DecoherenceReport {
  double free_time = 0.0;
  std::vector<DecoherenceChannel> channels;
  [[nodiscard]] bool all_pass() const;
};

/// Gas damping 1/Gamma_0, feedback 1/delta Gamma, optical 1/gamma_opt and
/// spin dephasing against the free-evolution time.
DecoherenceReport decoherence_budget(const SystemParams& p);

}  // namespace levmag
