#pragma once

#include <string>
#include <vector>

#include "levmag/oracles/langevin.hpp"

namespace levmag::oracles {

struct WelchConfig {
  std::size_t segment_len = 1024;  // power of two
  double overlap = 0.5;            // fraction in [0, 1)
};

/// Welch average with a Hann window. `psd` is the two-sided density per Hz
/// at the non-negative bin frequencies, which is the convention of
/// position_psd; the customary one-sided estimate is twice this value.
struct PsdEstimate {
  std::vector<double> omega;  // rad/s
  std::vector<double> psd;    // m^2/Hz, without detection noise
  double shot_floor = 0.0;    // added analytically, not simulated
  std::size_t segments = 0;   // per series
  std::size_t averages = 0;   // total periodograms averaged
  std::vector<std::string> diagnostics;

  [[nodiscard]] double with_floor(std::size_t i) const { return psd[i] + shot_floor; }
};

PsdEstimate welch_psd(const std::vector<double>& x, double dt, const WelchConfig& cfg);

/// Periodograms are summed over trajectories in index order.
PsdEstimate estimate_psd(const TrajectoryEnsemble& e, const WelchConfig& cfg, double shot_floor = 0.0);

}  // namespace levmag::oracles
