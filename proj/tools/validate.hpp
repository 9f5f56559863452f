#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "levmag/params.hpp"

namespace levmag::cli {

struct Check {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;  // pass when value < tolerance
  bool pass = false;
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;
  std::vector<std::string> notes;
  [[nodiscard]] bool pass() const;
};

struct ValidateOptions {
  std::uint64_t seed = 1;
  std::size_t n_traj = 400;
  std::size_t fd_points = 20;
  unsigned threads = 1;
};

/// Welch estimate of simulated trajectories against the analytic spectrum
/// (without the shot floor) over [0.5, 1.5] omega_m, at g = 0 and at the
/// configured coupling, plus the coupled/uncoupled peak ratio.
SuiteReport validate_langevin(const SystemParams& p, const ValidateOptions& o);

/// Truncated-Fock Ramsey simulation against the closed-form population
/// with the measured phase prefactor.
SuiteReport validate_ramsey(const SystemParams& p, const ValidateOptions& o);

/// Analytic PSD derivatives against Richardson central differences at
/// random points of both regimes.
SuiteReport validate_finite_diff(const SystemParams& p, const ValidateOptions& o);

std::vector<std::string> suite_names();
SuiteReport run_suite(std::string_view name, const SystemParams& p, const ValidateOptions& o);

/// Human-readable and JSON reports, both tagged with the manifest digest.
std::string format_report(const std::vector<SuiteReport>& reports, const std::string& manifest_digest);
std::string report_json(const std::vector<SuiteReport>& reports, const std::string& manifest_digest);

}  // namespace levmag::cli
