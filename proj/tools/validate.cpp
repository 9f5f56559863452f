#include "validate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"

#include "levmag/constants.hpp"
#include "levmag/csv.hpp"
#include "levmag/error.hpp"
#include "levmag/model.hpp"
#include "levmag/oracles/finite_diff.hpp"
#include "levmag/oracles/fock.hpp"
#include "levmag/oracles/langevin.hpp"
#include "levmag/oracles/welch.hpp"
#include "levmag/ramsey.hpp"

namespace levmag::cli {

namespace {

Check check(std::string name, double value, double tol) { return {std::move(name), value, tol, value < tol}; }

struct SpectralComparison {
  double rms = 0.0;
  double peak_ratio_estimated = 0.0;
  double peak_ratio_analytic = 0.0;
};

// estimated and analytic spectra of one operating point over [0.5, 1.5] omega_m
struct BandSpectra {
  std::vector<double> estimated;
  std::vector<double> analytic;
  double rms = 0.0;
};

BandSpectra simulate_band(const OperatingPoint& op, const ValidateOptions& o) {
  using namespace oracles;
  const double T = constants::two_pi / op.omega_m();
  WelchConfig w;
  w.segment_len = 4096;
  LangevinConfig c;
  c.dt = T / 100.0;
  c.record_stride = 2;
  c.duration = c.dt * c.record_stride * static_cast<double>(w.segment_len) * 5.0;
  c.burn_in = 100.0 * T;
  c.n_traj = o.n_traj;
  c.seed = o.seed;
  c.threads = o.threads;
  const TrajectoryEnsemble e = simulate_langevin(op, c);
  const PsdEstimate est = estimate_psd(e, w, op.noise.shot_floor);
  BandSpectra b;
  double s2 = 0.0;
  for (std::size_t i = 0; i < est.omega.size(); ++i) {
    const double x = est.omega[i] / op.omega_m();
    if (x < 0.5 || x > 1.5) continue;
    const double a = std::norm(op.chi(est.omega[i])) * op.noise.total();
    b.estimated.push_back(est.psd[i]);
    b.analytic.push_back(a);
    const double r = est.psd[i] / a - 1.0;
    s2 += r * r;
  }
  b.rms = std::sqrt(s2 / static_cast<double>(b.analytic.size()));
  return b;
}

std::string fmt(double v) { return format_sci(v); }

}  // namespace

bool SuiteReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

SuiteReport validate_langevin(const SystemParams& p, const ValidateOptions& o) {
  SuiteReport r;
  r.suite = "langevin";
  SystemParams p0 = p;
  p0.gradient = 0.0;
  const OperatingPoint op0 = make_operating_point(p0, Regime::Cooled);
  const BandSpectra b0 = simulate_band(op0, o);
  r.checks.push_back(check("rms_rel_error_g0", b0.rms, 0.15));
  if (p.gradient != 0.0) {
    const OperatingPoint op = make_operating_point(p, Regime::Cooled);
    const BandSpectra b = simulate_band(op, o);
    r.checks.push_back(check("rms_rel_error_g", b.rms, 0.15));
    const double est = *std::max_element(b.estimated.begin(), b.estimated.end()) /
                       *std::max_element(b0.estimated.begin(), b0.estimated.end());
    const double ana = *std::max_element(b.analytic.begin(), b.analytic.end()) /
                       *std::max_element(b0.analytic.begin(), b0.analytic.end());
    r.checks.push_back(check("peak_ratio_rel_error", std::abs(est / ana - 1.0), 0.15));
    r.notes.push_back("g/omega_m = " + fmt(op.coupling() / op.omega_m()) + ", peak ratio estimated " + fmt(est) +
                      ", analytic " + fmt(ana));
  }
  r.notes.push_back("trajectories " + std::to_string(o.n_traj) + ", seed " + std::to_string(o.seed));
  return r;
}

SuiteReport validate_ramsey(const SystemParams& p, const ValidateOptions&) {
  using namespace oracles;
  SuiteReport r;
  r.suite = "ramsey";
  const double wm = p.omega_m();
  const std::size_t steps = 64;
  const std::complex<double> alpha0{1.0, 0.5};

  const auto zero = simulate_ramsey_fock(0.0, wm, alpha0, 40, steps);
  r.checks.push_back(check("p0_at_zero_coupling", zero.p0, 1e-10));

  std::vector<double> prefactors;
  double norm_err = zero.max_norm_error;
  for (double x : {0.05, 0.1, 0.2}) {
    const auto s = simulate_ramsey_fock(x * wm, wm, alpha0, 40, steps);
    prefactors.push_back(s.measured_prefactor);
    norm_err = std::max(norm_err, s.max_norm_error);
  }
  const auto [lo, hi] = std::minmax_element(prefactors.begin(), prefactors.end());
  const double k = prefactors[1];
  r.checks.push_back(check("prefactor_spread", *hi - *lo, 1e-6));
  r.checks.push_back(check("norm_error", norm_err, 1e-9));

  double worst = 0.0;
  for (int i = 1; i <= 12; ++i) {
    const double g = 0.05 * i * wm;
    const auto s = simulate_ramsey_fock(g, wm, alpha0, 40, steps);
    worst = std::max(worst, std::abs(s.p0 - ramsey_population(g, wm, k).p0));
  }
  r.checks.push_back(check("p0_closed_form_error", worst, 1e-6));

  const double g = 0.2 * wm;
  const double coherent = simulate_ramsey_fock(g, wm, alpha0, 40, steps).p0;
  const double thermal = simulate_ramsey_fock_thermal(g, wm, 2.0, 80, steps);
  r.checks.push_back(check("thermal_state_p0_shift", std::abs(thermal - coherent), 1e-6));

  r.notes.push_back("measured phase prefactor " + fmt(k) + ", configured " + fmt(p.phase_prefactor));
  if (std::abs(k - p.phase_prefactor) > 1e-6) {
    r.notes.push_back("configured phase_prefactor differs from the simulated value");
  }
  return r;
}

SuiteReport validate_finite_diff(const SystemParams& p, const ValidateOptions& o) {
  SuiteReport r;
  r.suite = "finite_diff";
  for (Regime regime : {Regime::Cooled, Regime::General}) {
    double worst = 0.0;
    const auto pts = oracles::random_derivative_points(p, regime, o.fd_points, o.seed);
    for (const auto& s : pts) {
      worst = std::max(worst, oracles::check_derivative(s.params, regime, s.omega_over_omega_m).rel_error);
    }
    r.checks.push_back(check(std::string("max_rel_error_") + std::string(to_string(regime)), worst, 1e-4));
  }
  r.notes.push_back(std::to_string(o.fd_points) + " points per regime, seed " + std::to_string(o.seed));
  return r;
}

std::vector<std::string> suite_names() { return {"langevin", "ramsey", "finite_diff"}; }

SuiteReport run_suite(std::string_view name, const SystemParams& p, const ValidateOptions& o) {
  if (name == "langevin") return validate_langevin(p, o);
  if (name == "ramsey") return validate_ramsey(p, o);
  if (name == "finite_diff") return validate_finite_diff(p, o);
  throw ConfigError("unknown suite '" + std::string(name) + "'");
}

std::string format_report(const std::vector<SuiteReport>& reports, const std::string& manifest_digest) {
  std::ostringstream out;
  out << "# manifest_digest=" << manifest_digest << "\n";
  for (const auto& r : reports) {
    out << "[" << r.suite << "] " << (r.pass() ? "PASS" : "FAIL") << "\n";
    for (const auto& c : r.checks) {
      out << "  " << (c.pass ? "ok   " : "FAIL ") << c.name << " = " << fmt(c.value) << " (< " << fmt(c.tolerance)
          << ")\n";
    }
    for (const auto& n : r.notes) out << "  note: " << n << "\n";
  }
  return out.str();
}

std::string report_json(const std::vector<SuiteReport>& reports, const std::string& manifest_digest) {
  nlohmann::ordered_json suites = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json s;
    s["suite"] = r.suite;
    s["pass"] = r.pass();
    s["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : r.checks) {
      s["checks"].push_back({{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"pass", c.pass}});
    }
    s["notes"] = r.notes;
    suites.push_back(s);
  }
  nlohmann::ordered_json j;
  j["manifest_digest"] = manifest_digest;
  j["suites"] = suites;
  return j.dump(2) + "\n";
}

}  // namespace levmag::cli
