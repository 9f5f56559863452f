#include "levmag/detection.hpp"

#include <cmath>
#include <limits>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "levmag/error.hpp"
#include "levmag/model.hpp"
#include "levmag/sensitivity.hpp"

namespace levmag {

namespace {

double resonant_psd(const SystemParams& p, double g) {
  const OperatingPoint op = make_operating_point(with_coupling(p, g), Regime::Cooled);
  return psd_literal(op, op.omega_m());
}

// root of f on [lo, hi] in log space, NaN without a sign change
template <class F>
double log_root(F f, double lo, double hi) {
  const double flo = f(lo);
  const double fhi = f(hi);
  if (!(flo * fhi < 0.0)) return std::numeric_limits<double>::quiet_NaN();
  std::uintmax_t iters = 200;
  auto g = [&](double u) { return f(std::exp(u)); };
  auto r = boost::math::tools::toms748_solve(g, std::log(lo), std::log(hi), flo, fhi,
                                             boost::math::tools::eps_tolerance<double>(50), iters);
  return std::exp(0.5 * (r.first + r.second));
}

}  // namespace

double resonant_relative_change(const SystemParams& p, double g_over_omega_m) {
  const double s0 = resonant_psd(p, 0.0);
  return (s0 - resonant_psd(p, g_over_omega_m)) / s0;
}

double resonant_signal_to_floor(const SystemParams& p, double g_over_omega_m) {
  const OperatingPoint op = make_operating_point(with_coupling(p, g_over_omega_m), Regime::Cooled);
  return std::norm(op.chi(op.omega_m())) * op.noise.total_literal() / op.noise.shot_floor;
}

DetectionWindow detection_window(const SystemParams& p, double lo, double hi) {
  const double s0 = resonant_psd(p, 0.0);
  DetectionWindow w;
  w.g_min = log_root([&](double g) { return (s0 - resonant_psd(p, g)) / s0 - p.detection_threshold; }, lo, hi);
  w.g_max = log_root([&](double g) { return std::log(resonant_signal_to_floor(p, g)); }, lo, hi);
  return w;
}

double optimal_coupling(const SystemParams& p, double lo, double hi) {
  const double t_m = p.measurement_time_or_default();
  auto eta = [&](double u) {
    const OperatingPoint op = make_operating_point(with_coupling(p, std::exp(u)), Regime::Cooled);
    return std::log(sensitivity_cooled_at(op, op.omega_m(), t_m));
  };
  // coarse scan first so Brent starts in the right basin
  const int n = 200;
  int best = 0;
  double best_val = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const double u = std::log(lo) + (std::log(hi) - std::log(lo)) * i / (n - 1);
    const double v = eta(u);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  const double du = (std::log(hi) - std::log(lo)) / (n - 1);
  const double a = std::log(lo) + std::max(0, best - 1) * du;
  const double b = std::log(lo) + std::min(n - 1, best + 1) * du;
  const auto r = boost::math::tools::brent_find_minima(eta, a, b, 40);
  return std::exp(r.first);
}

double calibrate_photon_flux(const SystemParams& p, double target, double phi_lo, double phi_hi) {
  auto f = [&](double phi) {
    SystemParams q = p;
    q.photon_flux = phi;
    return std::log(optimal_coupling(q) / target);
  };
  const double phi = log_root(f, phi_lo, phi_hi);
  if (std::isnan(phi)) throw DomainError("optimal coupling target is not bracketed by the photon flux range");
  return phi;
}

}  // namespace levmag
