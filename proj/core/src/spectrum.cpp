#include "levmag/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "levmag/constants.hpp"
#include "levmag/csv.hpp"
#include "levmag/error.hpp"
#include "levmag/model.hpp"

namespace levmag {

std::complex<double> susceptibility(double omega, double mass, double omega_m, double delta, double A_minus,
                                    double A_plus, double damping) {
  const double half = 0.5 * (A_minus - A_plus);
  const double w = omega_m + 0.5 * delta;
  const double re = w * w + half * (damping + half) - omega * omega;
  const double im = -(damping + A_minus - A_plus) * omega;
  return 1.0 / (mass * std::complex<double>(re, im));
}

NoiseBudget noise_sources(const SystemParams& p, const MechanicsDerived& d, const SpinRates& r, double mean_phonon) {
  using constants::hbar;
  if (mean_phonon < 0.0) throw DomainError("mean phonon number must be non-negative");
  if (r.A_minus < 0.0 || r.A_plus < 0.0) {
    throw DomainError("spin rates A_- and A_+ must be non-negative for the spin noise strength");
  }
  NoiseBudget nb;
  const double wm = p.omega_m();
  const double f = 1.0 + r.delta / (2.0 * wm);
  const double chi2phi = p.fb_coupling * p.fb_coupling * p.photon_flux;
  const double G = p.fb_gain;
  const double N = mean_phonon;

  nb.phonon_mean = N;
  nb.gas_damping = d.gas_damping;
  nb.feedback_damping = 12.0 * chi2phi * G * (N + 0.5);
  nb.total_damping = nb.gas_damping + nb.feedback_damping;

  nb.S_T = f * 2.0 * d.mass * d.gas_damping * constants::k_B * p.effective_temp;
  nb.S_F = f * 54.0 * d.mass * hbar * wm * chi2phi * G * G * (2.0 * N * N + 2.0 * N + 1.0);
  const double sp = std::sqrt(r.A_plus);
  const double sm = std::sqrt(r.A_minus);
  nb.S_S_literal = f * d.mass * hbar * wm * (sp + N * (sp - sm));
  nb.S_S = std::max(0.0, nb.S_S_literal);
  if (nb.S_S_literal < 0.0) {
    std::ostringstream msg;
    msg << "spin noise strength " << nb.S_S_literal << " N^2 s is negative; clamped to 0";
    nb.diagnostics.push_back(msg.str());
  }
  nb.shot_floor = d.zpf * d.zpf / chi2phi;
  return nb;
}

double peak_susceptibility_sq(double mass, double omega_m, double damping, double A_minus) {
  const double y = damping + A_minus;
  const double k = omega_m * omega_m + 0.5 * A_minus * (damping + 0.5 * A_minus);
  return 1.0 / (mass * mass * (y * y * (k - 0.5 * y * y)));
}

namespace {

struct Quadratic {
  double k;  // real-part constant
  double y;  // damping coefficient
};

Quadratic quad(double omega_m, double delta, double A_minus, double A_plus, double damping) {
  const double half = 0.5 * (A_minus - A_plus);
  const double w = omega_m + 0.5 * delta;
  return {w * w + half * (damping + half), damping + A_minus - A_plus};
}

}  // namespace

double peak_susceptibility_sq_exact(double mass, double omega_m, double delta, double A_minus, double A_plus,
                                    double damping) {
  const auto [k, y] = quad(omega_m, delta, A_minus, A_plus, damping);
  // |chi|^-2 m^-2 = (k - u)^2 + y^2 u with u = omega^2, minimised at u = k - y^2/2
  if (k > 0.5 * y * y) return 1.0 / (mass * mass * (y * y * k - 0.25 * y * y * y * y));
  return 1.0 / (mass * mass * k * k);
}

double peak_frequency(double omega_m, double delta, double A_minus, double A_plus, double damping) {
  const auto [k, y] = quad(omega_m, delta, A_minus, A_plus, damping);
  return k > 0.5 * y * y ? std::sqrt(k - 0.5 * y * y) : 0.0;
}

SpectrumResult position_psd(const std::vector<double>& omega_grid, const OperatingPoint& op) {
  if (omega_grid.size() < 2) throw DomainError("spectrum grid needs at least two points");
  for (std::size_t i = 0; i < omega_grid.size(); ++i) {
    if (omega_grid[i] < 0.0) throw DomainError("spectrum grid must be non-negative");
    if (i > 0 && !(omega_grid[i] > omega_grid[i - 1])) throw DomainError("spectrum grid must be ascending");
  }
  SpectrumResult s;
  s.noise = op.noise;
  s.diagnostics = op.noise.diagnostics;
  s.params_hash = op.params_hash;
  s.shot_floor = op.noise.shot_floor;
  const std::size_t n = omega_grid.size();
  s.omega = omega_grid;
  s.chi.resize(n);
  s.psd.resize(n);
  s.psd_T.resize(n);
  s.psd_F.resize(n);
  s.psd_S.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = op.chi(omega_grid[i]);
    const double c2 = std::norm(c);
    s.chi[i] = c;
    s.psd_T[i] = c2 * op.noise.S_T;
    s.psd_F[i] = c2 * op.noise.S_F;
    s.psd_S[i] = c2 * op.noise.S_S;
    s.psd[i] = s.psd_T[i] + s.psd_F[i] + s.psd_S[i] + s.shot_floor;
  }
  const auto it = std::max_element(s.psd.begin(), s.psd.end());
  s.grid_peak_omega = s.omega[static_cast<std::size_t>(it - s.psd.begin())];
  s.grid_peak_psd = *it;

  const auto& r = op.rates;
  const double gamma = op.noise.total_damping;
  s.peak_omega = peak_frequency(op.omega_m(), r.delta, r.A_minus, r.A_plus, gamma);
  s.peak_chi_sq_exact = peak_susceptibility_sq_exact(op.mech.mass, op.omega_m(), r.delta, r.A_minus, r.A_plus, gamma);
  s.peak_chi_sq_literal = peak_susceptibility_sq(op.mech.mass, op.omega_m(), gamma, r.A_minus);
  if (r.A_plus != 0.0 || r.delta != 0.0) {
    s.diagnostics.emplace_back("closed-form peak assumes A_+ = delta = 0; literal peak value is approximate");
  }
  return s;
}

void write_csv(std::ostream& out, const SpectrumResult& s) {
  out << "# params_hash=" << s.params_hash << "\n";
  CsvWriter w(out);
  w.row({"omega_rad_s", "chi_re", "chi_im", "psd_total", "psd_T", "psd_F", "psd_S", "shot_floor"});
  for (std::size_t i = 0; i < s.omega.size(); ++i) {
    w.numbers({s.omega[i], s.chi[i].real(), s.chi[i].imag(), s.psd[i], s.psd_T[i], s.psd_F[i], s.psd_S[i],
               s.shot_floor});
  }
}

}  // namespace levmag
