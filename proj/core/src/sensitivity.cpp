#include "levmag/sensitivity.hpp"

#include <cmath>
#include <sstream>

#include "levmag/constants.hpp"
#include "levmag/error.hpp"

namespace levmag {

std::string_view to_string(SweepAxis a) {
  switch (a) {
    case SweepAxis::Frequency:
      return "omega_over_omega_m";
    case SweepAxis::Coupling:
      return "g_over_omega_m";
    case SweepAxis::Pressure:
      return "pressure_pa";
    case SweepAxis::Temperature:
      return "temperature_k";
  }
  return "";
}

namespace {

double gradient_per_coupling(const OperatingPoint& op) {
  // dg/dB0
  return constants::mu_B * constants::lande_g * op.mech.zpf / constants::hbar;
}

void require_regime(const OperatingPoint& op, Regime r) {
  if (op.regime != r) {
    throw DomainError(std::string("operating point is in the ") + std::string(to_string(op.regime)) +
                      " regime, expected " + std::string(to_string(r)));
  }
}

}  // namespace

double cooled_bracket(const OperatingPoint& op, double omega) {
  require_regime(op, Regime::Cooled);
  const double g = op.coupling();
  if (g == 0.0) throw DomainError("sensitivity undefined at g = 0: the PSD derivative vanishes");
  const double m = op.mech.mass;
  const double wm = op.omega_m();
  const double a = op.alpha_resonant;
  const double A = op.rates.A_minus;
  const double gamma = op.noise.total_damping;
  const double chi2 = std::norm(op.chi(omega));
  const double S = op.noise.total_literal();
  const double D = 2.0 * m * m * g * a * (gamma + A) * chi2 * S *
                   (wm * wm + omega * omega + 0.5 * A * (gamma + 0.5 * A));
  return D + m * constants::hbar * wm * op.mean_phonon * std::sqrt(a);
}

double cooled_psd_derivative(const OperatingPoint& op, double omega) {
  return -gradient_per_coupling(op) * std::norm(op.chi(omega)) * cooled_bracket(op, omega);
}

GeneralTerms general_terms(const OperatingPoint& op, double omega) {
  require_regime(op, Regime::General);
  using constants::hbar;
  const double g = op.coupling();
  if (g == 0.0) throw DomainError("sensitivity undefined at g = 0: the PSD derivative vanishes");
  const double N = op.mean_phonon;
  if (!(N > 0.0)) {
    throw DomainError("general-regime sensitivity divides by <N>; use the cooled regime for <N> = 0");
  }
  const auto& p = op.params;
  const double m = op.mech.mass;
  const double wm = op.omega_m();
  const double a1 = op.rates.alpha1;
  const double a2 = op.rates.alpha2;
  const double a3 = op.rates.alpha3;
  const double Am = op.rates.A_minus;
  const double Ap = op.rates.A_plus;
  const double de = op.rates.delta;
  const double J = op.phonon.J;
  const double f = 1.0 + de / (2.0 * wm);
  const double gamma = op.noise.total_damping;
  const double chi2phi = p.fb_coupling * p.fb_coupling * p.photon_flux;
  const double G = p.fb_gain;
  const double sp = std::sqrt(Ap);
  const double sm = std::sqrt(Am);
  // alpha_i / sqrt(A_i) written without the 0/0 at alpha_i = 0
  const double a2_over_sp = std::sqrt(0.5 * a2) / g;
  const double a1_over_sm = std::sqrt(0.5 * a1) / g;

  GeneralTerms t;
  t.D1 = 2.0 * g * a3 / wm * 2.0 * m * op.mech.gas_damping * constants::k_B * p.effective_temp;
  t.D2 = 108.0 * m * g * hbar * wm * chi2phi * G * G *
         (a3 / wm * (2.0 * N * N + 2.0 * N + 1.0) + f * a2 / J * (2.0 + 1.0 / N));
  t.D3 = m * hbar * wm * 2.0 * g *
         (a3 / wm * (sp + N * (sp - sm)) +
          f * (a2_over_sp + N * (a2_over_sp - a1_over_sm) + 0.5 / N * a2 / J * (sp - sm)));

  const double chi2 = std::norm(op.chi(omega));
  const double half = 0.5 * (Am - Ap);
  const double w = wm + 0.5 * de;
  const double Y = gamma + Am - Ap;
  const double X = w * w + half * (gamma + half) - omega * omega;
  t.D4 = -8.0 * m * m * g * chi2 * chi2 *
         (X * (a3 * w + 0.5 * (a1 - a2) * Y) + (a1 - a2) * Y * omega * omega);
  return t;
}

double general_psd_derivative(const OperatingPoint& op, double omega) {
  const GeneralTerms t = general_terms(op, omega);
  const double chi2 = std::norm(op.chi(omega));
  return gradient_per_coupling(op) * (chi2 * (t.D1 + t.D2 + t.D3) + t.D4 * op.noise.total_literal());
}

double sensitivity_cooled_at(const OperatingPoint& op, double omega, double t_m) {
  const double d = cooled_psd_derivative(op, omega);
  if (d == 0.0) throw DomainError("PSD derivative vanishes");
  return psd_literal(op, omega) / std::abs(d) * std::sqrt(t_m);
}

double sensitivity_general_at(const OperatingPoint& op, double omega, double t_m) {
  const double d = general_psd_derivative(op, omega);
  if (d == 0.0) throw DomainError("PSD derivative vanishes");
  return psd_literal(op, omega) / std::abs(d) * std::sqrt(t_m);
}

namespace {

void flag_poles(SensitivityCurve& c) {
  for (std::size_t i = 1; i < c.derivative.size(); ++i) {
    if ((c.derivative[i - 1] < 0.0) != (c.derivative[i] < 0.0)) {
      std::ostringstream msg;
      msg << "PSD derivative changes sign between x=" << c.x[i - 1] << " and x=" << c.x[i]
          << "; eta_B has a pole there";
      c.diagnostics.push_back(msg.str());
    }
  }
}

SensitivityCurve frequency_curve(const std::vector<double>& omega_grid, const OperatingPoint& op, double t_m,
                                 double (*deriv)(const OperatingPoint&, double)) {
  SensitivityCurve c;
  c.axis = SweepAxis::Frequency;
  c.regime = op.regime;
  c.meta = save_config(op.params);
  c.diagnostics = op.noise.diagnostics;
  const double wm = op.omega_m();
  for (double w : omega_grid) {
    const double d = deriv(op, w);
    const double psd = psd_literal(op, w);
    c.x.push_back(w / wm);
    c.psd.push_back(psd);
    c.derivative.push_back(d);
    c.eta.push_back(psd / std::abs(d) * std::sqrt(t_m));
  }
  flag_poles(c);
  return c;
}

}  // namespace

SensitivityCurve sensitivity_cooled(const std::vector<double>& omega_grid, const OperatingPoint& op, double t_m) {
  require_regime(op, Regime::Cooled);
  return frequency_curve(omega_grid, op, t_m, &cooled_psd_derivative);
}

SensitivityCurve sensitivity_general(const std::vector<double>& omega_grid, const OperatingPoint& op, double t_m) {
  require_regime(op, Regime::General);
  return frequency_curve(omega_grid, op, t_m, &general_psd_derivative);
}

SensitivityCurve sensitivity_sweep(const SystemParams& p, Regime regime, SweepAxis axis,
                                   const std::vector<double>& xs, double omega_over_omega_m) {
  SensitivityCurve c;
  c.axis = axis;
  c.regime = regime;
  c.meta = save_config(p);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0 && !(xs[i] > xs[i - 1])) throw DomainError("sweep axis must be strictly ascending");
  }
  for (double x : xs) {
    SystemParams q = p;
    double w_ratio = omega_over_omega_m;
    switch (axis) {
      case SweepAxis::Frequency:
        w_ratio = x;
        break;
      case SweepAxis::Coupling:
        q = with_coupling(p, x);
        break;
      case SweepAxis::Pressure:
        q.pressure = x;
        break;
      case SweepAxis::Temperature:
        q.gas_temp = x;
        q.effective_temp = x;
        break;
    }
    const OperatingPoint op = make_operating_point(q, regime);
    const double w = w_ratio * op.omega_m();
    const double d = regime == Regime::Cooled ? cooled_psd_derivative(op, w) : general_psd_derivative(op, w);
    const double psd = psd_literal(op, w);
    c.x.push_back(x);
    c.psd.push_back(psd);
    c.derivative.push_back(d);
    c.eta.push_back(psd / std::abs(d) * std::sqrt(q.measurement_time_or_default()));
  }
  flag_poles(c);
  return c;
}

}  // namespace levmag
