#include "levmag/ramsey.hpp"

#include <cmath>
#include <limits>

#include "levmag/constants.hpp"
#include "levmag/error.hpp"

namespace levmag {

RamseyInputs ramsey_inputs(const SystemParams& p) {
  RamseyInputs in;
  const MechanicsDerived d = derive_mechanics(p);
  in.omega_m = p.omega_m();
  in.zpf = d.zpf;
  in.free_time = constants::two_pi / in.omega_m;
  in.phase_prefactor = p.phase_prefactor;
  const double scale = p.beta_units == BetaUnits::PerSecond ? in.free_time : 1.0;
  if (p.beta0 && p.beta1) {
    in.beta0 = *p.beta0 * scale;
    in.beta1 = *p.beta1 * scale;
    in.beta = 0.5 * (in.beta0 + in.beta1);
    in.contrast = (in.beta0 - in.beta1) / (in.beta0 + in.beta1);
  } else {
    in.beta = p.beta * scale;
    in.contrast = p.contrast;
    in.beta0 = in.beta * (1.0 + in.contrast);
    in.beta1 = in.beta * (1.0 - in.contrast);
  }
  return in;
}

RamseyPhase ramsey_population(double coupling, double omega_m, double phase_prefactor) {
  const double T = constants::two_pi / omega_m;
  RamseyPhase r;
  r.phase = phase_prefactor * coupling * coupling * T / omega_m;
  r.p0 = 0.5 * (1.0 - std::cos(r.phase));
  return r;
}

RamseyResult ramsey_sensitivity(double coupling, const RamseyInputs& in) {
  if (coupling == 0.0) throw DomainError("Ramsey sensitivity undefined at g = 0: the fringe has no slope");
  if (!(in.beta > 0.0)) throw DomainError("Ramsey readout needs beta > 0");
  if (!(in.contrast > 0.0 && in.contrast <= 1.0)) throw DomainError("Ramsey readout needs 0 < contrast <= 1");
  RamseyResult r;
  r.coupling = coupling;
  const auto ph = ramsey_population(coupling, in.omega_m, in.phase_prefactor);
  r.phase = ph.phase;
  r.p0 = ph.p0;
  const double c = std::cos(ph.phase);
  r.signal = 0.5 * (in.beta0 + in.beta1) - 0.5 * (in.beta0 - in.beta1) * c;
  // dS/dB0 = (beta0 - beta1)/2 sin(phase) * 2 k g T / omega_m * dg/dB0
  const double dg_dB = constants::lande_g * constants::mu_B * in.zpf / constants::hbar;
  r.slope = 0.5 * (in.beta0 - in.beta1) * 2.0 * in.phase_prefactor * std::abs(coupling) * in.free_time /
            in.omega_m * dg_dB;
  const double c4 = c * c * c * c;
  r.dB_psn = std::sqrt(in.beta) / r.slope;
  r.dB_spn = std::sqrt(1.0 - c4) / r.slope;
  r.dB_min = std::sqrt(in.beta + 1.0 - c4) / r.slope;
  r.eta = r.dB_min * std::sqrt(in.free_time);
  return r;
}

bool DecoherenceReport::all_pass() const {
  for (const auto& c : channels)
    if (!c.pass) return false;
  return true;
}

DecoherenceReport decoherence_budget(const SystemParams& p) {
  DecoherenceReport rep;
  rep.free_time = p.free_evolution_time();
  const double inf = std::numeric_limits<double>::infinity();
  const MechanicsDerived d = derive_mechanics(p);
  const double N = p.mean_phonon.value_or(0.0);
  const double chi2phi = p.fb_coupling * p.fb_coupling * p.photon_flux;
  const double feedback = 12.0 * chi2phi * p.fb_gain * (N + 0.5);
  auto channel = [&rep](std::string name, double time) {
    DecoherenceChannel c{std::move(name), time, time / rep.free_time, false};
    c.pass = c.margin > 1.0;
    rep.channels.push_back(c);
  };
  channel("gas_damping", d.gas_damping > 0.0 ? 1.0 / d.gas_damping : inf);
  channel("feedback", feedback > 0.0 ? 1.0 / feedback : inf);
  channel("optical_scattering", p.optical_scatter_rate > 0.0 ? 1.0 / p.optical_scatter_rate : inf);
  channel("spin_dephasing", p.dephasing_time);
  return rep;
}

}  // namespace levmag
