#include "levmag/params.hpp"

#include <cmath>
#include <string>

#include "levmag/constants.hpp"
#include "levmag/error.hpp"

namespace levmag {

namespace {

// Kinetic diameter of N2/O2 air molecules.
constexpr double kAirMoleculeDiameter = 0.372e-9;  // m

// Free-molecular limit of the sphere drag, Gamma_0 -> (6 pi mu R / m) * 0.619 / Kn.
constexpr double kFreeMolecularFactor = 0.619;

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ConfigError(std::string("parameter '") + name + "' must be positive and finite");
  }
}

void require_nonnegative(double v, const char* name) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw ConfigError(std::string("parameter '") + name + "' must be non-negative and finite");
  }
}

}  // namespace

double SystemParams::omega_m() const {
  switch (freq_convention) {
    case FreqConvention::Ordinary:
      return constants::two_pi * mech_freq_khz * 1e3;
    case FreqConvention::Angular:
      return mech_freq_khz * 1e3;
  }
  return 0.0;
}

double SystemParams::detuning() const {
  const double wm = omega_m();
  if (detuning_over_omega_m) return *detuning_over_omega_m * wm;
  // omega_b - omega_c = omega_a; setting omega_a = omega_m gives
  // Delta = (Omega0^2 - 2 omega_m^2) / (2 omega_m).
  const double rabi = rabi_over_omega_m * wm;
  return (rabi * rabi - 2.0 * wm * wm) / (2.0 * wm);
}

double SystemParams::free_evolution_time() const { return constants::two_pi / omega_m(); }

double SystemParams::measurement_time_or_default() const {
  return measurement_time.value_or(free_evolution_time());
}

void validate(const SystemParams& p) {
  require_positive(p.radius, "radius");
  require_positive(p.density, "density");
  require_positive(p.mech_freq_khz, "mech_freq_khz");
  require_positive(p.gas_temp, "gas_temp");
  require_positive(p.effective_temp, "effective_temp");
  require_positive(p.pressure, "pressure");
  require_nonnegative(p.viscosity, "viscosity");
  if (p.knudsen_pressure) require_positive(*p.knudsen_pressure, "knudsen_pressure");
  require_nonnegative(p.trap_heat_rate, "trap_heat_rate");
  require_nonnegative(p.probe_heat_rate, "probe_heat_rate");
  require_nonnegative(p.optical_scatter_rate, "optical_scatter_rate");
  require_positive(p.fb_coupling, "coupling_chi");
  require_positive(p.fb_gain, "gain");
  require_positive(p.photon_flux, "photon_flux");
  require_nonnegative(p.rabi_over_omega_m, "rabi_over_omega_m");
  require_positive(p.spin_decay_over_omega_m, "spin_decay_over_omega_m");
  if (!std::isfinite(p.gradient)) throw ConfigError("parameter 'gradient' must be finite");
  if (p.mean_phonon) require_nonnegative(*p.mean_phonon, "mean_phonon");
  if (!(p.contrast >= 0.0 && p.contrast <= 1.0)) {
    throw ConfigError("parameter 'contrast' must lie in [0, 1]");
  }
  require_positive(p.beta, "beta");
  if (p.beta0) require_nonnegative(*p.beta0, "beta0");
  if (p.beta1) require_nonnegative(*p.beta1, "beta1");
  if (p.beta0 && p.beta1 && *p.beta1 > *p.beta0) {
    throw ConfigError("parameter 'beta1' must not exceed 'beta0'");
  }
  require_positive(p.phase_prefactor, "phase_prefactor");
  require_positive(p.dephasing_time, "dephasing_time");
  if (p.measurement_time) require_positive(*p.measurement_time, "measurement_time");
  require_positive(p.detection_threshold, "detection_threshold");

  if (p.population_source == PopulationSource::Override) {
    const auto& o = p.populations;
    require_nonnegative(o.rho_aa, "rho_aa");
    require_nonnegative(o.rho_bb, "rho_bb");
    require_nonnegative(o.rho_cc, "rho_cc");
    if (std::abs(o.rho_aa + o.rho_bb + o.rho_cc - 1.0) > 1e-10) {
      throw ConfigError("population override must satisfy rho_aa + rho_bb + rho_cc = 1");
    }
    if (std::norm(o.rho_ca) > o.rho_cc * o.rho_aa * (1.0 + 1e-12)) {
      throw ConfigError("population override violates |rho_ca|^2 <= rho_cc rho_aa");
    }
  }
}

double knudsen_pressure(double radius, double gas_temp) {
  // Mean free path times pressure for a hard-sphere gas.
  const double lambda_p = constants::k_B * gas_temp /
                          (std::sqrt(2.0) * constants::pi * kAirMoleculeDiameter * kAirMoleculeDiameter);
  return lambda_p / (kFreeMolecularFactor * radius);
}

double effective_viscosity(const SystemParams& p) {
  const double p_kn = p.knudsen_pressure.value_or(knudsen_pressure(p.radius, p.gas_temp));
  return p.viscosity * p.pressure / (p.pressure + p_kn);
}

MechanicsDerived derive_mechanics(const SystemParams& p) {
  using constants::hbar;
  using constants::k_B;
  validate(p);

  MechanicsDerived d;
  const double wm = p.omega_m();
  d.mass = 4.0 / 3.0 * constants::pi * p.radius * p.radius * p.radius * p.density;
  d.zpf = std::sqrt(hbar / (2.0 * d.mass * wm));
  d.knudsen_pressure = p.knudsen_pressure.value_or(knudsen_pressure(p.radius, p.gas_temp));
  d.effective_viscosity = effective_viscosity(p);
  d.friction = 6.0 * constants::pi * d.effective_viscosity * p.radius;
  d.gas_damping = d.friction / d.mass;
  const double z0sq = d.zpf * d.zpf;
  d.momentum_diffusion = 2.0 * d.friction * k_B * p.gas_temp * z0sq / (hbar * hbar);
  d.position_diffusion =
      d.friction * hbar * hbar / (24.0 * k_B * p.gas_temp * d.mass * d.mass * z0sq);
  d.coupling = coupling_from_gradient(p.gradient, d);
  return d;
}

double coupling_from_gradient(double gradient, const MechanicsDerived& d) {
  return constants::lande_g * constants::mu_B * gradient * d.zpf / constants::hbar;
}

double gradient_from_coupling(double coupling, const MechanicsDerived& d) {
  return coupling * constants::hbar / (constants::lande_g * constants::mu_B * d.zpf);
}

SystemParams with_coupling(const SystemParams& p, double g_over_omega_m) {
  SystemParams q = p;
  q.gradient = 0.0;
  const MechanicsDerived d = derive_mechanics(q);
  q.gradient = gradient_from_coupling(g_over_omega_m * p.omega_m(), d);
  return q;
}

std::string_view to_string(FreqConvention c) {
  return c == FreqConvention::Ordinary ? "ordinary" : "angular";
}

std::string_view to_string(BetaUnits u) {
  return u == BetaUnits::PerMeasurement ? "per_measurement" : "per_second";
}

std::string_view to_string(PopulationSource s) {
  return s == PopulationSource::Lindblad ? "lindblad" : "override";
}

}  // namespace levmag
