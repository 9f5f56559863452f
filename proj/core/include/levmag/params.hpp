#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace levmag {

/// How the configured `mech_freq_khz` value maps onto the angular trap
/// frequency used everywhere else.
///   Ordinary: the value is f in kHz, omega_m = 2*pi*f   (default)
///   Angular:  the value is omega_m in units of 10^3 rad/s
enum class FreqConvention { Ordinary, Angular };

enum class PopulationSource { Lindblad, Override };

/// Units of the configured Ramsey photon count `beta`.
enum class BetaUnits { PerMeasurement, PerSecond };

struct PopulationOverride {
  double rho_aa = 0.0;
  double rho_bb = 0.0;
  double rho_cc = 1.0;
  std::complex<double> rho_ca{0.0, 0.0};
  friend bool operator==(const PopulationOverride&, const PopulationOverride&) = default;
};

/// All user-supplied physical inputs. Every value is stored in SI units;
/// unit conversion happens once, in load_config.
struct SystemParams {
  // particle
  double radius = 50e-9;     // m
  double density = 2200.0;   // kg/m^3

  // trap
  double mech_freq_khz = 38.0;
  FreqConvention freq_convention = FreqConvention::Ordinary;
  double trap_heat_rate = 0.0;        // A_t, 1/s
  double probe_heat_rate = 0.0;       // A_p, 1/s
  double optical_scatter_rate = 0.0;  // gamma_opt, 1/s

  // gas
  double gas_temp = 300.0;        // K
  double effective_temp = 4.0;    // K
  double pressure = 1e-5;         // Pa
  double viscosity = 1.8e-5;      // Pa s
  std::optional<double> knudsen_pressure;  // Pa; derived from R and T when absent

  // feedback
  double fb_coupling = 1e-7;     // chi
  double fb_gain = 1.0 / 18.0;   // G
  double photon_flux = 2.90e18;  // Phi, photons/s

  // spin (rates relative to omega_m)
  double rabi_over_omega_m = 0.8;
  std::optional<double> detuning_over_omega_m;  // empty: Delta_1 = 0 resonance
  double spin_decay_over_omega_m = 0.25;
  PopulationSource population_source = PopulationSource::Lindblad;
  PopulationOverride populations{};

  // field
  double gradient = 0.0;  // B_0, T/m

  // phonon occupation used inside the noise strengths; empty: steady state
  std::optional<double> mean_phonon;

  // ramsey readout
  double contrast = 0.05;
  double beta = 1.0e4;
  BetaUnits beta_units = BetaUnits::PerMeasurement;
  std::optional<double> beta0;
  std::optional<double> beta1;
  double phase_prefactor = 4.0;
  double dephasing_time = 0.4;  // s

  // measurement
  std::optional<double> measurement_time;  // s; empty: 2*pi/omega_m
  double detection_threshold = 2.1226e-4;

  [[nodiscard]] double omega_m() const;
  [[nodiscard]] double rabi() const { return rabi_over_omega_m * omega_m(); }
  [[nodiscard]] double spin_decay() const { return spin_decay_over_omega_m * omega_m(); }
  /// Microwave detuning Delta in rad/s. When no detuning is configured the
  /// cooling transition |c> -> |b> is put on resonance with the trap.
  [[nodiscard]] double detuning() const;
  [[nodiscard]] double free_evolution_time() const;
  [[nodiscard]] double measurement_time_or_default() const;

  friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

struct MechanicsDerived {
  double mass = 0.0;                // kg
  double zpf = 0.0;                 // z_0, m
  double effective_viscosity = 0.0; // Pa s after the Knudsen correction
  double knudsen_pressure = 0.0;    // Pa
  double friction = 0.0;            // eta_f, kg/s
  double gas_damping = 0.0;         // Gamma_0, 1/s
  double momentum_diffusion = 0.0;  // D_p, 1/s
  double position_diffusion = 0.0;  // D_q, 1/s
  double coupling = 0.0;            // g, rad/s
};

/// Rejects non-physical parameter sets with a ConfigError naming the field.
void validate(const SystemParams& p);

/// Sectioned INI text. Mandatory: particle.radius_m, particle.density_kg_m3,
/// trap.mech_freq_khz, trap.freq_convention. Values accept "a/b" fractions.
SystemParams load_config(std::string_view text);
SystemParams load_config_file(const std::string& path);
/// Inverse of load_config; load_config(save_config(p)) == p bit for bit.
std::string save_config(const SystemParams& p);

/// Sets one schema key from its textual value with the same unit handling as
/// load_config. `key` is either "section.key" or a bare key name.
void set_config_value(SystemParams& p, std::string_view key, std::string_view value);
/// Every key of the schema as "section.key".
std::vector<std::string> config_keys();

/// Shortest decimal text that parses back to exactly `v`.
std::string format_double(double v);
/// Decimal or "a/b" fraction; throws ConfigError naming `what` on junk.
double parse_double(std::string_view text, std::string_view what);

/// Crossover pressure of the continuum -> free-molecular damping rule.
double knudsen_pressure(double radius, double gas_temp);

/// Viscosity scaled by P / (P + P_kn).
double effective_viscosity(const SystemParams& p);

MechanicsDerived derive_mechanics(const SystemParams& p);

/// g = g_l mu_B B0 z0 / hbar.
double coupling_from_gradient(double gradient, const MechanicsDerived& d);
double gradient_from_coupling(double coupling, const MechanicsDerived& d);

/// Returns a copy of `p` with the gradient set so that g = g_over_omega_m * omega_m.
SystemParams with_coupling(const SystemParams& p, double g_over_omega_m);

std::string_view to_string(FreqConvention c);
std::string_view to_string(BetaUnits u);
std::string_view to_string(PopulationSource s);

}  // namespace levmag
