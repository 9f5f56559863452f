#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "levmag/model.hpp"
#include "levmag/params.hpp"

namespace levmag::cli {

enum class Quantity { Psd, SensitivityCooled, SensitivityGeneral, SteadyPhonon, Ramsey, Decoherence };

Quantity parse_quantity(std::string_view name);
std::string_view to_string(Quantity q);
Regime parse_regime(std::string_view name);
/// psd and sensitivity_cooled default to the cooled regime, everything else
/// to the general one.
Regime default_regime(Quantity q);

/// One sweep axis, KEY:MIN:MAX:N[:log]. KEY is a config key ("gas.pressure_pa"
/// or bare "pressure_pa") or one of the derived axes
///   g_over_omega_m      coupling, sets the gradient
///   omega_over_omega_m  evaluation frequency
///   temperature_k       gas and effective temperature together
struct Axis {
  std::string key;
  double min = 0.0;
  double max = 0.0;
  std::size_t points = 1;
  bool log = false;
  [[nodiscard]] std::vector<double> values() const;
};

/// Throws ConfigError on malformed specs or unknown keys.
Axis parse_axis(std::string_view spec);

struct EvalSettings {
  Quantity quantity = Quantity::Psd;
  Regime regime = Regime::Cooled;
  double omega_over_omega_m = 1.0;
};

/// Output columns of a quantity, without axis or error columns.
std::vector<std::string> quantity_columns(Quantity q);

/// Evaluates the quantity at one parameter set. Values line up with
/// quantity_columns; NaN marks a field with no value.
std::vector<double> evaluate(const SystemParams& p, const EvalSettings& s);

struct SweepRow {
  std::vector<double> axis_values;
  std::vector<double> values;
  std::string error;
};

struct SweepTable {
  std::vector<std::string> axis_keys;
  std::vector<std::string> columns;
  std::vector<SweepRow> rows;
};

/// Cartesian product of the axes, first axis outermost. Points are
/// evaluated on `threads` workers; rows come back in axis order and a point
/// that throws is kept as a row carrying the message.
SweepTable run_sweep(const SystemParams& base, const std::vector<Axis>& axes, const EvalSettings& s,
                     unsigned threads);

/// Applies one axis value to a copy of `p`. The evaluation frequency is
/// returned through `omega_over_omega_m`.
SystemParams apply_axis(const SystemParams& p, const std::string& key, double value, double& omega_over_omega_m);

/// CSV with '#' comment lines for the manifest digest and the base
/// parameter hash, then a header row.
std::string format_table(const SweepTable& t, const std::string& manifest_digest, const std::string& params_digest);

}  // namespace levmag::cli
