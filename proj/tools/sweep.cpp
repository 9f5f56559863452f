#include "sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "levmag/csv.hpp"
#include "levmag/error.hpp"
#include "levmag/phonon.hpp"
#include "levmag/ramsey.hpp"
#include "levmag/sensitivity.hpp"

namespace levmag::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::vector<std::pair<Quantity, std::string_view>>& quantity_names() {
  static const std::vector<std::pair<Quantity, std::string_view>> names = {
      {Quantity::Psd, "psd"},
      {Quantity::SensitivityCooled, "sensitivity_cooled"},
      {Quantity::SensitivityGeneral, "sensitivity_general"},
      {Quantity::SteadyPhonon, "steady_phonon"},
      {Quantity::Ramsey, "ramsey"},
      {Quantity::Decoherence, "decoherence"},
  };
  return names;
}

const char* kDerivedAxes[] = {"g_over_omega_m", "omega_over_omega_m", "temperature_k"};

bool is_derived_axis(std::string_view key) {
  return std::find(std::begin(kDerivedAxes), std::end(kDerivedAxes), key) != std::end(kDerivedAxes);
}

// derived axes depend on the rest of the configuration, so they go last
int axis_priority(const std::string& key) {
  if (key == "temperature_k") return 1;
  if (key == "g_over_omega_m") return 2;
  if (key == "omega_over_omega_m") return 3;
  return 0;
}

std::string resolve_key(std::string_view key) {
  const auto keys = config_keys();
  for (const auto& k : keys) {
    if (k == key) return k;
  }
  for (const auto& k : keys) {
    const auto dot = k.find('.');
    if (std::string_view(k).substr(dot + 1) == key) return k;
  }
  return {};
}

std::vector<double> eval_psd(const SystemParams& p, const EvalSettings& s) {
  const OperatingPoint op = make_operating_point(p, s.regime);
  const double w = s.omega_over_omega_m * op.omega_m();
  const double chi2 = std::norm(op.chi(w));
  const auto& n = op.noise;
  const double psd = chi2 * n.total() + n.shot_floor;
  SystemParams q = p;
  q.gradient = 0.0;
  const OperatingPoint op0 = make_operating_point(q, s.regime);
  const double psd0 = std::norm(op0.chi(w)) * op0.noise.total() + op0.noise.shot_floor;
  const double rel = (psd0 - psd) / psd0;
  return {w,
          psd,
          chi2 * n.S_T,
          chi2 * n.S_F,
          chi2 * n.S_S,
          n.shot_floor,
          chi2,
          op.mean_phonon,
          psd0,
          rel,
          chi2 * n.total() / n.shot_floor,
          rel >= p.detection_threshold ? 1.0 : 0.0};
}

std::vector<double> eval_sensitivity(const SystemParams& p, const EvalSettings& s, Regime regime) {
  const OperatingPoint op = make_operating_point(p, regime);
  const double w = s.omega_over_omega_m * op.omega_m();
  const double d = regime == Regime::Cooled ? cooled_psd_derivative(op, w) : general_psd_derivative(op, w);
  if (d == 0.0) throw DomainError("PSD derivative vanishes");
  const double psd = psd_literal(op, w);
  const double eta = psd / std::abs(d) * std::sqrt(p.measurement_time_or_default());
  return {w, op.coupling(), psd, d, eta, op.mean_phonon};
}

std::vector<double> eval_steady_phonon(const SystemParams& p, const EvalSettings& s) {
  SystemParams q = p;
  // any fixed value lets the operating point build when J = 0
  q.mean_phonon = 1.0;
  const OperatingPoint op = make_operating_point(q, s.regime);
  const auto& c = op.phonon;
  const double sqrt_form = c.J > 0.0 ? steady_phonon(c) : kNaN;
  return {sqrt_form, steady_phonon_exact(c), thermal_occupation(p), c.J, c.K, c.M,
          steady_phonon_valid(p) ? 1.0 : 0.0};
}

std::vector<double> eval_ramsey(const SystemParams& p) {
  const MechanicsDerived d = derive_mechanics(p);
  const double g = coupling_from_gradient(p.gradient, d);
  const RamseyResult r = ramsey_sensitivity(g, ramsey_inputs(p));
  return {g / p.omega_m(), r.phase, r.p0, r.signal, r.slope, r.dB_psn, r.dB_spn, r.dB_min, r.eta};
}

const char* kChannels[] = {"gas_damping", "feedback", "optical_scattering", "spin_dephasing"};

std::vector<double> eval_decoherence(const SystemParams& p) {
  const DecoherenceReport rep = decoherence_budget(p);
  std::vector<double> out{rep.free_time};
  for (const char* name : kChannels) {
    auto it = std::find_if(rep.channels.begin(), rep.channels.end(),
                           [&](const DecoherenceChannel& c) { return c.name == name; });
    if (it == rep.channels.end()) {
      out.push_back(kNaN);
      out.push_back(kNaN);
    } else {
      out.push_back(it->time);
      out.push_back(it->margin);
    }
  }
  out.push_back(rep.all_pass() ? 1.0 : 0.0);
  return out;
}

std::string field(double v) { return std::isnan(v) ? std::string() : format_sci(v); }

}  // namespace

Quantity parse_quantity(std::string_view name) {
  for (const auto& [q, n] : quantity_names()) {
    if (n == name) return q;
  }
  throw ConfigError("unknown quantity '" + std::string(name) + "'");
}

std::string_view to_string(Quantity q) {
  for (const auto& [k, n] : quantity_names()) {
    if (k == q) return n;
  }
  return "";
}

Regime parse_regime(std::string_view name) {
  if (name == "cooled") return Regime::Cooled;
  if (name == "general") return Regime::General;
  throw ConfigError("unknown regime '" + std::string(name) + "' (cooled or general)");
}

Regime default_regime(Quantity q) {
  return q == Quantity::Psd || q == Quantity::SensitivityCooled ? Regime::Cooled : Regime::General;
}

std::vector<double> Axis::values() const {
  std::vector<double> v;
  v.reserve(points);
  if (points == 1) {
    v.push_back(min);
    return v;
  }
  for (std::size_t i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(points - 1);
    if (i == 0) {
      v.push_back(min);
    } else if (i == points - 1) {
      v.push_back(max);
    } else if (log) {
      v.push_back(std::exp(std::log(min) + t * (std::log(max) - std::log(min))));
    } else {
      v.push_back(min + t * (max - min));
    }
  }
  return v;
}

Axis parse_axis(std::string_view spec) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto colon = spec.find(':', start);
    parts.emplace_back(spec.substr(start, colon == std::string_view::npos ? colon : colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts.size() != 4 && parts.size() != 5) {
    throw ConfigError("sweep axis '" + std::string(spec) + "' is not KEY:MIN:MAX:N[:log]");
  }
  Axis a;
  if (is_derived_axis(parts[0])) {
    a.key = parts[0];
  } else {
    a.key = resolve_key(parts[0]);
    if (a.key.empty()) throw ConfigError("unknown sweep key '" + parts[0] + "'");
  }
  a.min = parse_double(parts[1], "sweep minimum");
  a.max = parse_double(parts[2], "sweep maximum");
  const double n = parse_double(parts[3], "sweep point count");
  if (!(n >= 1.0) || n != std::floor(n) || n > 1e7) throw ConfigError("sweep point count must be a positive integer");
  a.points = static_cast<std::size_t>(n);
  if (parts.size() == 5) {
    if (parts[4] == "log") {
      a.log = true;
    } else if (parts[4] != "lin") {
      throw ConfigError("sweep scale must be 'log' or 'lin'");
    }
  }
  if (a.log && !(a.min > 0.0 && a.max > 0.0)) throw ConfigError("log sweep needs positive bounds");
  return a;
}

std::vector<std::string> quantity_columns(Quantity q) {
  switch (q) {
    case Quantity::Psd:
      return {"omega_rad_s", "psd_total", "psd_T", "psd_F", "psd_S", "shot_floor", "chi_sq",
              "phonon_mean", "psd_uncoupled", "rel_change", "signal_to_floor", "detectable"};
    case Quantity::SensitivityCooled:
    case Quantity::SensitivityGeneral:
      return {"omega_rad_s", "coupling_rad_s", "psd", "dpsd_dB0", "eta_T_per_m_rtHz", "phonon_mean"};
    case Quantity::SteadyPhonon:
      return {"n_steady", "n_exact", "n_thermal", "J", "K", "M", "sqrt_form_valid"};
    case Quantity::Ramsey:
      return {"g_over_omega_m", "phase", "p0", "signal", "slope", "dB_psn", "dB_spn", "dB_min", "eta_T_per_m_rtHz"};
    case Quantity::Decoherence: {
      std::vector<std::string> c{"free_time_s"};
      for (const char* name : kChannels) {
        c.push_back(std::string(name) + "_time_s");
        c.push_back(std::string(name) + "_margin");
      }
      c.push_back("all_pass");
      return c;
    }
  }
  return {};
}

std::vector<double> evaluate(const SystemParams& p, const EvalSettings& s) {
  validate(p);
  switch (s.quantity) {
    case Quantity::Psd:
      return eval_psd(p, s);
    case Quantity::SensitivityCooled:
      return eval_sensitivity(p, s, Regime::Cooled);
    case Quantity::SensitivityGeneral:
      return eval_sensitivity(p, s, Regime::General);
    case Quantity::SteadyPhonon:
      return eval_steady_phonon(p, s);
    case Quantity::Ramsey:
      return eval_ramsey(p);
    case Quantity::Decoherence:
      return eval_decoherence(p);
  }
  return {};
}

SystemParams apply_axis(const SystemParams& p, const std::string& key, double value, double& omega_over_omega_m) {
  SystemParams q = p;
  if (key == "g_over_omega_m") {
    q = with_coupling(q, value);
  } else if (key == "omega_over_omega_m") {
    omega_over_omega_m = value;
  } else if (key == "temperature_k") {
    q.gas_temp = value;
    q.effective_temp = value;
  } else {
    set_config_value(q, key, format_double(value));
  }
  return q;
}

SweepTable run_sweep(const SystemParams& base, const std::vector<Axis>& axes, const EvalSettings& s,
                     unsigned threads) {
  SweepTable t;
  t.columns = quantity_columns(s.quantity);
  std::vector<std::vector<double>> grids;
  std::size_t total = 1;
  for (const auto& a : axes) {
    t.axis_keys.push_back(a.key);
    grids.push_back(a.values());
    total *= grids.back().size();
  }
  std::vector<std::size_t> order(axes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return axis_priority(axes[a].key) < axis_priority(axes[b].key); });

  t.rows.resize(total);
  auto work = [&](std::size_t idx) {
    SweepRow& row = t.rows[idx];
    row.axis_values.resize(axes.size());
    std::size_t rem = idx;
    for (std::size_t k = axes.size(); k-- > 0;) {
      row.axis_values[k] = grids[k][rem % grids[k].size()];
      rem /= grids[k].size();
    }
    try {
      EvalSettings local = s;
      SystemParams q = base;
      for (std::size_t k : order) q = apply_axis(q, axes[k].key, row.axis_values[k], local.omega_over_omega_m);
      row.values = evaluate(q, local);
    } catch (const std::exception& e) {
      row.values.assign(t.columns.size(), kNaN);
      row.error = e.what();
    }
  };

  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(total, 1))));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < threads; ++i) {
    pool.emplace_back([&] {
      for (std::size_t idx = next++; idx < total; idx = next++) work(idx);
    });
  }
  for (auto& th : pool) th.join();
  return t;
}

std::string format_table(const SweepTable& t, const std::string& manifest_digest, const std::string& params_digest) {
  std::ostringstream out;
  out << "# manifest_digest=" << manifest_digest << "\n";
  out << "# params_hash=" << params_digest << "\n";
  CsvWriter csv(out);
  std::vector<std::string> header = t.axis_keys;
  header.insert(header.end(), t.columns.begin(), t.columns.end());
  header.emplace_back("error");
  csv.row(header);
  for (const auto& r : t.rows) {
    std::vector<std::string> f;
    for (double v : r.axis_values) f.push_back(field(v));
    for (double v : r.values) f.push_back(field(v));
    f.push_back(r.error);
    csv.row(f);
  }
  return out.str();
}

}  // namespace levmag::cli
