#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <system_error>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "levmag/constants.hpp"
#include "levmag/error.hpp"
#include "levmag/params.hpp"

namespace levmag {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<double> parse_plain(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

}  // namespace

double parse_double(std::string_view text, std::string_view what) {
  const auto slash = text.find('/');
  std::optional<double> v;
  if (slash == std::string_view::npos) {
    v = parse_plain(text);
  } else {
    auto num = parse_plain(text.substr(0, slash));
    auto den = parse_plain(text.substr(slash + 1));
    if (num && den && *den != 0.0) v = *num / *den;
  }
  if (!v || !std::isfinite(*v)) {
    throw ConfigError("key '" + std::string(what) + "': cannot parse number '" + std::string(text) + "'");
  }
  return *v;
}

namespace {

struct Field {
  std::string section;
  std::string key;
  bool mandatory = false;
  std::function<void(SystemParams&, std::string_view, const std::string&)> set;
  // nullopt: nothing to write (unset optional or load-only alias)
  std::function<std::optional<std::string>(const SystemParams&)> get;

  [[nodiscard]] std::string qualified() const { return section + "." + key; }
};

Field real(std::string section, std::string key, double SystemParams::*member, bool mandatory = false) {
  Field f{std::move(section), std::move(key), mandatory, {}, {}};
  f.set = [member](SystemParams& p, std::string_view v, const std::string& name) {
    p.*member = parse_double(v, name);
  };
  f.get = [member](const SystemParams& p) -> std::optional<std::string> { return format_double(p.*member); };
  return f;
}

Field optional_real(std::string section, std::string key, std::optional<double> SystemParams::*member) {
  Field f{std::move(section), std::move(key), false, {}, {}};
  f.set = [member](SystemParams& p, std::string_view v, const std::string& name) {
    p.*member = parse_double(v, name);
  };
  f.get = [member](const SystemParams& p) -> std::optional<std::string> {
    if (!(p.*member)) return std::nullopt;
    return format_double(*(p.*member));
  };
  return f;
}

// Optional value with a keyword meaning "derive it".
Field keyword_real(std::string section, std::string key, std::optional<double> SystemParams::*member,
                   std::string keyword) {
  Field f{std::move(section), std::move(key), false, {}, {}};
  f.set = [member, keyword](SystemParams& p, std::string_view v, const std::string& name) {
    if (trim(v) == keyword) {
      p.*member = std::nullopt;
    } else {
      p.*member = parse_double(v, name);
    }
  };
  f.get = [member, keyword](const SystemParams& p) -> std::optional<std::string> {
    if (!(p.*member)) return keyword;
    return format_double(*(p.*member));
  };
  return f;
}

template <class E>
Field enumeration(std::string section, std::string key, E SystemParams::*member,
                  std::vector<std::pair<std::string, E>> names) {
  Field f{std::move(section), std::move(key), false, {}, {}};
  f.set = [member, names](SystemParams& p, std::string_view v, const std::string& name) {
    v = trim(v);
    for (const auto& [text, value] : names) {
      if (v == text) {
        p.*member = value;
        return;
      }
    }
    std::string allowed;
    for (const auto& n : names) allowed += (allowed.empty() ? "" : "|") + n.first;
    throw ConfigError("key '" + name + "': expected one of " + allowed + ", got '" + std::string(v) + "'");
  };
  f.get = [member, names](const SystemParams& p) -> std::optional<std::string> {
    for (const auto& [text, value] : names) {
      if (p.*member == value) return text;
    }
    return std::nullopt;
  };
  return f;
}

const std::vector<Field>& schema() {
  static const std::vector<Field> fields = [] {
    std::vector<Field> f;
    f.push_back(real("particle", "radius_m", &SystemParams::radius, true));
    f.push_back(real("particle", "density_kg_m3", &SystemParams::density, true));

    f.push_back(real("trap", "mech_freq_khz", &SystemParams::mech_freq_khz, true));
    {
      auto e = enumeration<FreqConvention>(
          "trap", "freq_convention", &SystemParams::freq_convention,
          {{"ordinary", FreqConvention::Ordinary}, {"angular", FreqConvention::Angular}});
      e.mandatory = true;
      f.push_back(std::move(e));
    }
    f.push_back(real("trap", "trap_heat_rate_per_s", &SystemParams::trap_heat_rate));
    f.push_back(real("trap", "probe_heat_rate_per_s", &SystemParams::probe_heat_rate));
    f.push_back(real("trap", "optical_scatter_rate_per_s", &SystemParams::optical_scatter_rate));

    f.push_back(real("gas", "gas_temp_k", &SystemParams::gas_temp));
    f.push_back(real("gas", "effective_temp_k", &SystemParams::effective_temp));
    f.push_back(real("gas", "pressure_pa", &SystemParams::pressure));
    {
      // load-only alias; files are always written in Pa so they reload exactly
      Field mbar{"gas", "pressure_mbar", false, {}, {}};
      mbar.set = [](SystemParams& p, std::string_view v, const std::string& name) {
        p.pressure = parse_double(v, name) * constants::pa_per_mbar;
      };
      mbar.get = [](const SystemParams&) -> std::optional<std::string> { return std::nullopt; };
      f.push_back(std::move(mbar));
    }
    f.push_back(real("gas", "viscosity_pa_s", &SystemParams::viscosity));
    f.push_back(optional_real("gas", "knudsen_pressure_pa", &SystemParams::knudsen_pressure));

    f.push_back(real("feedback", "coupling_chi", &SystemParams::fb_coupling));
    f.push_back(real("feedback", "gain", &SystemParams::fb_gain));
    f.push_back(real("feedback", "photon_flux_per_s", &SystemParams::photon_flux));

    f.push_back(real("spin", "rabi_over_omega_m", &SystemParams::rabi_over_omega_m));
    f.push_back(keyword_real("spin", "detuning_over_omega_m", &SystemParams::detuning_over_omega_m, "resonant"));
    f.push_back(real("spin", "spin_decay_over_omega_m", &SystemParams::spin_decay_over_omega_m));
    f.push_back(enumeration<PopulationSource>(
        "spin", "populations", &SystemParams::population_source,
        {{"lindblad", PopulationSource::Lindblad}, {"override", PopulationSource::Override}}));
    {
      auto pop = [&f](const char* key, double PopulationOverride::*m) {
        Field x{"spin", key, false, {}, {}};
        x.set = [m](SystemParams& p, std::string_view v, const std::string& name) {
          p.populations.*m = parse_double(v, name);
        };
        x.get = [m](const SystemParams& p) -> std::optional<std::string> {
          if (p.population_source != PopulationSource::Override) return std::nullopt;
          return format_double(p.populations.*m);
        };
        f.push_back(std::move(x));
      };
      pop("rho_aa", &PopulationOverride::rho_aa);
      pop("rho_bb", &PopulationOverride::rho_bb);
      pop("rho_cc", &PopulationOverride::rho_cc);
      for (int part = 0; part < 2; ++part) {
        Field x{"spin", part == 0 ? "rho_ca_re" : "rho_ca_im", false, {}, {}};
        x.set = [part](SystemParams& p, std::string_view v, const std::string& name) {
          const double d = parse_double(v, name);
          if (part == 0) {
            p.populations.rho_ca.real(d);
          } else {
            p.populations.rho_ca.imag(d);
          }
        };
        x.get = [part](const SystemParams& p) -> std::optional<std::string> {
          if (p.population_source != PopulationSource::Override) return std::nullopt;
          return format_double(part == 0 ? p.populations.rho_ca.real() : p.populations.rho_ca.imag());
        };
        f.push_back(std::move(x));
      }
    }

    f.push_back(real("field", "gradient_t_per_m", &SystemParams::gradient));

    f.push_back(keyword_real("phonon", "mean_phonon", &SystemParams::mean_phonon, "steady"));

    f.push_back(real("ramsey", "contrast", &SystemParams::contrast));
    f.push_back(real("ramsey", "beta", &SystemParams::beta));
    f.push_back(enumeration<BetaUnits>(
        "ramsey", "beta_units", &SystemParams::beta_units,
        {{"per_measurement", BetaUnits::PerMeasurement}, {"per_second", BetaUnits::PerSecond}}));
    f.push_back(optional_real("ramsey", "beta0", &SystemParams::beta0));
    f.push_back(optional_real("ramsey", "beta1", &SystemParams::beta1));
    f.push_back(real("ramsey", "phase_prefactor", &SystemParams::phase_prefactor));
    f.push_back(real("ramsey", "dephasing_time_s", &SystemParams::dephasing_time));

    f.push_back(keyword_real("measurement", "measurement_time_s", &SystemParams::measurement_time, "auto"));
    f.push_back(real("measurement", "detection_threshold", &SystemParams::detection_threshold));
    return f;
  }();
  return fields;
}

const Field* find_field(std::string_view key) {
  const auto dot = key.find('.');
  const Field* hit = nullptr;
  for (const auto& f : schema()) {
    if (dot != std::string_view::npos) {
      if (f.section == key.substr(0, dot) && f.key == key.substr(dot + 1)) return &f;
    } else if (f.key == key) {
      if (hit) throw ConfigError("ambiguous key '" + std::string(key) + "'");
      hit = &f;
    }
  }
  return hit;
}

}  // namespace

void set_config_value(SystemParams& p, std::string_view key, std::string_view value) {
  const Field* f = find_field(key);
  if (!f) throw ConfigError("unknown key '" + std::string(key) + "'");
  f->set(p, value, f->qualified());
}

std::vector<std::string> config_keys() {
  std::vector<std::string> out;
  for (const auto& f : schema()) out.push_back(f.qualified());
  return out;
}

SystemParams load_config(std::string_view text) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    std::istringstream in{std::string(text)};
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("malformed configuration: ") + e.message() + " (line " +
                      std::to_string(e.line()) + ")");
  }

  SystemParams p;
  std::set<std::string> seen;
  for (const auto& [section, body] : tree) {
    if (body.empty()) {
      if (!body.data().empty()) throw ConfigError("key '" + section + "' is outside any section");
      continue;
    }
    for (const auto& [key, node] : body) {
      const std::string name = section + "." + key;
      const Field* f = find_field(name);
      if (!f) throw ConfigError("unknown key '" + name + "'");
      f->set(p, node.data(), name);
      seen.insert(name);
    }
  }
  if (seen.count("gas.pressure_pa") && seen.count("gas.pressure_mbar")) {
    throw ConfigError("keys 'gas.pressure_pa' and 'gas.pressure_mbar' are mutually exclusive");
  }
  for (const auto& f : schema()) {
    if (f.mandatory && !seen.count(f.qualified())) {
      throw ConfigError("missing mandatory key '" + f.qualified() + "'");
    }
  }
  validate(p);
  return p;
}

SystemParams load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open configuration file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_config(ss.str());
}

std::string save_config(const SystemParams& p) {
  std::ostringstream out;
  std::string current;
  for (const auto& f : schema()) {
    auto v = f.get(p);
    if (!v) continue;
    if (f.section != current) {
      if (!current.empty()) out << '\n';
      out << '[' << f.section << "]\n";
      current = f.section;
    }
    out << f.key << " = " << *v << '\n';
  }
  return out.str();
}

}  // namespace levmag
