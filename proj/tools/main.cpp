// levmag: evaluate, sweep and validate the levitated spin-mechanical
// magnetometry model from an INI configuration.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "levmag/detection.hpp"
#include "levmag/digest.hpp"
#include "levmag/error.hpp"
#include "manifest.hpp"
#include "sweep.hpp"
#include "validate.hpp"

namespace fs = std::filesystem;
using namespace levmag;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Common {
  std::string config;
  std::string convention;
  std::string out = "levmag_out";
  std::uint64_t seed = 1;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
};

void add_common(CLI::App* cmd, Common& c, bool config_required) {
  auto* opt = cmd->add_option("--config", c.config, "INI configuration file");
  if (config_required) opt->required();
  cmd->add_option("--freq-convention", c.convention, "Override trap.freq_convention")
      ->check(CLI::IsMember({"angular", "ordinary"}));
  cmd->add_option("--out", c.out, "Output directory")->capture_default_str();
  cmd->add_option("--seed", c.seed, "Random seed recorded in the manifest")->capture_default_str();
  cmd->add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);
}

SystemParams load(const Common& c) {
  SystemParams p = c.config.empty() ? SystemParams{} : load_config_file(c.config);
  if (c.convention == "angular") p.freq_convention = FreqConvention::Angular;
  if (c.convention == "ordinary") p.freq_convention = FreqConvention::Ordinary;
  validate(p);
  return p;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + path.string());
  f << text;
}

cli::RunManifest base_manifest(const std::string& command, int argc, char** argv, const SystemParams& p,
                               const Common& c) {
  cli::RunManifest m;
  m.command = command;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    // outputs must not depend on where they are written or how many threads ran
    if (a == "--out" || a == "--threads") {
      ++i;
      continue;
    }
    m.arguments.push_back(a);
  }
  m.config_digest = params_hash(p);
  m.seed = c.seed;
  m.versions = cli::build_versions();
  m.wall_clock = cli::utc_now();
  return m;
}

int do_evaluate(const std::string& command, int argc, char** argv, const Common& c, const std::string& quantity,
                const std::string& regime, double omega_ratio, const std::vector<std::string>& sweeps) {
  const SystemParams p = load(c);
  cli::EvalSettings s;
  s.quantity = cli::parse_quantity(quantity);
  s.regime = regime.empty() ? cli::default_regime(s.quantity) : cli::parse_regime(regime);
  s.omega_over_omega_m = omega_ratio;
  std::vector<cli::Axis> axes;
  for (const auto& spec : sweeps) axes.push_back(cli::parse_axis(spec));

  const cli::SweepTable t = cli::run_sweep(p, axes, s, c.threads);
  const std::string csv_name = std::string(cli::to_string(s.quantity)) + ".csv";
  cli::RunManifest m = base_manifest(command, argc, argv, p, c);
  m.outputs = {csv_name};
  m.settings = {{"quantity", std::string(cli::to_string(s.quantity))},
                {"regime", std::string(to_string(s.regime))},
                {"omega_over_omega_m", format_double(s.omega_over_omega_m)}};
  const std::string digest = m.digest();

  fs::create_directories(c.out);
  write_file(fs::path(c.out) / csv_name, cli::format_table(t, digest, m.config_digest));
  write_file(fs::path(c.out) / "manifest.json", m.to_json());

  std::size_t failed = 0;
  for (const auto& r : t.rows) failed += r.error.empty() ? 0 : 1;
  std::cout << "wrote " << (fs::path(c.out) / csv_name).string() << " (" << t.rows.size() << " rows";
  if (failed) std::cout << ", " << failed << " with errors";
  std::cout << ")\n";
  return kExitOk;
}

int do_validate(int argc, char** argv, const Common& c, const std::string& suite, std::size_t n_traj,
                std::size_t fd_points) {
  const SystemParams p = load(c);
  cli::ValidateOptions o;
  o.seed = c.seed;
  o.n_traj = n_traj;
  o.fd_points = fd_points;
  o.threads = c.threads;
  std::vector<std::string> names = suite == "all" ? cli::suite_names() : std::vector<std::string>{suite};
  std::vector<cli::SuiteReport> reports;
  for (const auto& n : names) reports.push_back(cli::run_suite(n, p, o));

  cli::RunManifest m = base_manifest("validate", argc, argv, p, c);
  m.outputs = {"validate_report.txt", "validate_report.json"};
  m.settings = {{"suite", suite}, {"n_traj", std::to_string(n_traj)}, {"fd_points", std::to_string(fd_points)}};
  const std::string digest = m.digest();
  const std::string text = cli::format_report(reports, digest);
  fs::create_directories(c.out);
  write_file(fs::path(c.out) / "validate_report.txt", text);
  write_file(fs::path(c.out) / "validate_report.json", cli::report_json(reports, digest));
  write_file(fs::path(c.out) / "manifest.json", m.to_json());
  std::cout << text;
  for (const auto& r : reports) {
    if (!r.pass()) return kExitFail;
  }
  return kExitOk;
}

int do_calibrate(int argc, char** argv, const Common& c, double target_g, double g_min) {
  SystemParams p = load(c);
  p.photon_flux = calibrate_photon_flux(p, target_g);
  p.detection_threshold = resonant_relative_change(p, g_min);
  const DetectionWindow w = detection_window(p);

  cli::RunManifest m = base_manifest("calibrate", argc, argv, p, c);
  m.outputs = {"calibrated.ini"};
  m.settings = {{"target_g_over_omega_m", format_double(target_g)}, {"g_min_over_omega_m", format_double(g_min)}};
  fs::create_directories(c.out);
  write_file(fs::path(c.out) / "calibrated.ini", "# manifest_digest=" + m.digest() + "\n" + save_config(p));
  write_file(fs::path(c.out) / "manifest.json", m.to_json());
  std::cout << "photon_flux_per_s = " << format_double(p.photon_flux) << "\n"
            << "detection_threshold = " << format_double(p.detection_threshold) << "\n"
            << "g_min/omega_m = " << format_double(w.g_min) << "\n"
            << "g_max/omega_m = " << format_double(w.g_max) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"levmag: magnetic field gradient sensing with a levitated spin-mechanical oscillator"};
  app.require_subcommand(1);

  Common common;
  std::string quantity = "psd";
  std::string regime;
  double omega_ratio = 1.0;
  std::vector<std::string> sweeps;

  auto* run = app.add_subcommand("run", "Evaluate one quantity at the configured point");
  add_common(run, common, true);
  auto add_quantity = [&](CLI::App* cmd) {
    cmd->add_option("--quantity", quantity,
                    "psd | sensitivity_cooled | sensitivity_general | steady_phonon | ramsey | decoherence")
        ->capture_default_str();
    cmd->add_option("--regime", regime, "cooled | general (default depends on quantity)");
    cmd->add_option("--omega", omega_ratio, "Evaluation frequency in units of omega_m")->capture_default_str();
  };
  add_quantity(run);

  auto* sweep = app.add_subcommand("sweep", "Evaluate a quantity over a grid of parameter values");
  add_common(sweep, common, true);
  add_quantity(sweep);
  sweep->add_option("--sweep", sweeps, "KEY:MIN:MAX:N[:log], repeat for a grid")->required();

  std::string suite = "all";
  std::size_t n_traj = 400;
  std::size_t fd_points = 20;
  auto* val = app.add_subcommand("validate", "Run oracle comparison suites");
  add_common(val, common, false);
  val->add_option("--suite", suite, "langevin | ramsey | finite_diff | all")
      ->check(CLI::IsMember({"langevin", "ramsey", "finite_diff", "all"}))
      ->capture_default_str();
  val->add_option("--n-traj", n_traj, "Langevin trajectories")->capture_default_str();
  val->add_option("--fd-points", fd_points, "Random points per regime")->capture_default_str();

  double target_g = 0.11;
  double g_min = 2e-3;
  auto* cal = app.add_subcommand("calibrate", "Fit the photon flux and detection threshold");
  add_common(cal, common, true);
  cal->add_option("--target-g", target_g, "Coupling of the sensitivity optimum, units of omega_m")
      ->capture_default_str();
  cal->add_option("--g-min", g_min, "Smallest detectable coupling, units of omega_m")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run) return do_evaluate("run", argc, argv, common, quantity, regime, omega_ratio, {});
    if (*sweep) return do_evaluate("sweep", argc, argv, common, quantity, regime, omega_ratio, sweeps);
    if (*val) return do_validate(argc, argv, common, suite, n_traj, fd_points);
    if (*cal) return do_calibrate(argc, argv, common, target_g, g_min);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
