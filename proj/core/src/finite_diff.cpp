#include "levmag/oracles/finite_diff.hpp"

#include <cmath>
#include <random>

#include "levmag/error.hpp"
#include "levmag/sensitivity.hpp"

namespace levmag::oracles {

double fd_psd_derivative(const OperatingPoint& op, double omega, double rel_step) {
  const double B0 = op.params.gradient;
  if (B0 == 0.0) throw DomainError("finite differences need a non-zero gradient");
  auto f = [&](double B) { return psd_literal(at_gradient(op, B), omega); };
  auto central = [&](double h) { return (f(B0 + h) - f(B0 - h)) / (2.0 * h); };
  const double h = rel_step * std::abs(B0);
  return (4.0 * central(0.5 * h) - central(h)) / 3.0;
}

DerivativeCheck check_derivative(const SystemParams& p, Regime regime, double omega_over_omega_m) {
  const OperatingPoint free = make_operating_point(p, regime);
  OperatingOptions opt;
  opt.frozen_damping = free.noise.total_damping;
  const OperatingPoint op = make_operating_point(p, regime, opt);
  const double w = omega_over_omega_m * op.omega_m();

  DerivativeCheck c;
  c.regime = regime;
  c.coupling_over_omega_m = op.coupling() / op.omega_m();
  c.omega_over_omega_m = omega_over_omega_m;
  c.pressure = p.pressure;
  c.analytic = regime == Regime::Cooled ? cooled_psd_derivative(op, w) : general_psd_derivative(op, w);
  c.numeric = fd_psd_derivative(op, w);
  c.rel_error = std::abs(c.analytic - c.numeric) / std::abs(c.numeric);
  return c;
}

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

}  // namespace

std::vector<DerivativeSample> random_derivative_points(const SystemParams& base, Regime regime,
                                                       std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<DerivativeSample> out;
  out.reserve(count);
  std::size_t attempts = 0;
  while (out.size() < count) {
    if (++attempts > 100 * count) throw DomainError("could not draw valid derivative check points");
    SystemParams p = base;
    DerivativeSample s;
    if (regime == Regime::Cooled) {
      p.mean_phonon = uniform(rng, 0.1, 5.0);
      p.pressure = log_uniform(rng, 1e-6, 10.0);
      p.effective_temp = uniform(rng, 1.0, 300.0);
      p = with_coupling(p, log_uniform(rng, 0.01, 0.6));
    } else {
      p.mean_phonon.reset();
      p.gas_temp = 300.0;
      p.effective_temp = 300.0;
      p.pressure = log_uniform(rng, 1e-3, 100.0);
      p.optical_scatter_rate = log_uniform(rng, 1.0, 1e4);
      p = with_coupling(p, log_uniform(rng, 0.05, 1.0));
    }
    s.omega_over_omega_m = uniform(rng, 0.5, 1.5);
    try {
      const OperatingPoint op = make_operating_point(p, regime);
      if (!(op.mean_phonon > 0.0)) continue;
    } catch (const DomainError&) {
      continue;
    }
    s.params = p;
    out.push_back(s);
  }
  return out;
}

}  // namespace levmag::oracles
