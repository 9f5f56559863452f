#include <gtest/gtest.h>

#include <cmath>

#include "levmag/constants.hpp"
#include "levmag/error.hpp"
#include "levmag/oracles/fock.hpp"
#include "levmag/oracles/langevin.hpp"
#include "levmag/oracles/philox.hpp"
#include "levmag/oracles/welch.hpp"
#include "levmag/ramsey.hpp"
#include "test_util.hpp"

using namespace levmag;
using namespace levmag::oracles;

TEST(Philox, KnownAnswers) {
  using C = Philox4x64::Counter;
  EXPECT_EQ(Philox4x64::block({0, 0, 0, 0}, {0, 0}),
            (C{0x16554d9eca36314cULL, 0xdb20fe9d672d0fdcULL, 0xd7e772cee186176bULL, 0x7e68b68aec7ba23bULL}));
  const std::uint64_t ones = ~0ULL;
  EXPECT_EQ(Philox4x64::block({ones, ones, ones, ones}, {ones, ones}),
            (C{0x87b092c3013fe90bULL, 0x438c3c67be8d0224ULL, 0x9cc7d7c69cd777b6ULL, 0xa09caebf594f0ba0ULL}));
  EXPECT_EQ(Philox4x64::block({0x243f6a8885a308d3ULL, 0x13198a2e03707344ULL, 0xa4093822299f31d0ULL,
                               0x082efa98ec4e6c89ULL},
                              {0x452821e638d01377ULL, 0xbe5466cf34e90c6cULL}),
            (C{0xa528f45403e61d95ULL, 0x38c72dbd566e9788ULL, 0xa5a1610e72fd18b5ULL, 0x57bd43b5e52b7fe6ULL}));
}

TEST(Philox, MatchesNumpyStream) {
  // numpy's generator increments the counter before its first block
  using C = Philox4x64::Counter;
  EXPECT_EQ(Philox4x64::block({1, 0, 0, 0}, {0, 0}),
            (C{0x02f4ba6408e4d89bULL, 0x3dd62b0b9ca8c5b2ULL, 0x1c8667a55d902e79ULL, 0x907d7a052fd5b4dcULL}));
  EXPECT_EQ(Philox4x64::block({2, 0, 0, 0}, {0, 0}),
            (C{0x809bf322883987c3ULL, 0x471128b9e807f7ddULL, 0xf250ba0dbec065b7ULL, 0xfc6ed66767a457bcULL}));
}

TEST(Philox, NormalMoments) {
  double s1 = 0, s2 = 0, s4 = 0;
  const int n = 200000;
  for (int i = 0; i < n / 4; ++i) {
    for (double z : normals4({static_cast<std::uint64_t>(i), 0, 0, 0}, {7, 0})) {
      s1 += z;
      s2 += z * z;
      s4 += z * z * z * z;
    }
  }
  EXPECT_NEAR(s1 / n, 0.0, 5.0 / std::sqrt(n));
  EXPECT_NEAR(s2 / n, 1.0, 0.02);
  EXPECT_NEAR(s4 / n, 3.0, 0.1);
}

namespace {

LangevinModel cooled_model(double g = 0.11) {
  return langevin_model(make_operating_point(with_coupling(test::cooled(), g), Regime::Cooled));
}

}  // namespace

TEST(Langevin, DeterministicLimitIsDampedCosine) {
  LangevinModel m = cooled_model();
  m.S_T = m.S_F = m.S_S = 0.0;
  const double T = constants::two_pi / m.omega_m;
  for (Integrator integ : {Integrator::ExactPropagator, Integrator::SymplecticEuler}) {
    LangevinConfig c;
    c.integrator = integ;
    c.dt = integ == Integrator::ExactPropagator ? T / 100 : T / 20000;
    c.duration = 10 * T;
    c.q0 = m.zpf;
    const TrajectoryEnsemble e = simulate_langevin(m, c);
    const double wd = std::sqrt(m.stiffness - 0.25 * m.damping * m.damping);
    double worst = 0.0;
    for (std::size_t i = 0; i < e.n_steps; ++i) {
      const double t = e.dt * i;
      const double q = m.zpf * std::exp(-0.5 * m.damping * t) *
                       (std::cos(wd * t) + 0.5 * m.damping / wd * std::sin(wd * t));
      worst = std::max(worst, std::abs(e.positions[0][i] - q));
    }
    // first-order scheme: error shrinks with dt; the exact propagator has none
    EXPECT_LT(worst, integ == Integrator::ExactPropagator ? 1e-6 * m.zpf : 1e-3 * m.zpf);
  }
}

TEST(Langevin, Equipartition) {
  LangevinModel m = cooled_model(0.0);
  m.S_F = m.S_S = 0.0;
  m.S_T *= 1e4;  // keeps the variance far above round-off
  const double T = constants::two_pi / m.omega_m;
  LangevinConfig c;
  c.dt = T / 100;
  c.duration = 200 * T;
  c.burn_in = 100 * T;
  c.n_traj = 200;
  c.threads = 4;
  c.seed = 3;
  const TrajectoryEnsemble e = simulate_langevin(m, c);
  double s2 = 0.0, s1 = 0.0;
  std::size_t n = 0;
  for (const auto& tr : e.positions) {
    for (double q : tr) {
      s1 += q;
      s2 += q * q;
      ++n;
    }
  }
  const double var = stationary_variance(m);
  EXPECT_NEAR(s2 / n / var, 1.0, 0.05);
  // independent trajectories at the last sample
  double last = 0.0;
  for (const auto& tr : e.positions) last += tr.back();
  EXPECT_LT(std::abs(last / e.n_traj), 3.0 * std::sqrt(var / e.n_traj));
}

TEST(Langevin, ThreadCountDoesNotChangeResults) {
  const LangevinModel m = cooled_model();
  const double T = constants::two_pi / m.omega_m;
  LangevinConfig c;
  c.dt = T / 100;
  c.duration = 20 * T;
  c.n_traj = 24;
  c.seed = 99;
  c.threads = 1;
  const TrajectoryEnsemble a = simulate_langevin(m, c);
  c.threads = 8;
  const TrajectoryEnsemble b = simulate_langevin(m, c);
  EXPECT_EQ(a.positions, b.positions);
  c.seed = 100;
  EXPECT_NE(simulate_langevin(m, c).positions, a.positions);
}

TEST(Langevin, Guards) {
  const LangevinModel m = cooled_model();
  const double T = constants::two_pi / m.omega_m;
  LangevinConfig c;
  c.dt = T / 40;
  c.duration = T;
  EXPECT_THROW(simulate_langevin(m, c), DomainError);
  c.dt = T / 100;
  c.q0 = 2e6 * m.zpf;
  EXPECT_THROW(simulate_langevin(m, c), DomainError);
}

TEST(Welch, WhiteNoiseLevel) {
  // unit-variance samples at spacing dt have two-sided density dt
  const double dt = 1e-3;
  std::vector<double> x;
  for (std::uint64_t i = 0; i < (1u << 18) / 4; ++i) {
    for (double z : normals4({i, 0, 0, 0}, {1, 2})) x.push_back(z);
  }
  WelchConfig w;
  w.segment_len = 1024;
  const PsdEstimate est = welch_psd(x, dt, w);
  double mean = 0.0;
  for (std::size_t i = 1; i + 1 < est.psd.size(); ++i) mean += est.psd[i];
  mean /= static_cast<double>(est.psd.size() - 2);
  EXPECT_NEAR(mean / dt, 1.0, 0.1);
  EXPECT_TRUE(est.diagnostics.empty());
}

TEST(Welch, ErrorsAndWarnings) {
  std::vector<double> x(3000, 0.0);
  WelchConfig w;
  w.segment_len = 1000;
  EXPECT_THROW(welch_psd(x, 1.0, w), DomainError);
  w.segment_len = 1024;
  EXPECT_FALSE(welch_psd(x, 1.0, w).diagnostics.empty());
  w.segment_len = 4096;
  EXPECT_THROW(welch_psd(x, 1.0, w), DomainError);
}

namespace {

double band_rms(const OperatingPoint& op, std::size_t n_traj) {
  const double T = constants::two_pi / op.omega_m();
  WelchConfig w;
  w.segment_len = 2048;
  LangevinConfig c;
  c.dt = T / 100;
  c.record_stride = 2;
  c.duration = c.dt * 2 * 2048 * 5;
  c.burn_in = 100 * T;
  c.n_traj = n_traj;
  c.threads = 4;
  c.seed = 5;
  const PsdEstimate est = estimate_psd(simulate_langevin(op, c), w, op.noise.shot_floor);
  double s2 = 0;
  int n = 0;
  for (std::size_t i = 0; i < est.omega.size(); ++i) {
    const double x = est.omega[i] / op.omega_m();
    if (x < 0.5 || x > 1.5) continue;
    const double r = est.psd[i] / (std::norm(op.chi(est.omega[i])) * op.noise.total()) - 1.0;
    s2 += r * r;
    ++n;
  }
  return std::sqrt(s2 / n);
}

}  // namespace

TEST(Welch, EstimateConvergesWithTrajectories) {
  const OperatingPoint op = make_operating_point(test::cooled(), Regime::Cooled);
  const double r50 = band_rms(op, 50);
  const double r400 = band_rms(op, 400);
  EXPECT_LT(r400, r50);
  EXPECT_LT(r400, 0.15);
}

TEST(Fock, ZeroCouplingLeavesGroundPopulationEmpty) {
  EXPECT_LT(simulate_ramsey_fock(0.0, 1.0, {1.0, 0.0}, 40, 16).p0, 1e-10);
}

TEST(Fock, MeasuredPhasePrefactor) {
  for (double g : {0.05, 0.1, 0.2}) {
    const auto r = simulate_ramsey_fock(g, 1.0, {0.7, -0.3}, 40, 32);
    EXPECT_NEAR(r.measured_prefactor, 1.0, 1e-9) << g;
    EXPECT_LT(r.max_norm_error, 1e-9);
    EXPECT_LT(r.max_leakage, 1e-6);
  }
}

TEST(Fock, AgreesWithClosedFormAtMeasuredPrefactor) {
  for (int i = 1; i <= 20; ++i) {
    const double g = 0.03 * i;
    const auto r = simulate_ramsey_fock(g, 1.0, {0.5, 0.5}, 48, 32);
    EXPECT_NEAR(r.p0, ramsey_population(g, 1.0, 1.0).p0, 1e-6) << g;
  }
}

TEST(Fock, GlobalPhaseDoesNotMatter) {
  const Eigen::VectorXcd psi = coherent_state({0.4, 0.9}, 40);
  const auto a = simulate_ramsey_fock(0.15, 1.0, psi, 16);
  const auto b = simulate_ramsey_fock(0.15, 1.0, psi, 16, std::polar(1.0, 2.1));
  EXPECT_NEAR(a.phase, b.phase, 1e-12);
  EXPECT_NEAR(a.p0, b.p0, 1e-12);
}

TEST(Fock, ThermalStateGivesSamePopulation) {
  const double g = 0.2;
  const double coherent = simulate_ramsey_fock(g, 1.0, {1.0, 0.0}, 40, 32).p0;
  EXPECT_NEAR(simulate_ramsey_fock_thermal(g, 1.0, 2.0, 80, 32), coherent, 1e-6);
}

TEST(Fock, TruncationGuard) {
  EXPECT_THROW(simulate_ramsey_fock(0.1, 1.0, {3.0, 0.0}, 20, 16), DomainError);
}
