#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <complex>

#include <Eigen/Dense>
#include <boost/numeric/odeint.hpp>

#include "levmag/error.hpp"
#include "levmag/spin_dressing.hpp"

using namespace levmag;
using cd = std::complex<double>;

namespace {

Eigen::Matrix3cd bare_hamiltonian(double rabi, double detuning) {
  Eigen::Matrix3cd H = Eigen::Matrix3cd::Zero();
  H(0, 1) = H(1, 0) = H(0, 2) = H(2, 0) = 0.5 * rabi;
  H(1, 1) = H(2, 2) = -detuning;
  return H;
}

// Lindblad equation integrated in time from |0><0|: an oracle for the
// null-space steady state.
Eigen::Matrix3cd evolve_master_equation(double rabi, double detuning, double decay, double t_end) {
  using State = std::array<double, 18>;
  const Eigen::Matrix3cd H = bare_hamiltonian(rabi, detuning);
  auto unpack = [](const State& s) {
    Eigen::Matrix3cd r;
    for (int i = 0; i < 9; ++i) r(i / 3, i % 3) = cd(s[2 * i], s[2 * i + 1]);
    return r;
  };
  auto rhs = [&](const State& s, State& ds, double) {
    const Eigen::Matrix3cd r = unpack(s);
    Eigen::Matrix3cd d = cd(0, -1) * (H * r - r * H);
    for (int k = 1; k <= 2; ++k) {
      Eigen::Matrix3cd L = Eigen::Matrix3cd::Zero();
      L(0, k) = std::sqrt(decay);
      d += L * r * L.adjoint() - 0.5 * (L.adjoint() * L * r + r * L.adjoint() * L);
    }
    for (int i = 0; i < 9; ++i) {
      ds[2 * i] = d(i / 3, i % 3).real();
      ds[2 * i + 1] = d(i / 3, i % 3).imag();
    }
  };
  State s{};
  s[0] = 1.0;
  namespace ode = boost::numeric::odeint;
  ode::integrate_adaptive(ode::make_controlled(1e-12, 1e-12, ode::runge_kutta_dopri5<State>()), rhs, s, 0.0, t_end,
                          0.01);
  return unpack(s);
}

}  // namespace

TEST(SpinDressing, EnergiesAreEigenvaluesOfDrivenHamiltonian) {
  for (double D : {-1.3, -0.18, 0.0, 0.4}) {
    const DressedSpin d = dressed_states(0.8, D, 1.0);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(bare_hamiltonian(0.8, D));
    const auto ev = es.eigenvalues();  // ascending
    EXPECT_NEAR(ev(0), d.omega_c, 1e-12);
    EXPECT_NEAR(ev(1), d.omega_b, 1e-12);
    EXPECT_NEAR(ev(2), d.omega_a, 1e-12);
  }
}

TEST(SpinDressing, MixingAngle) {
  EXPECT_NEAR(dressed_states(0.8, 0.0, 1.0).theta, M_PI / 4, 1e-15);
  // no drive: |a> = |+>, |c> = |0>
  EXPECT_NEAR(dressed_states(0.0, -1.0, 1.0).theta, 0.0, 1e-15);
  const DressedSpin d = dressed_states(0.8, -0.18, 1.0);
  EXPECT_NEAR(std::tan(2 * d.theta), -std::sqrt(2.0) * 0.8 / -0.18, 1e-12);
  EXPECT_GT(d.theta, 0.0);
  EXPECT_LT(d.theta, M_PI / 2);
  EXPECT_THROW(dressed_states(0.0, 0.0, 1.0), DomainError);
}

TEST(SpinDressing, ResonantDetuningZeroesDelta1) {
  for (double rabi : {0.3, 0.8, 1.7}) {
    const DressedSpin d = dressed_states(rabi, resonant_detuning(rabi, 1.0), 1.0);
    EXPECT_NEAR(d.delta1, 0.0, 1e-14);
  }
}

TEST(SpinDressing, SteadyStateMatchesTimeEvolution) {
  // Delta = 0 gives theta = pi/4
  const double rabi = 0.8, decay = 0.25;
  const DressedSpin d = steady_populations(dressed_states(rabi, 0.0, 1.0), decay);
  const Eigen::Matrix3cd rho = evolve_master_equation(rabi, 0.0, decay, 400.0);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(bare_hamiltonian(rabi, 0.0));
  const auto& V = es.eigenvectors();
  const Eigen::Matrix3cd rd = V.adjoint() * rho * V;
  EXPECT_NEAR(rd(2, 2).real(), d.rho_aa, 1e-8);
  EXPECT_NEAR(rd(1, 1).real(), d.rho_bb, 1e-8);
  EXPECT_NEAR(rd(0, 0).real(), d.rho_cc, 1e-8);
  EXPECT_NEAR(std::abs(rd(0, 2)), std::abs(d.rho_ca), 1e-8);
}

TEST(SpinDressing, PopulationsArePhysical) {
  for (double D : {-1.5, -0.68, 0.0, 0.9}) {
    for (double rabi : {0.1, 0.8, 2.0}) {
      const DressedSpin d = steady_populations(dressed_states(rabi, D, 1.0), 0.25);
      EXPECT_NEAR(d.rho_aa + d.rho_bb + d.rho_cc, 1.0, 1e-12);
      EXPECT_GE(d.rho_aa, -1e-12);
      EXPECT_GE(d.rho_bb, -1e-12);
      EXPECT_GE(d.rho_cc, -1e-12);
      EXPECT_LE(std::norm(d.rho_ca), d.rho_aa * d.rho_cc + 1e-12);
    }
  }
}

TEST(SpinDressing, AlphasAtOperatingPoint) {
  // regression values at Omega = 0.8, Gamma_1 = 0.25, resonant cooling transition
  const double rabi = 0.8, decay = 0.25;
  const DressedSpin d = steady_populations(dressed_states(rabi, resonant_detuning(rabi, 1.0), 1.0), decay);
  const Alphas a = alpha_coefficients(d, decay);
  EXPECT_NEAR(a.alpha1, 1.43051, 1e-5);
  EXPECT_NEAR(a.alpha2, 0.00706917, 1e-8);
  EXPECT_NEAR(a.alpha3, -0.139881, 1e-6);
  const double alpha = resonant_alpha(d.theta, decay);
  EXPECT_NEAR(alpha, 2.03889, 1e-5);
  // the full-population alpha_1 exceeds the leading-order alpha/2 by 40% here
  EXPECT_NEAR(a.alpha1 / (0.5 * alpha), 1.40322, 1e-4);
}

TEST(SpinDressing, ResonantAlphaIsSmallAngleLimit) {
  // weak drive: populations sit in |c>, the heating branch is far detuned
  const double decay = 0.25;
  for (double rabi : {0.02, 0.05}) {
    const DressedSpin d = steady_populations(dressed_states(rabi, resonant_detuning(rabi, 1.0), 1.0), decay);
    const Alphas a = alpha_coefficients(d, decay);
    const double alpha = resonant_alpha(d.theta, decay);
    EXPECT_NEAR(a.alpha1 / (0.5 * alpha), 1.0, 0.1) << rabi;
  }
}

TEST(SpinDressing, RatesScaleWithCouplingSquared) {
  const Alphas a{1.0, 0.1, -0.2};
  const SpinRates r1 = spin_rates(a, 0.1);
  const SpinRates r2 = spin_rates(a, 0.2);
  EXPECT_NEAR(r2.A_minus / r1.A_minus, 4.0, 1e-14);
  EXPECT_NEAR(r2.delta / r1.delta, 4.0, 1e-14);
  const SpinRates c = resonant_spin_rates(2.0, 0.1);
  EXPECT_DOUBLE_EQ(c.A_plus, 0.0);
  EXPECT_DOUBLE_EQ(c.delta, 0.0);
  EXPECT_NEAR(c.A_minus, 0.02, 1e-16);
}

TEST(SpinDressing, OverridePopulations) {
  const DressedSpin d = dressed_states(0.8, -0.18, 1.0);
  EXPECT_THROW(alpha_coefficients(d, 0.25), DomainError);
  const DressedSpin o = with_populations(d, {0.0, 0.0, 1.0, {0.0, 0.0}});
  const Alphas a = alpha_coefficients(o, 0.25);
  EXPECT_GT(a.alpha1, 0.0);
  EXPECT_NEAR(a.alpha2, 0.0, 1e-15);
  EXPECT_THROW(with_populations(d, {0.5, 0.5, 0.5, {0.0, 0.0}}), DomainError);
}
