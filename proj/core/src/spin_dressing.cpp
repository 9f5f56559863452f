#include "levmag/spin_dressing.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "levmag/error.hpp"

namespace levmag {

using cd = std::complex<double>;

DressedSpin dressed_states(double rabi, double detuning, double omega_m) {
  if (rabi == 0.0 && detuning == 0.0) {
    throw DomainError("degenerate dressing: Omega_0 = 0 and Delta = 0");
  }
  DressedSpin d;
  d.rabi = rabi;
  d.detuning = detuning;
  d.omega_m = omega_m;
  d.theta = 0.5 * std::atan2(std::sqrt(2.0) * rabi, -detuning);
  const double r = std::sqrt(detuning * detuning + 2.0 * rabi * rabi);
  d.omega_a = 0.5 * (-detuning + r);
  d.omega_b = -detuning;
  d.omega_c = 0.5 * (-detuning - r);
  d.delta1 = omega_m - (d.omega_b - d.omega_c);
  d.delta2 = omega_m - (d.omega_a - d.omega_b);
  return d;
}

double resonant_detuning(double rabi, double omega_m) {
  return (rabi * rabi - 2.0 * omega_m * omega_m) / (2.0 * omega_m);
}

DressedSpin steady_populations(const DressedSpin& d, double spin_decay) {
  using Mat3 = Eigen::Matrix3cd;
  using Mat9 = Eigen::Matrix<cd, 9, 9>;

  // bare basis {|0>, |+1>, |-1>}
  Mat3 H = Mat3::Zero();
  H(0, 1) = H(1, 0) = H(0, 2) = H(2, 0) = 0.5 * d.rabi;
  H(1, 1) = H(2, 2) = -d.detuning;

  const Mat3 I = Mat3::Identity();
  auto kron = [](const Mat3& a, const Mat3& b) {
    Mat9 k;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) k.block<3, 3>(3 * i, 3 * j) = a(i, j) * b;
    return k;
  };

  // row-major vectorisation: vec(A X B) = (A kron B^T) vec(X)
  Mat9 L = cd(0.0, -1.0) * (kron(H, I) - kron(I, H.transpose()));
  for (int k = 1; k <= 2; ++k) {
    Mat3 jump = Mat3::Zero();
    jump(0, k) = std::sqrt(spin_decay);
    const Mat3 jj = jump.adjoint() * jump;
    L += kron(jump, jump.conjugate()) - 0.5 * kron(jj, I) - 0.5 * kron(I, jj.transpose());
  }

  // replace one equation by the trace condition
  Mat9 A = L;
  Eigen::Matrix<cd, 9, 1> rhs = Eigen::Matrix<cd, 9, 1>::Zero();
  A.row(0).setZero();
  for (int i = 0; i < 3; ++i) A(0, 4 * i) = 1.0;
  rhs(0) = 1.0;

  Eigen::FullPivLU<Mat9> lu(A);
  if (!lu.isInvertible()) {
    std::ostringstream msg;
    msg << "singular steady-state problem (Omega_0=" << d.rabi << ", Delta=" << d.detuning
        << ", Gamma_1=" << spin_decay << "); supply populations via the override path";
    throw DomainError(msg.str());
  }
  const Eigen::Matrix<cd, 9, 1> v = lu.solve(rhs);
  Mat3 rho;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) rho(i, j) = v(3 * i + j);
  rho = 0.5 * (rho + rho.adjoint()).eval();

  const double s = std::sin(d.theta);
  const double c = std::cos(d.theta);
  const double r2 = 1.0 / std::sqrt(2.0);
  Mat3 U;  // columns |a>, |b>, |c> in the bare basis
  U.col(0) << s, c * r2, c * r2;
  U.col(1) << 0.0, r2, -r2;
  U.col(2) << c, -s * r2, -s * r2;
  const Mat3 rd = U.adjoint() * rho * U;

  DressedSpin out = d;
  out.populated = true;
  out.rho_aa = rd(0, 0).real();
  out.rho_bb = rd(1, 1).real();
  out.rho_cc = rd(2, 2).real();
  const double norm = out.rho_aa + out.rho_bb + out.rho_cc;
  out.rho_aa /= norm;
  out.rho_bb /= norm;
  out.rho_cc /= norm;
  out.rho_ca = rd(2, 0) / norm;
  return out;
}

DressedSpin with_populations(const DressedSpin& d, const PopulationOverride& o) {
  if (o.rho_aa < 0.0 || o.rho_bb < 0.0 || o.rho_cc < 0.0) {
    throw DomainError("population override has a negative population");
  }
  if (std::abs(o.rho_aa + o.rho_bb + o.rho_cc - 1.0) > 1e-10) {
    throw DomainError("population override is not normalised");
  }
  DressedSpin out = d;
  out.populated = true;
  out.rho_aa = o.rho_aa;
  out.rho_bb = o.rho_bb;
  out.rho_cc = o.rho_cc;
  out.rho_ca = o.rho_ca;
  return out;
}

Alphas alpha_coefficients(const DressedSpin& d, double spin_decay) {
  return alpha_coefficients(d, spin_decay, d.delta1, d.delta2);
}

Alphas alpha_coefficients(const DressedSpin& d, double spin_decay, double delta1, double delta2) {
  if (!d.populated) throw DomainError("alpha coefficients need populated dressed states");
  const double s2 = std::sin(d.theta) * std::sin(d.theta);
  const double c2 = std::cos(d.theta) * std::cos(d.theta);
  const double g1 = spin_decay;
  const cd p1 = cd(0.0, -delta1) + 0.5 * g1 * (1.0 + s2);
  const cd p2 = cd(0.0, delta2) + 0.5 * g1 * (1.0 + c2);
  const cd p3 = 0.25 * g1 * std::sin(2.0 * d.theta);
  const cd n = p1 * p2 - p3 * p3;
  if (std::abs(n) <= 1e-300 || std::abs(n) < 1e-14 * std::abs(p1 * p2)) {
    std::ostringstream msg;
    msg << "singular alpha denominator (Delta_1=" << delta1 << ", Delta_2=" << delta2
        << ", theta=" << d.theta << ")";
    throw DomainError(msg.str());
  }
  const cd rca = d.rho_ca;
  const cd rac = std::conj(d.rho_ca);
  Alphas a;
  a.alpha1 = (s2 / n * (p2 * d.rho_cc + p3 * rca) + c2 / n * p1 * d.rho_bb).real();
  a.alpha2 = (c2 / n * (p1 * d.rho_aa + p3 * rac) + s2 / n * p2 * d.rho_bb).real();
  a.alpha3 = (s2 * (p2 * (d.rho_cc - d.rho_bb) + p3 * rca) / n +
              c2 * (p1 * (d.rho_aa - d.rho_bb) + p3 * rac) / n)
                 .imag();
  return a;
}

double resonant_alpha(double theta, double spin_decay) {
  if (!(spin_decay > 0.0)) throw DomainError("resonant alpha needs Gamma_1 > 0");
  const double c = std::cos(2.0 * theta);
  const double s = std::sin(2.0 * theta);
  return 4.0 / spin_decay * (1.0 + c) * s * s / (9.0 - c * c);
}

SpinRates spin_rates(const Alphas& a, double coupling) {
  const double g2 = coupling * coupling;
  SpinRates r;
  r.alpha1 = a.alpha1;
  r.alpha2 = a.alpha2;
  r.alpha3 = a.alpha3;
  r.A_minus = 2.0 * g2 * a.alpha1;
  r.A_plus = 2.0 * g2 * a.alpha2;
  r.delta = 2.0 * g2 * a.alpha3;
  return r;
}

SpinRates resonant_spin_rates(double alpha, double coupling) {
  SpinRates r;
  r.alpha1 = 0.5 * alpha;
  r.A_minus = coupling * coupling * alpha;
  return r;
}

DressedSpin dressed_spin(const SystemParams& p) {
  const DressedSpin d = dressed_states(p.rabi(), p.detuning(), p.omega_m());
  if (p.population_source == PopulationSource::Override) return with_populations(d, p.populations);
  return steady_populations(d, p.spin_decay());
}

}  // namespace levmag
