#include "levmag/oracles/fock.hpp"

#include <cmath>
#include <sstream>

#include "levmag/constants.hpp"
#include "levmag/error.hpp"

namespace levmag::oracles {

using cd = std::complex<double>;

Eigen::VectorXcd coherent_state(cd alpha, std::size_t dim) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(dim));
  cd c = std::exp(-0.5 * std::norm(alpha));
  for (std::size_t n = 0; n < dim; ++n) {
    if (n > 0) c *= alpha / std::sqrt(static_cast<double>(n));
    v(static_cast<Eigen::Index>(n)) = c;
  }
  return v / v.norm();
}

FockRamseyResult simulate_ramsey_fock(double coupling, double omega_m, const Eigen::VectorXcd& mech_state,
                                      std::size_t n_steps, cd global_phase) {
  const auto D = mech_state.size();
  if (D < 4) throw DomainError("Fock truncation too small");
  if (n_steps == 0) throw DomainError("Fock evolution needs at least one segment");

  const double T = constants::two_pi / omega_m;
  const double dt = T / static_cast<double>(n_steps);

  // |+1> block: omega_m n + g (a + a^+), tridiagonal
  Eigen::MatrixXd H1 = Eigen::MatrixXd::Zero(D, D);
  for (Eigen::Index n = 0; n < D; ++n) {
    H1(n, n) = omega_m * static_cast<double>(n);
    if (n + 1 < D) H1(n, n + 1) = H1(n + 1, n) = coupling * std::sqrt(static_cast<double>(n + 1));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H1);
  const Eigen::MatrixXd& V = es.eigenvectors();
  Eigen::VectorXcd ph1(D);
  for (Eigen::Index k = 0; k < D; ++k) ph1(k) = std::exp(cd(0.0, -es.eigenvalues()(k) * dt));
  const Eigen::MatrixXcd U1 = V.cast<cd>() * ph1.asDiagonal() * V.transpose().cast<cd>();
  Eigen::VectorXcd U0(D);
  for (Eigen::Index n = 0; n < D; ++n) U0(n) = std::exp(cd(0.0, -omega_m * static_cast<double>(n) * dt));

  FockState st;
  st.dim = static_cast<std::size_t>(D);
  st.amplitudes = Eigen::VectorXcd::Zero(2 * D);
  const double r2 = 1.0 / std::sqrt(2.0);
  // first pulse on |0>: (|0> - i|+1>)/sqrt(2)
  st.amplitudes.head(D) = global_phase * r2 * mech_state;
  st.amplitudes.tail(D) = global_phase * cd(0.0, -r2) * mech_state;
  const double n_init = st.norm();

  FockRamseyResult res;
  auto leak = [&](const FockState& s) {
    double l = 0.0;
    for (Eigen::Index n = D - 2; n < D; ++n) l += std::norm(s.amplitudes(n)) + std::norm(s.amplitudes(D + n));
    return l;
  };
  res.max_leakage = leak(st);
  for (std::size_t step = 0; step < n_steps; ++step) {
    st.amplitudes.head(D) = U0.cwiseProduct(st.amplitudes.head(D));
    st.amplitudes.tail(D) = U1 * st.amplitudes.tail(D);
    res.max_norm_error = std::max(res.max_norm_error, std::abs(st.norm() - n_init));
    res.max_leakage = std::max(res.max_leakage, leak(st));
  }
  if (res.max_norm_error > 1e-9) {
    std::ostringstream msg;
    msg << "Fock evolution lost unitarity: |norm drift| = " << res.max_norm_error;
    throw DomainError(msg.str());
  }
  if (res.max_leakage > 1e-6) {
    std::ostringstream msg;
    msg << "Fock truncation dim=" << D << " inadequate: top-level population " << res.max_leakage;
    throw DomainError(msg.str());
  }

  const Eigen::VectorXcd psi0 = st.amplitudes.head(D);
  const Eigen::VectorXcd psi1 = st.amplitudes.tail(D);
  // branch states u_0 = sqrt(2) psi0, u_1 = i sqrt(2) psi1
  res.phase = std::arg(psi0.dot(cd(0.0, 1.0) * psi1));
  const double g2T = coupling * coupling * T;
  res.measured_prefactor = g2T > 0.0 ? res.phase * omega_m / g2T : 0.0;
  // second pulse, projected on spin |0>
  const Eigen::VectorXcd out0 = r2 * (psi0 + cd(0.0, -1.0) * psi1);
  res.p0 = out0.squaredNorm() / n_init;
  return res;
}

FockRamseyResult simulate_ramsey_fock(double coupling, double omega_m, cd alpha0, std::size_t dim,
                                      std::size_t n_steps) {
  const double need = 4.0 * (std::norm(alpha0) + coupling * coupling / (omega_m * omega_m) + 3.0);
  if (!(static_cast<double>(dim) > need)) {
    std::ostringstream msg;
    msg << "Fock dimension " << dim << " must exceed " << need;
    throw DomainError(msg.str());
  }
  return simulate_ramsey_fock(coupling, omega_m, coherent_state(alpha0, dim), n_steps);
}

double simulate_ramsey_fock_thermal(double coupling, double omega_m, double n_mean, std::size_t dim,
                                    std::size_t n_steps) {
  if (n_mean < 0.0) throw DomainError("thermal occupation must be non-negative");
  // Fock components above dim/2 are dropped; the upper half keeps the
  // leakage guard meaningful for every component that is evolved
  const std::size_t top = dim / 2;
  const double ratio = n_mean / (1.0 + n_mean);
  std::vector<double> w;
  double pn = 1.0 / (1.0 + n_mean);
  double used = 0.0;
  for (std::size_t n = 0; n < top && pn > 1e-16; ++n) {
    w.push_back(pn);
    used += pn;
    pn *= ratio;
  }
  double p0 = 0.0;
  for (std::size_t n = 0; n < w.size(); ++n) {
    Eigen::VectorXcd fock = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
    fock(static_cast<Eigen::Index>(n)) = 1.0;
    p0 += w[n] / used * simulate_ramsey_fock(coupling, omega_m, fock, n_steps).p0;
  }
  return p0;
}

}  // namespace levmag::oracles
