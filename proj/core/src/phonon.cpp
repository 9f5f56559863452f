#include "levmag/phonon.hpp"

#include <cmath>

#include <boost/numeric/odeint.hpp>

#include "levmag/constants.hpp"
#include "levmag/error.hpp"

namespace levmag {

PhononCoefficients phonon_coefficients(const SystemParams& p, const MechanicsDerived& d, const SpinRates& r) {
  PhononCoefficients c;
  const double G = p.fb_gain;
  c.J = 12.0 * (G - 9.0 * G * G) * p.fb_coupling * p.fb_coupling * p.photon_flux;
  c.K = d.friction / d.mass + c.J + r.A_minus + r.A_plus;
  c.M = d.momentum_diffusion + p.trap_heat_rate + p.probe_heat_rate + p.optical_scatter_rate + r.A_plus;
  return c;
}

double steady_phonon(const PhononCoefficients& c) {
  if (!(c.J > 0.0)) throw DomainError("steady phonon number needs J > 0 (feedback gain inside (0, 1/9))");
  return std::sqrt(c.M / (2.0 * c.J));
}

double steady_phonon_exact(const PhononCoefficients& c) {
  const double b = c.J + c.K;
  if (c.J == 0.0) {
    if (!(b > 0.0)) throw DomainError("phonon rate equation has no damping");
    return c.M / b;
  }
  // stable form of (-b + sqrt(b^2 + 8 J M)) / (4 J)
  const double disc = std::sqrt(b * b + 8.0 * c.J * c.M);
  return 2.0 * c.M / (b + disc);
}

double thermal_occupation(const SystemParams& p) {
  return constants::k_B * p.effective_temp / (constants::hbar * p.omega_m());
}

bool steady_phonon_valid(const SystemParams& p) { return thermal_occupation(p) >= 10.0; }

PhononState phonon_dynamics(double n0, const PhononCoefficients& c, const std::vector<double>& t_grid,
                            double rtol) {
  namespace ode = boost::numeric::odeint;
  if (n0 < 0.0) throw DomainError("initial phonon number must be non-negative");
  PhononState st;
  st.coeffs = c;
  if (!(c.J > 0.0)) st.diagnostics.emplace_back("J <= 0: the quadratic loss vanishes or changes sign");
  if (t_grid.empty()) {
    st.mean = n0;
    return st;
  }

  using State = std::vector<double>;
  auto rhs = [&c](const State& x, State& dx, double) {
    const double n = x[0];
    dx[0] = -2.0 * c.J * n * n - (c.J + c.K) * n + c.M;
  };
  State x{n0};
  auto stepper = ode::make_dense_output(rtol * 1e-3, rtol, ode::runge_kutta_dopri5<State>());
  const double dt0 = t_grid.size() > 1 ? (t_grid[1] - t_grid[0]) * 1e-3 : 1e-9;
  ode::integrate_times(stepper, rhs, x, t_grid.begin(), t_grid.end(), dt0 > 0.0 ? dt0 : 1e-12,
                       [&st](const State& s, double t) {
                         st.t.push_back(t);
                         st.n.push_back(s[0]);
                       });
  st.mean = st.n.back();
  if (!std::isfinite(st.mean)) throw DomainError("phonon integration diverged");
  return st;
}

}  // namespace levmag
