#include "levmag/model.hpp"

#include "levmag/digest.hpp"
#include "levmag/error.hpp"

namespace levmag {

std::string_view to_string(Regime r) { return r == Regime::Cooled ? "cooled" : "general"; }

std::complex<double> OperatingPoint::chi(double omega) const {
  return susceptibility(omega, mech.mass, omega_m(), rates.delta, rates.A_minus, rates.A_plus, noise.total_damping);
}

namespace {

void refresh(OperatingPoint& op) {
  const double g = op.mech.coupling;
  op.rates = op.regime == Regime::Cooled ? resonant_spin_rates(op.alpha_resonant, g) : spin_rates(op.alphas, g);
  op.phonon = phonon_coefficients(op.params, op.mech, op.rates);
  if (op.params.mean_phonon) {
    op.mean_phonon = *op.params.mean_phonon;
    op.mean_phonon_from_steady = false;
  } else {
    op.mean_phonon = steady_phonon(op.phonon);
    op.mean_phonon_from_steady = true;
  }
  op.noise = noise_sources(op.params, op.mech, op.rates, op.mean_phonon);
  if (op.options.frozen_damping) {
    op.noise.total_damping = *op.options.frozen_damping;
    op.noise.feedback_damping = op.noise.total_damping - op.noise.gas_damping;
  }
  op.params_hash = params_hash(op.params);
}

}  // namespace

OperatingPoint make_operating_point(const SystemParams& p, Regime regime, const OperatingOptions& opt) {
  OperatingPoint op;
  op.params = p;
  op.mech = derive_mechanics(p);
  op.regime = regime;
  op.options = opt;
  if (regime == Regime::Cooled) {
    op.spin = dressed_states(p.rabi(), p.detuning(), p.omega_m());
    op.alpha_resonant = resonant_alpha(op.spin.theta, p.spin_decay());
    op.alphas = {0.5 * op.alpha_resonant, 0.0, 0.0};
  } else {
    op.spin = dressed_spin(p);
    op.alphas = alpha_coefficients(op.spin, p.spin_decay());
    if (op.alphas.alpha1 < 0.0 || op.alphas.alpha2 < 0.0) {
      throw DomainError("alpha_1 or alpha_2 is negative: the spin noise strength is undefined here");
    }
  }
  refresh(op);
  return op;
}

OperatingPoint at_gradient(const OperatingPoint& base, double gradient) {
  OperatingPoint op = base;
  op.params.gradient = gradient;
  op.mech.coupling = coupling_from_gradient(gradient, op.mech);
  refresh(op);
  return op;
}

double psd_literal(const OperatingPoint& op, double omega) {
  return std::norm(op.chi(omega)) * op.noise.total_literal() + op.noise.shot_floor;
}

}  // namespace levmag
