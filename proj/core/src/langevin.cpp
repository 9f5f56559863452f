#include "levmag/oracles/langevin.hpp"

#include <cmath>
#include <sstream>
#include <thread>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "levmag/constants.hpp"
#include "levmag/error.hpp"
#include "levmag/oracles/philox.hpp"

namespace levmag::oracles {

LangevinModel langevin_model(const OperatingPoint& op) {
  LangevinModel m;
  const auto& r = op.rates;
  const double gamma = op.noise.total_damping;
  const double half = 0.5 * (r.A_minus - r.A_plus);
  const double w = op.omega_m() + 0.5 * r.delta;
  m.mass = op.mech.mass;
  m.stiffness = w * w + half * (gamma + half);
  m.damping = gamma + r.A_minus - r.A_plus;
  m.S_T = op.noise.S_T;
  m.S_F = op.noise.S_F;
  m.S_S = op.noise.S_S;
  m.omega_m = op.omega_m();
  m.zpf = op.mech.zpf;
  return m;
}

double stationary_variance(const LangevinModel& m) {
  return m.total_strength() / (2.0 * m.mass * m.mass * m.damping * m.stiffness);
}

namespace {

struct Propagator {
  Eigen::Matrix2d phi;
  Eigen::Matrix2d chol;  // lower factor of the step covariance
};

Propagator exact_propagator(const LangevinModel& m, double dt) {
  Eigen::Matrix2d A;
  A << 0.0, 1.0, -m.stiffness, -m.damping;
  Eigen::Matrix2d BB = Eigen::Matrix2d::Zero();
  BB(1, 1) = m.total_strength() / (m.mass * m.mass);
  Eigen::Matrix4d M = Eigen::Matrix4d::Zero();
  M.block<2, 2>(0, 0) = -A * dt;
  M.block<2, 2>(0, 2) = BB * dt;
  M.block<2, 2>(2, 2) = A.transpose() * dt;
  const Eigen::Matrix4d E = M.exp();
  Propagator p;
  p.phi = E.block<2, 2>(2, 2).transpose();
  Eigen::Matrix2d Q = p.phi * E.block<2, 2>(0, 2);
  Q = 0.5 * (Q + Q.transpose()).eval();
  p.chol.setZero();
  if (Q(0, 0) > 0.0) {
    Eigen::LLT<Eigen::Matrix2d> llt(Q);
    if (llt.info() == Eigen::Success) {
      p.chol = llt.matrixL();
    } else {
      // near-singular for very small steps: fall back to the diagonal part
      p.chol(0, 0) = std::sqrt(std::max(0.0, Q(0, 0)));
      p.chol(1, 1) = std::sqrt(std::max(0.0, Q(1, 1)));
    }
  } else if (Q(1, 1) > 0.0) {
    p.chol(1, 1) = std::sqrt(Q(1, 1));
  }
  return p;
}

void run_one(const LangevinModel& m, const LangevinConfig& cfg, const Propagator* prop, std::size_t traj,
             std::size_t burn_steps, std::size_t n_rec, std::vector<double>& out) {
  const Philox4x64::Key key{cfg.seed, static_cast<std::uint64_t>(traj)};
  const double dt = cfg.dt;
  const double sT = std::sqrt(m.S_T * dt) / m.mass;
  const double sF = std::sqrt(m.S_F * dt) / m.mass;
  const double sS = std::sqrt(m.S_S * dt) / m.mass;
  const double limit = 1e6 * m.zpf;
  double q = cfg.q0;
  double v = cfg.v0;
  out.assign(n_rec, 0.0);
  const std::size_t total = burn_steps + n_rec * cfg.record_stride;
  std::size_t rec = 0;
  for (std::size_t step = 0; step < total; ++step) {
    if (step >= burn_steps && (step - burn_steps) % cfg.record_stride == 0) out[rec++] = q;
    const auto z = normals4({static_cast<std::uint64_t>(step), 0, 0, 0}, key);
    if (prop) {
      const double nq = prop->phi(0, 0) * q + prop->phi(0, 1) * v + prop->chol(0, 0) * z[0];
      const double nv = prop->phi(1, 0) * q + prop->phi(1, 1) * v + prop->chol(1, 0) * z[0] + prop->chol(1, 1) * z[1];
      q = nq;
      v = nv;
    } else {
      v += (-m.damping * v - m.stiffness * q) * dt + sT * z[0] + sF * z[1] + sS * z[2];
      q += v * dt;
    }
    if (!(std::abs(q) <= limit)) {
      std::ostringstream msg;
      msg << "Langevin trajectory " << traj << " left |q| <= 1e6 z0 at step " << step << "; reduce dt";
      throw DomainError(msg.str());
    }
  }
}

}  // namespace

TrajectoryEnsemble simulate_langevin(const LangevinModel& model, const LangevinConfig& cfg) {
  if (!(cfg.dt > 0.0) || !(cfg.duration > 0.0)) throw DomainError("Langevin run needs dt > 0 and duration > 0");
  if (cfg.dt > constants::two_pi / (50.0 * model.omega_m) * (1.0 + 1e-12)) {
    throw DomainError("Langevin step exceeds 2 pi / (50 omega_m)");
  }
  if (cfg.record_stride == 0 || cfg.n_traj == 0) throw DomainError("Langevin run needs n_traj > 0 and stride > 0");
  if (model.S_T < 0.0 || model.S_F < 0.0 || model.S_S < 0.0) throw DomainError("negative force strength");

  TrajectoryEnsemble e;
  e.dt = cfg.dt * static_cast<double>(cfg.record_stride);
  e.n_steps = static_cast<std::size_t>(std::llround(cfg.duration / e.dt));
  e.n_traj = cfg.n_traj;
  e.seed = cfg.seed;
  e.positions.resize(cfg.n_traj);
  for (std::size_t i = 0; i < cfg.n_traj; ++i) e.stream_ids.push_back(i);
  const auto burn_steps = static_cast<std::size_t>(std::llround(cfg.burn_in / cfg.dt));

  Propagator prop;
  const Propagator* pp = nullptr;
  if (cfg.integrator == Integrator::ExactPropagator) {
    prop = exact_propagator(model, cfg.dt);
    pp = &prop;
  }

  const unsigned nthreads = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(cfg.n_traj)));
  std::vector<std::exception_ptr> errors(nthreads);
  auto worker = [&](unsigned t) {
    try {
      for (std::size_t i = t; i < cfg.n_traj; i += nthreads) {
        run_one(model, cfg, pp, i, burn_steps, e.n_steps, e.positions[i]);
      }
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };
  if (nthreads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);
  return e;
}

TrajectoryEnsemble simulate_langevin(const OperatingPoint& op, const LangevinConfig& cfg) {
  TrajectoryEnsemble e = simulate_langevin(langevin_model(op), cfg);
  e.params_hash = op.params_hash;
  return e;
}

}  // namespace levmag::oracles
