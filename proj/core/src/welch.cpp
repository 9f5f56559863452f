#include "levmag/oracles/welch.hpp"

#include <cmath>
#include <cstring>
#include <memory>

#include <fftw3.h>

#include "levmag/constants.hpp"
#include "levmag/error.hpp"

namespace levmag::oracles {

namespace {

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

class Periodogram {
 public:
  Periodogram(std::size_t n, double dt) : n_(n), dt_(dt), window_(n) {
    in_.reset(static_cast<double*>(fftw_malloc(sizeof(double) * n)));
    out_.reset(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * (n / 2 + 1))));
    plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), in_.get(), out_.get(), FFTW_ESTIMATE);
    double u = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      window_[i] = 0.5 - 0.5 * std::cos(constants::two_pi * static_cast<double>(i) / static_cast<double>(n));
      u += window_[i] * window_[i];
    }
    scale_ = dt / u;
  }
  ~Periodogram() { fftw_destroy_plan(plan_); }
  Periodogram(const Periodogram&) = delete;
  Periodogram& operator=(const Periodogram&) = delete;

  // adds |X_k|^2 dt / sum(w^2) to acc
  void accumulate(const double* x, std::vector<double>& acc) {
    for (std::size_t i = 0; i < n_; ++i) in_.get()[i] = x[i] * window_[i];
    fftw_execute(plan_);
    for (std::size_t k = 0; k <= n_ / 2; ++k) {
      const double re = out_.get()[k][0];
      const double im = out_.get()[k][1];
      acc[k] += (re * re + im * im) * scale_;
    }
  }

  [[nodiscard]] std::size_t bins() const { return n_ / 2 + 1; }
  [[nodiscard]] double dt() const { return dt_; }

 private:
  std::size_t n_;
  double dt_;
  std::vector<double> window_;
  std::unique_ptr<double, FftwFree> in_;
  std::unique_ptr<fftw_complex, FftwFree> out_;
  fftw_plan plan_;
  double scale_ = 0.0;
};

void check(std::size_t n_samples, const WelchConfig& cfg) {
  const std::size_t L = cfg.segment_len;
  if (L < 2 || (L & (L - 1)) != 0) throw DomainError("Welch segment length must be a power of two");
  if (L > n_samples) throw DomainError("Welch segment length exceeds the series length");
  if (!(cfg.overlap >= 0.0 && cfg.overlap < 1.0)) throw DomainError("Welch overlap must lie in [0, 1)");
}

std::size_t hop(const WelchConfig& cfg) {
  const auto h = static_cast<std::size_t>(std::llround(static_cast<double>(cfg.segment_len) * (1.0 - cfg.overlap)));
  return std::max<std::size_t>(1, h);
}

PsdEstimate finish(std::vector<double> acc, std::size_t averages, std::size_t segments, std::size_t L, double dt) {
  PsdEstimate est;
  est.segments = segments;
  est.averages = averages;
  est.psd = std::move(acc);
  est.omega.resize(est.psd.size());
  for (std::size_t k = 0; k < est.psd.size(); ++k) {
    est.psd[k] /= static_cast<double>(averages);
    est.omega[k] = constants::two_pi * static_cast<double>(k) / (static_cast<double>(L) * dt);
  }
  if (segments < 8) est.diagnostics.emplace_back("fewer than 8 Welch segments per series; estimate variance is high");
  return est;
}

}  // namespace

PsdEstimate welch_psd(const std::vector<double>& x, double dt, const WelchConfig& cfg) {
  check(x.size(), cfg);
  const std::size_t L = cfg.segment_len;
  const std::size_t h = hop(cfg);
  Periodogram pg(L, dt);
  std::vector<double> acc(pg.bins(), 0.0);
  std::size_t segs = 0;
  for (std::size_t start = 0; start + L <= x.size(); start += h, ++segs) pg.accumulate(x.data() + start, acc);
  return finish(std::move(acc), segs, segs, L, dt);
}

PsdEstimate estimate_psd(const TrajectoryEnsemble& e, const WelchConfig& cfg, double shot_floor) {
  if (e.positions.empty()) throw DomainError("empty trajectory ensemble");
  check(e.n_steps, cfg);
  const std::size_t L = cfg.segment_len;
  const std::size_t h = hop(cfg);
  Periodogram pg(L, e.dt);
  std::vector<double> acc(pg.bins(), 0.0);
  std::size_t segs = 0;
  std::size_t total = 0;
  for (const auto& x : e.positions) {
    segs = 0;
    for (std::size_t start = 0; start + L <= x.size(); start += h, ++segs) pg.accumulate(x.data() + start, acc);
    total += segs;
  }
  PsdEstimate est = finish(std::move(acc), total, segs, L, e.dt);
  est.shot_floor = shot_floor;
  return est;
}

}  // namespace levmag::oracles
