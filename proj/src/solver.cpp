#include "dsii/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace dsii {

DsiiSolver::DsiiSolver(const Grid& g, const SolverConfig& cfg) : g_(g), cfg_(cfg) {
  if (!(cfg.beta > 0)) throw std::invalid_argument("beta must be positive");
  if (cfg.rho != 1.0 && cfg.rho != -1.0) throw std::invalid_argument("rho must be +1 or -1");
  const auto ls = spectral::laplace_symbol_ds(g);
  L_.resize(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) L_[i] = cplx(0.0, -ls[i]);  // -i (xi1^2 - xi2^2)
  if (cfg.method == Nonlocal::Regularized && !cfg.linear)
    reg_.emplace(g, cfg.taylor_order);
  if (cfg.dealias) {
    dealias_mask_.assign(g.size(), 0);
    for (int k = 0; k < g.nx; ++k)
      for (int m = 0; m < g.ny; ++m)
        dealias_mask_[g.idx(k, m)] =
            std::abs(g.kx(k)) > g.nx / 3 || std::abs(g.ky(m)) > g.ny / 3;
  }
  psi_.resize(g.size());
  s_.resize(g.size());
  shat_.resize(g.size());
  gfield_.resize(g.size());
  prod_.resize(g.size());
}

void DsiiSolver::rhs(const cvec& psihat, double t, cvec& out) {
  (void)t;  // autonomous
  const std::size_t n = g_.size();
  out.resize(n);
  if (cfg_.linear) {
    std::fill(out.begin(), out.end(), cplx(0));
    return;
  }
  spectral::inverse(g_, psihat.data(), psi_.data());  // FFT 1: psi
  double m2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = std::norm(psi_[i]);
    m2 = std::max(m2, a);
    s_[i] = a;
  }
  last_max_abs_ = std::sqrt(m2);
  spectral::forward(g_, s_.data(), shat_.data());  // FFT 2: S = F|psi|^2
  if (cfg_.method == Nonlocal::Classical) {
    classical_nonlocal(g_, shat_.data(), prod_.data());
    spectral::inverse(g_, prod_.data(), gfield_.data());  // FFT 3: nonlocal term
  } else {
    const MomentSet m = compute_moments(g_, s_.data(), cfg_.taylor_order);
    reg_->apply(m, shat_.data(), gfield_.data());  // FFT 3 inside
  }
  const double beta = cfg_.beta;
  for (std::size_t i = 0; i < n; ++i) {
    const double p = beta * gfield_[i].real() + (beta - 1.0) * s_[i].real();
    prod_[i] = p * psi_[i];
  }
  spectral::forward(g_, prod_.data(), out.data());  // FFT 4: N up to the prefactor
  const cplx pref(0.0, -2.0 * cfg_.rho);
  for (std::size_t i = 0; i < n; ++i) out[i] *= pref;
  if (!dealias_mask_.empty())
    for (std::size_t i = 0; i < n; ++i)
      if (dealias_mask_[i]) out[i] = cplx(0);
}

double DsiiSolver::tail_indicator(const Grid& g, const cvec& psi0) {
  cvec hat(g.size());
  spectral::forward(g, psi0.data(), hat.data());
  double peak = 0.0, tail = 0.0;
  const int kedge = g.nx / 2, medge = g.ny / 2;
  for (int k = 0; k < g.nx; ++k) {
    for (int m = 0; m < g.ny; ++m) {
      const double a = std::abs(hat[g.idx(k, m)]);
      peak = std::max(peak, a);
      // outermost dyadic shell: |wavenumber| beyond half the Nyquist index
      if (std::abs(g.kx(k)) >= kedge / 2 || std::abs(g.ky(m)) >= medge / 2)
        tail = std::max(tail, a);
    }
  }
  return peak == 0.0 ? 0.0 : tail / peak;
}

RunResult DsiiSolver::evolve(const cvec& psi0, const EvolveOptions& opt) {
  if (psi0.size() != g_.size()) throw std::invalid_argument("psi0 size mismatch");
  if (opt.nt < 1) throw std::invalid_argument("nt must be >= 1");
  RunResult res;
  const double dt = opt.tmax / opt.nt;

  const double tail = tail_indicator(g_, psi0);
  if (tail > 1e-10)
    std::fprintf(stderr,
                 "warning: initial data Fourier tail %.2e above 1e-10; "
                 "field may be under-resolved\n",
                 tail);

  cvec uhat(g_.size());
  spectral::forward(g_, psi0.data(), uhat.data());
  double max0 = 0.0;
  for (const cplx& v : psi0) max0 = std::max(max0, std::abs(v));
  const double blow_cap = 1e10 * std::max(max0, 1e-300);

  // map snapshot times to nearest step boundaries
  std::vector<std::vector<double>> snap_at(std::size_t(opt.nt) + 1);
  for (double ts : opt.snapshot_times) {
    int k = int(std::lround(ts / dt));
    k = std::clamp(k, 0, opt.nt);
    snap_at[k].push_back(ts);
  }

  Stepper stepper(cfg_.scheme, L_, dt, cfg_.theta_switch);
  Rhs f = [this](const cvec& u, double t, cvec& out) { rhs(u, t, out); };

  auto record = [&](int step) {
    if (opt.norm_every > 0 && (step % opt.norm_every == 0 || step == opt.nt))
      res.norms.emplace_back(step * dt, spectral::l2_norm_hat(g_, uhat.data()));
  };
  auto snapshot = [&](int step) {
    if (!opt.on_snapshot || snap_at[step].empty()) return false;
    cvec phys(g_.size());
    spectral::inverse(g_, uhat.data(), phys.data());
    opt.on_snapshot(step, step * dt, phys);
    return true;
  };

  record(0);
  snapshot(0);
  const long long c_start = fft::transform_count();
  long long per_step = -1;
  for (int step = 1; step <= opt.nt; ++step) {
    const long long c0 = fft::transform_count();
    stepper.step(uhat, (step - 1) * dt, f);
    const long long c1 = fft::transform_count();

    const bool bad = !std::isfinite(uhat[0].real()) || !std::isfinite(uhat[0].imag()) ||
                     (!cfg_.linear && last_max_abs_ > blow_cap);
    if (bad) {
      res.aborted = true;
      res.t_abort = (step - 1) * dt;
      res.t_final = res.t_abort;
      res.transforms = c1 - c_start;
      res.transforms_per_step = per_step;
      res.psi.resize(g_.size());
      spectral::inverse(g_, uhat.data(), res.psi.data());
      return res;
    }
    if (per_step < 0) per_step = c1 - c0;  // snapshot FFTs fall outside [c0, c1]
    record(step);
    snapshot(step);
  }
  res.transforms = fft::transform_count() - c_start;
  res.transforms_per_step = per_step;
  res.t_final = opt.tmax;
  res.psi.resize(g_.size());
  spectral::inverse(g_, uhat.data(), res.psi.data());
  return res;
}

}  // namespace dsii
