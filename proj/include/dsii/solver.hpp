#pragma once
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "dsii/regularizer.hpp"
#include "dsii/spectral.hpp"
#include "dsii/stepper.hpp"

// Full DS II pseudospectral solver,
//   i psi_t + psi_xx - psi_yy + 2 rho (beta Phi + |psi|^2) psi = 0,
//   Phi_xx + Phi_yy + 2 (|psi|^2)_xx = 0,
// evolved in Fourier space as  d/dt psihat = L psihat + N(psihat) with
//   L = -i (xi1^2 - xi2^2),
//   N = -2 i rho F[ P psi ],   P = beta Re F^{-1}[cos(2psi) shat] + (beta-1)|psi|^2,
// where shat = F[|psi|^2]. rho = +1 is the defocusing sign (the y-independent
// reduction is i q_t + q_xx + 2 rho (1 - 2 beta) |q|^2 q = 0 up to a constant
// gauge phase from the discrete zero mode).
namespace dsii {

enum class Nonlocal { Classical, Regularized };

struct SolverConfig {
  double rho = 1.0;    // +1 defocusing, -1 focusing
  double beta = 1.0;   // beta = 1 is the integrable case
  Nonlocal method = Nonlocal::Regularized;
  int taylor_order = 10;  // M, used by the regularized path
  Scheme scheme = Scheme::IFRK4;
  double theta_switch = 1.0;  // CompositeRK stiff threshold on |dt L|
  bool linear = false;        // drop N entirely (harness calibration)
  bool dealias = false;       // optional 2/3-rule filter on N
};

struct RunResult {
  cvec psi;                                      // final physical field
  double t_final = 0.0;
  std::vector<std::pair<double, double>> norms;  // (t, L2 norm)
  bool aborted = false;                          // blow-up / non-finite
  double t_abort = 0.0;                          // last good time if aborted
  long long transforms = 0;                      // 2D FFTs in the stepping loop
  long long transforms_per_step = 0;
};

struct EvolveOptions {
  double tmax = 1.0;
  int nt = 1000;
  int norm_every = 1;                  // cadence of (t, L2) records; 0 = off
  std::vector<double> snapshot_times;  // mapped to nearest step boundaries
  std::function<void(int step, double t, const cvec& psi)> on_snapshot;
};

class DsiiSolver {
 public:
  DsiiSolver(const Grid& g, const SolverConfig& cfg);

  // d/dt psihat = L psihat + N(...): the N part only (Fourier -> Fourier).
  void rhs(const cvec& psihat, double t, cvec& out);

  RunResult evolve(const cvec& psi0, const EvolveOptions& opt);

  const cvec& linear_symbol() const { return L_; }  // per-mode L
  const Grid& grid() const { return g_; }
  const SolverConfig& config() const { return cfg_; }

  // max Fourier-tail magnitude of psihat0 relative to its peak (resolution check)
  static double tail_indicator(const Grid& g, const cvec& psi0);

 private:
  Grid g_;
  SolverConfig cfg_;
  cvec L_;
  std::optional<Regularizer> reg_;
  std::vector<char> dealias_mask_;
  cvec psi_, s_, shat_, gfield_, prod_;
  double last_max_abs_ = 0.0;
};

}  // namespace dsii
