#pragma once
#include <functional>
#include <string>
#include <vector>

#include "dsii/solver.hpp"

namespace dsii::diagnostics {

double l2_norm(const Grid& g, const cvec& f);        // grid quadrature
double linf_error(const cvec& f, const cvec& h);     // max |f - h|

// max |fhat| per dyadic shell s: shell 0 is the origin mode, shell s >= 1
// covers 2^{s-1} <= max(|k|,|m|) < 2^s in integer wavenumbers.
std::vector<double> fourier_decay_report(const Grid& g, const cvec& f_phys);

// Evaluate the trigonometric interpolant of f (physical, on src) at arbitrary
// points, separably in x and y: result[i*ys.size()+j] = f(xs[i], ys[j]).
cvec trig_resample(const Grid& src, const cvec& f_phys,
                   const std::vector<double>& xs, const std::vector<double>& ys);

struct SweepRow {
  int level = 0;      // N = 2^level
  double l = 0;       // box scale L(N)
  double err_classical = -1, err_regularized = -1;  // -1 = not run
};

struct SweepResult {
  std::vector<SweepRow> rows;
  int ref_level = 0;
  double ref_l = 0;
  std::string class_regularized, class_classical;  // "spectral" / "saturating"
  double floor_classical = 0;  // min classical error (when run)
  bool aborted = false;
};

struct SweepConfig {
  std::string initial = "gaussian";  // gaussian | asymmetric
  std::vector<int> levels;           // e.g. {5,6,7,8}
  std::vector<double> lvals;         // L per level, same length
  int ref_level = 9;                 // reference: regularized at this level
  double ref_l = 0;                  // 0 = sqrt(2) * lvals.back()
  double tmax = 0.4;
  double dt = 0;                     // 0 = tmax/4000 (shared across all runs)
  double rho = 1.0, beta = 1.0;
  int taylor_order = 10;
  bool run_classical = true, run_regularized = true;
  bool linear = false;               // harness calibration: zero nonlinearity
  int jobs = 1;
  std::function<void(const std::string&)> log;  // progress lines (optional)
};

// Self-convergence study against the finest regularized run, errors measured
// in max norm on each coarse run's own nodes via trig interpolation of the
// reference (the L(N) scaling means grids are not nested).
SweepResult convergence_sweep(const SweepConfig& cfg);

}  // namespace dsii::diagnostics
