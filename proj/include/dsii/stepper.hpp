#pragma once
#include <functional>

#include "dsii/common.hpp"

// Time integrators for the diagonal semilinear system  du/dt = L u + N(u, t)
// in Fourier space. Default is integrating-factor RK4 (exact on the linear
// part). CompositeRK is a partitioned variant: modes with |dt L| <= theta use
// classical explicit RK4 on the full right-hand side; stiffer modes treat L
// by an A-stable Crank-Nicolson step (gamma = 1/2, per-mode scalar solves,
// second order) with the nonlinearity quadratured by the shared RK4 stages.
namespace dsii {

enum class Scheme { IFRK4, CompositeRK };

using Rhs = std::function<void(const cvec& uhat, double t, cvec& out)>;

class Stepper {
 public:
  Stepper(Scheme s, const cvec& L, double dt, double theta = 1.0);

  void step(cvec& uhat, double t, const Rhs& rhs);  // advance by dt in place
  double dt() const { return dt_; }
  Scheme scheme() const { return scheme_; }

 private:
  void step_ifrk4(cvec& uhat, double t, const Rhs& rhs);
  void step_composite(cvec& uhat, double t, const Rhs& rhs);

  Scheme scheme_;
  double dt_;
  cvec L_, E_, E2_;          // exp(dt L), exp(dt L / 2)
  std::vector<char> stiff_;  // CompositeRK partition
  cvec dinv_;                // 1/(1 - dt*gamma*L) on stiff modes
  cvec k1_, k2_, k3_, k4_, u2_, u3_, u4_, n1_;
};

}  // namespace dsii
