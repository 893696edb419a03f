#include "dsii/stepper.hpp"

#include <cmath>
#include <stdexcept>

namespace dsii {

Stepper::Stepper(Scheme s, const cvec& L, double dt, double theta)
    : scheme_(s), dt_(dt), L_(L) {
  if (dt == 0.0 || !std::isfinite(dt)) throw std::invalid_argument("bad dt");
  const std::size_t n = L.size();
  if (s == Scheme::IFRK4) {
    E_.resize(n);
    E2_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      E_[i] = std::exp(dt * L[i]);
      E2_[i] = std::exp(0.5 * dt * L[i]);
    }
  } else {
    stiff_.resize(n);
    dinv_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      stiff_[i] = std::abs(dt * L[i]) > theta;
      // stiff stages solve (1 - dt*gamma*L) U = rhs with gamma = 1/2
      dinv_[i] = stiff_[i] ? 1.0 / (1.0 - 0.5 * dt * L[i]) : cplx(0);
    }
  }
  k1_.resize(n);
  k2_.resize(n);
  k3_.resize(n);
  k4_.resize(n);
  u2_.resize(n);
  u3_.resize(n);
  u4_.resize(n);
  n1_.resize(n);
}

void Stepper::step(cvec& uhat, double t, const Rhs& rhs) {
  if (scheme_ == Scheme::IFRK4)
    step_ifrk4(uhat, t, rhs);
  else
    step_composite(uhat, t, rhs);
}

// k1 = dt N(u,t); k2 = dt N(E2 (u + k1/2), t+dt/2); k3 = dt N(E2 u + k2/2, ...);
// k4 = dt N(E u + E2 k3, t+dt); u+ = E u + (E k1 + 2 E2 (k2+k3) + k4)/6
void Stepper::step_ifrk4(cvec& uhat, double t, const Rhs& rhs) {
  const std::size_t n = uhat.size();
  const double dt = dt_;

  rhs(uhat, t, k1_);
  for (std::size_t i = 0; i < n; ++i) {
    k1_[i] *= dt;
    u2_[i] = E2_[i] * (uhat[i] + 0.5 * k1_[i]);
  }
  rhs(u2_, t + 0.5 * dt, k2_);
  for (std::size_t i = 0; i < n; ++i) {
    k2_[i] *= dt;
    u3_[i] = E2_[i] * uhat[i] + 0.5 * k2_[i];
  }
  rhs(u3_, t + 0.5 * dt, k3_);
  for (std::size_t i = 0; i < n; ++i) {
    k3_[i] *= dt;
    u4_[i] = E_[i] * uhat[i] + E2_[i] * k3_[i];
  }
  rhs(u4_, t + dt, k4_);
  for (std::size_t i = 0; i < n; ++i) {
    k4_[i] *= dt;
    uhat[i] = E_[i] * uhat[i] +
              (E_[i] * k1_[i] + 2.0 * (E2_[i] * (k2_[i] + k3_[i])) + k4_[i]) / 6.0;
  }
}

// Shared nodes c = (0, 1/2, 1/2, 1). Nonstiff modes: classical explicit RK4
// on the full right-hand side L u + N. Stiff modes: stage states treat L with
// the diagonally implicit rows (0), (0, g), (1/2, -1/2, g), (1/2, 0, 0, g),
// g = 1/2, and N with the RK4 rows; the step itself is a Crank-Nicolson solve
// for L with RK4 quadrature of N. |R| = 1 on the imaginary axis, second order
// on stiff modes, classical fourth order on the pure-explicit set. (An order-3
// A-stable combination does not exist for these rows: the order conditions
// force the explicit RK4 weights on L U_i, whose stability function grows
// like |dt L|^2.)
void Stepper::step_composite(cvec& uhat, double t, const Rhs& rhs) {
  const std::size_t n = uhat.size();
  const double dt = dt_;

  rhs(uhat, t, n1_);  // N1; stage 1 state is uhat itself
  for (std::size_t i = 0; i < n; ++i) {
    k1_[i] = L_[i] * uhat[i] + n1_[i];  // full f1, nonstiff combination only
    if (!stiff_[i])
      u2_[i] = uhat[i] + 0.5 * dt * k1_[i];
    else
      u2_[i] = (uhat[i] + 0.5 * dt * n1_[i]) * dinv_[i];
  }
  rhs(u2_, t + 0.5 * dt, k2_);  // k2_ holds N2
  for (std::size_t i = 0; i < n; ++i) {
    if (!stiff_[i]) {
      const cplx f2 = L_[i] * u2_[i] + k2_[i];
      u3_[i] = uhat[i] + 0.5 * dt * f2;
      k2_[i] = f2;
    } else {
      u3_[i] = (uhat[i] + 0.5 * dt * (L_[i] * (uhat[i] - u2_[i]) + k2_[i])) * dinv_[i];
    }
  }
  rhs(u3_, t + 0.5 * dt, k3_);  // N3
  for (std::size_t i = 0; i < n; ++i) {
    if (!stiff_[i]) {
      const cplx f3 = L_[i] * u3_[i] + k3_[i];
      u4_[i] = uhat[i] + dt * f3;
      k3_[i] = f3;
    } else {
      u4_[i] = (uhat[i] + dt * (0.5 * L_[i] * uhat[i] + k3_[i])) * dinv_[i];
    }
  }
  rhs(u4_, t + dt, k4_);  // N4
  for (std::size_t i = 0; i < n; ++i) {
    if (!stiff_[i]) {
      const cplx f4 = L_[i] * u4_[i] + k4_[i];
      uhat[i] += dt * (k1_[i] + 2.0 * (k2_[i] + k3_[i]) + f4) / 6.0;
    } else {
      // k2_, k3_ still hold N2, N3 on this branch
      const cplx nq = (n1_[i] + 2.0 * (k2_[i] + k3_[i]) + k4_[i]) / 6.0;
      uhat[i] = (uhat[i] + dt * (0.5 * L_[i] * uhat[i] + nq)) * dinv_[i];
    }
  }
}

}  // namespace dsii
