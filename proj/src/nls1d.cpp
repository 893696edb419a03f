#include "dsii/nls1d.hpp"

#include <cmath>
#include <stdexcept>

#include "dsii/fft.hpp"
#include "dsii/grid.hpp"

namespace dsii::nls1d {
namespace {

// i q_t + q_xx + c |q|^2 q = 0  ->  qhat_t = L qhat + N(q),
// L = -i xi^2, N = F[i c |q|^2 q].  Unnormalized FFTs; 1/n on the inverse.
struct Work {
  int n;
  double coeff;
  cvec q, nl;

  Work(int n_, double c) : n(n_), coeff(c), q(n_), nl(n_) {}

  // N evaluated from qhat; also reports max |q| for blow-up detection
  void rhs(const cvec& qhat, cvec& out, double* amax) {
    fft::ifft1(n, qhat.data(), q.data());
    double m = 0.0;
    const double inv = 1.0 / n;
    const cplx ic(0.0, coeff);
    for (int j = 0; j < n; ++j) {
      const cplx v = q[j] * inv;
      m = std::max(m, std::abs(v));
      nl[j] = ic * std::norm(v) * v;
    }
    fft::fft1(n, nl.data(), out.data());
    if (amax) *amax = m;
  }
};

}  // namespace

Result evolve_1d(const std::vector<cplx>& q0, double coeff, double tmax, int nt,
                 double lx) {
  const int n = int(q0.size());
  if (n < 8 || (n & (n - 1)) != 0)
    throw std::invalid_argument("1d size must be a power of two >= 8");
  if (nt < 1) throw std::invalid_argument("nt must be >= 1");
  if (!(lx > 0)) throw std::invalid_argument("lx must be positive");

  const double dt = tmax / nt;
  Work w(n, coeff);

  cvec qhat(n), u2(n), k1(n), k2(n), k3(n), k4(n), phys(n);
  std::copy(q0.begin(), q0.end(), phys.begin());
  fft::fft1(n, phys.data(), qhat.data());

  // integrating factors for L = -i xi^2
  cvec E(n), E2(n);
  for (int k = 0; k < n; ++k) {
    const int kk = k < n / 2 ? k : k - n;
    const double xi = kk / lx;
    E[k] = std::exp(cplx(0.0, -xi * xi * dt));
    E2[k] = std::exp(cplx(0.0, -xi * xi * dt / 2.0));
  }

  double amax0 = 0.0;
  for (const cplx& v : q0) amax0 = std::max(amax0, std::abs(v));
  const double cap = 1e10 * std::max(amax0, 1.0);

  Result res;
  for (int s = 0; s < nt; ++s) {
    double am = 0.0;
    w.rhs(qhat, k1, &am);
    if (!std::isfinite(am) || am > cap) {
      res.aborted = true;
      res.t_abort = s * dt;
      break;
    }
    for (int k = 0; k < n; ++k) u2[k] = E2[k] * (qhat[k] + 0.5 * dt * k1[k]);
    w.rhs(u2, k2, nullptr);
    for (int k = 0; k < n; ++k) u2[k] = E2[k] * qhat[k] + 0.5 * dt * k2[k];
    w.rhs(u2, k3, nullptr);
    for (int k = 0; k < n; ++k) u2[k] = E[k] * qhat[k] + dt * E2[k] * k3[k];
    w.rhs(u2, k4, nullptr);
    for (int k = 0; k < n; ++k)
      qhat[k] = E[k] * qhat[k] +
                dt * (E[k] * k1[k] + 2.0 * E2[k] * (k2[k] + k3[k]) + k4[k]) / 6.0;
  }

  fft::ifft1(n, qhat.data(), phys.data());
  res.q.assign(phys.begin(), phys.end());
  const double inv = 1.0 / n;
  for (cplx& v : res.q) v *= inv;
  return res;
}

double l2_norm(const std::vector<cplx>& q, double lx) {
  const double dx = 2.0 * pi * lx / q.size();
  double s = 0.0;
  for (const cplx& v : q) s += std::norm(v);
  return std::sqrt(s * dx);
}

}  // namespace dsii::nls1d
