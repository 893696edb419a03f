#include "dsii/spectral.hpp"

#include <cmath>

namespace dsii::spectral {
namespace {

// scratch for the inverse path (phase must be applied before the transform)
cvec& scratch(std::size_t n) {
  static thread_local cvec buf;
  if (buf.size() < n) buf.resize(n);
  return buf;
}

}  // namespace

void forward(const Grid& g, const cplx* f, cplx* fhat) {
  fft::fft2(g.nx, g.ny, f, fhat);
  const double s = 2.0 * pi * g.lx * g.ly / (double(g.nx) * g.ny);
  for (int k = 0; k < g.nx; ++k) {
    const double sk = (k & 1) ? -s : s;
    cplx* row = fhat + g.idx(k, 0);
    for (int m = 0; m < g.ny; ++m) row[m] *= (m & 1) ? -sk : sk;
  }
}

void inverse(const Grid& g, const cplx* fhat, cplx* f) {
  cvec& tmp = scratch(g.size());
  const double s = 1.0 / (2.0 * pi * g.lx * g.ly);
  for (int k = 0; k < g.nx; ++k) {
    const double sk = (k & 1) ? -s : s;
    const cplx* row = fhat + g.idx(k, 0);
    cplx* trow = tmp.data() + g.idx(k, 0);
    for (int m = 0; m < g.ny; ++m) trow[m] = row[m] * ((m & 1) ? -sk : sk);
  }
  fft::ifft2(g.nx, g.ny, tmp.data(), f);
}

double l2_norm(const Grid& g, const cplx* f) {
  double acc = 0;
  const std::size_t n = g.size();
  for (std::size_t i = 0; i < n; ++i) acc += std::norm(f[i]);
  return std::sqrt(acc * g.cell_area());
}

double l2_norm_hat(const Grid& g, const cplx* fhat) {
  double acc = 0;
  const std::size_t n = g.size();
  for (std::size_t i = 0; i < n; ++i) acc += std::norm(fhat[i]);
  return std::sqrt(acc / (g.lx * g.ly));
}

std::vector<double> laplace_symbol_ds(const Grid& g) {
  std::vector<double> s(g.size());
  for (int k = 0; k < g.nx; ++k) {
    const double x1 = g.xi1(k), x1sq = x1 * x1;
    for (int m = 0; m < g.ny; ++m) {
      const double x2 = g.xi2(m);
      s[g.idx(k, m)] = x1sq - x2 * x2;
    }
  }
  return s;
}

}  // namespace dsii::spectral
