#include "dsii/regularizer.hpp"

#include <cmath>
#include <stdexcept>

#include "dsii/spectral.hpp"

namespace dsii {

MomentSet compute_moments(const Grid& g, const cplx* s_phys, int order) {
  MomentSet ms;
  ms.order = order;
  ms.dbar.assign(order + 1, cplx(0));
  ms.d.assign(order + 1, cplx(0));
  for (int ix = 0; ix < g.nx; ++ix) {
    const double x = g.x(ix);
    for (int iy = 0; iy < g.ny; ++iy) {
      const cplx f = s_phys[g.idx(ix, iy)];
      const cplx mz(0.5 * g.y(iy), -0.5 * x);   // -i z / 2
      const cplx mzb(-0.5 * g.y(iy), -0.5 * x); // -i conj(z) / 2
      cplx p = f, q = f;
      for (int n = 0; n < order; ++n) {
        ms.dbar[n] += p;
        ms.d[n] += q;
        p *= mz;
        q *= mzb;
      }
      ms.dbar[order] += p;
      ms.d[order] += q;
    }
  }
  const double scale = g.cell_area() / (2.0 * pi);
  for (int n = 0; n <= order; ++n) {
    ms.dbar[n] *= scale;
    ms.d[n] *= scale;
  }
  return ms;
}

void classical_nonlocal(const Grid& g, const cplx* shat, cplx* out) {
  for (int k = 0; k < g.nx; ++k) {
    const double x1 = g.xi1(k), x1sq = x1 * x1;
    for (int m = 0; m < g.ny; ++m) {
      const double x2 = g.xi2(m);
      const double n2 = x1sq + x2 * x2;
      const double cs = n2 == 0.0 ? 0.0 : (x1sq - x2 * x2) / n2;
      const std::size_t i = g.idx(k, m);
      out[i] = cs * shat[i];
    }
  }
}

Regularizer::Regularizer(const Grid& g, int order)
    : g_(g), tab_(wfields::make_tables(g, order)) {
  const int M = order;
  const std::size_t n = g.size();
  xi_.resize(n);
  q1_.resize(n);
  skip_.assign(n, 0);
  for (int k = 0; k < g.nx; ++k) {
    for (int m = 0; m < g.ny; ++m) {
      const std::size_t i = g.idx(k, m);
      const cplx xi(g.xi1(k), g.xi2(m));
      xi_[i] = xi;
      const double a = std::abs(xi);
      q1_[i] = a == 0.0 ? cplx(0) : std::conj(xi) / xi;
      // D is dropped where the Gaussian window kills it beyond double rounding
      skip_[i] = tab_.gauss_window[i] * std::pow(1.0 + a, M + 1) < 1e-24;
    }
  }
  // node-major copy of W_{n+1}, n = 0..M, for the correction inner loop
  wflat_.resize(n * std::size_t(M + 1));
  for (std::size_t j = 0; j < n; ++j)
    for (int nn = 0; nn <= M; ++nn) wflat_[j * (M + 1) + nn] = tab_.wn[nn + 1][j];
}

void Regularizer::apply(const MomentSet& m, const cplx* shat, cplx* out) const {
  if (m.order != tab_.order)
    throw std::invalid_argument("moment order does not match tables");
  const int M = tab_.order;
  const std::size_t n = g_.size();

  // ca_n = dbar_n / (2 n!), cb_n = d_n / (2 n!); eb_n = (-1)^n cb_n absorbs
  // the parity of Wt_{n+1} = (-1)^n conj(W_{n+1}) for the correction loop
  std::vector<cplx> ca(M + 1), cb(M + 1), eb(M + 1);
  double fact = 1.0;
  for (int k = 0; k <= M; ++k) {
    if (k > 0) fact *= k;
    ca[k] = m.dbar[k] / (2.0 * fact);
    cb[k] = m.d[k] / (2.0 * fact);
    eb[k] = (k % 2 ? -cb[k] : cb[k]);
  }

  // residual cos(2psi) shat - D, with D via Horner in conj(xi) and xi
  scratch_.resize(n);
  const std::size_t origin = g_.idx(0, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const double cs = tab_.classical_symbol[i];
    if (skip_[i]) {
      scratch_[i] = cs * shat[i];
      continue;
    }
    const cplx xi = xi_[i], xib = std::conj(xi);
    cplx A = ca[M], B = cb[M];
    for (int k = M - 1; k >= 0; --k) {
      A = A * xib + ca[k];
      B = B * xi + cb[k];
    }
    scratch_[i] = cs * shat[i] - tab_.gauss_window[i] * (q1_[i] * A + std::conj(q1_[i]) * B);
  }
  scratch_[origin] = cplx(0);  // residual origin mode

  spectral::inverse(g_, scratch_.data(), out);  // the single inverse FFT

  // exact correction sum ca_n W_{n+1}(z) + cb_n Wt_{n+1}(z), with
  // Wt_{n+1} = (-1)^n conj(W_{n+1}) folded into eb_n
  const cplx* wrow = wflat_.data();
  for (std::size_t j = 0; j < n; ++j, wrow += M + 1) {
    cplx acc(0);
    for (int k = 0; k <= M; ++k) {
      const cplx wv = wrow[k];
      acc += ca[k] * wv + eb[k] * std::conj(wv);
    }
    out[j] += acc;
  }
}

}  // namespace dsii
