#include "dsii/wfields.hpp"

#include <cmath>
#include <stdexcept>

namespace dsii::wfields {

namespace {
constexpr int kMaxOrder = 12;  // supported Taylor orders M (tables go to M+1)
}

double qfun(int n, double u) {
  if (u <= 0.0) return 0.0;
  if (u > n + 10.0) {
    // direct: 1 - e^{-u} sum_{j<=n} u^j/j!; no cancellation this far right of n
    double term = 1.0, sum = 1.0;
    for (int j = 1; j <= n; ++j) {
      term *= u / j;
      sum += term;
    }
    return 1.0 - std::exp(-u) * sum;
  }
  // tail: e^{-u} sum_{j>n} u^j/j!, all terms positive
  double p = std::exp(-u);
  for (int j = 1; j <= n + 1; ++j) p *= u / j;
  double sum = p;
  for (int j = n + 2; j < n + 500; ++j) {
    p *= u / j;
    sum += p;
    if (p < sum * 1e-18) break;
  }
  return sum;
}

cplx w(int n, cplx z) {
  const double r2 = std::norm(z);
  if (r2 == 0.0) return {0.0, 0.0};
  const double q = qfun(n, 0.25 * r2);
  if (q == 0.0) return {0.0, 0.0};
  // i (2i)^n n! q / z^{n+1}
  cplx pref(0.0, 1.0);
  double fact = 1.0;
  cplx zp = z;
  for (int j = 1; j <= n; ++j) {
    pref *= cplx(0.0, 2.0);
    fact *= j;
    zp *= z;
  }
  return pref * (fact * q) / zp;
}

cplx wt(int n, cplx z) {
  const cplx c = std::conj(w(n, z));
  return (n % 2 == 0) ? -c : c;  // Wt_n = (-1)^{n+1} conj(W_n)
}

Tables make_tables(const Grid& g, int order) {
  if (order < 1 || order > kMaxOrder)
    throw std::invalid_argument("taylor order must be in 1..12");
  Tables t;
  t.grid = g;
  t.order = order;
  t.wn.resize(order + 2);
  for (int n = 0; n <= order + 1; ++n) {
    cvec& f = t.wn[n];
    f.resize(g.size());
    for (int ix = 0; ix < g.nx; ++ix) {
      const double x = g.x(ix);
      for (int iy = 0; iy < g.ny; ++iy) f[g.idx(ix, iy)] = w(n, cplx(x, g.y(iy)));
    }
  }
  t.classical_symbol.resize(g.size());
  t.gauss_window.resize(g.size());
  for (int k = 0; k < g.nx; ++k) {
    const double x1 = g.xi1(k);
    for (int m = 0; m < g.ny; ++m) {
      const double x2 = g.xi2(m);
      const double n2 = x1 * x1 + x2 * x2;
      t.classical_symbol[g.idx(k, m)] = n2 == 0.0 ? 0.0 : (x1 * x1 - x2 * x2) / n2;
      t.gauss_window[g.idx(k, m)] = std::exp(-n2);
    }
  }
  return t;
}

}  // namespace dsii::wfields
