#pragma once
#include <vector>

#include "dsii/grid.hpp"

// Closed forms for the inverse transforms of the windowed singular monomials,
//   W_n(z)  = F^{-1}[ conj(xi)^n e^{-|xi|^2} / xi ],
//   Wt_n(z) = F^{-1}[ xi^n e^{-|xi|^2} / conj(xi) ],
// with xi = xi1 + i*xi2, z = x + i*y. Writing u = |z|^2/4,
//   W_n(z)  = i (2i)^n n! * Q_n(u) / z^{n+1},      Q_n(u) = 1 - e^{-u} sum_{j<=n} u^j/j!,
//   Wt_n(z) = i (2i)^n n! * Q_n(u) / conj(z)^{n+1} = (-1)^{n+1} conj(W_n(z)).
// Q_n is the regularized lower incomplete gamma P(n+1, u); both forms have a
// removable singularity at z = 0 with value 0.
namespace dsii::wfields {

double qfun(int n, double u);   // Q_n(u), stable for all u >= 0
cplx w(int n, cplx z);          // W_n(z)
cplx wt(int n, cplx z);         // Wt_n(z)

// W_n sampled on the grid for n = 0..order+1 (the correction term of the
// regularizer consumes W_{n+1} for n up to the Taylor order). The conjugate
// family is recovered pointwise from the parity relation above, so only one
// family is stored. classical_symbol is cos(2psi) = (xi1^2-xi2^2)/|xi|^2 with
// the origin mode set to 0; gauss_window is e^{-|xi|^2}; both in native order.
struct Tables {
  Grid grid;
  int order = 0;                     // Taylor order M >= 1
  std::vector<cvec> wn;              // wn[n], n = 0..order+1
  std::vector<double> classical_symbol;
  std::vector<double> gauss_window;
};

Tables make_tables(const Grid& g, int order);

}  // namespace dsii::wfields
