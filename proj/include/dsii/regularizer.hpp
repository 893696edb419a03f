#pragma once
#include <vector>

#include "dsii/wfields.hpp"

// The nonlocal term of DS II: evaluation of F^{-1}[ cos(2psi) * shat ] where
// cos(2psi) = (xi1^2 - xi2^2)/|xi|^2 is bounded but discontinuous at xi = 0.
//
//  - classical_nonlocal: multiply by the symbol with the origin mode set to 0
//    (accuracy saturates near 1e-6 for Schwartz data).
//  - Regularizer::apply: hybrid scheme. A Gaussian-windowed Taylor polynomial
//    of shat at the origin,
//      D(xi) = (1/2) e^{-|xi|^2} sum_{n<=M} [a_n conj(xi)^{n+1}/xi
//                                            + b_n xi^{n+1}/conj(xi)]/n!,
//    is subtracted before the inverse FFT (origin mode of the residual = 0)
//    and added back exactly through the closed-form fields:
//      C(z) = (1/2) sum_{n<=M} [a_n W_{n+1}(z) + b_n Wt_{n+1}(z)]/n!.
//    Exactly one inverse FFT per call, same budget as the classical path.
namespace dsii {

struct MomentSet {
  int order = 0;
  std::vector<cplx> dbar;  // a_n = d^n/d(conj xi)^n shat(0), n = 0..order
  std::vector<cplx> d;     // b_n = d^n/d(xi)^n shat(0); (-1)^n conj(a_n) for real input
};

// Moments by grid quadrature of the physical field, no transforms:
// a_n = (1/2pi) sum s(z) (-i z/2)^n dx dy, b_n likewise with conj(z).
MomentSet compute_moments(const Grid& g, const cplx* s_phys, int order);

// out(xi) = classical_symbol(xi) * shat(xi), Fourier -> Fourier, no FFT.
void classical_nonlocal(const Grid& g, const cplx* shat, cplx* out);

class Regularizer {
 public:
  Regularizer(const Grid& g, int order);  // builds the W tables (order >= 1)

  // out(z) = F^{-1}[cos(2psi) shat](z), physical space. Complex-valued by
  // construction; the imaginary part is at the scheme-error level and
  // vanishes for fields even under z -> -z.
  void apply(const MomentSet& m, const cplx* shat, cplx* out) const;

  int order() const { return tab_.order; }
  const wfields::Tables& tables() const { return tab_; }

 private:
  Grid g_;
  wfields::Tables tab_;
  cvec xi_, q1_;             // xi per mode; conj(xi)/xi (0 at origin)
  std::vector<char> skip_;   // modes where the windowed subtraction underflows
  cvec wflat_;               // node-major W_{n+1}(z_j), n = 0..order
  mutable cvec scratch_;
};

}  // namespace dsii
