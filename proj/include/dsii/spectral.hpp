#pragma once
#include <vector>

#include "dsii/fft.hpp"
#include "dsii/grid.hpp"

// Discrete realization of the continuum transform pair
//   fhat(xi) = (1/2pi) int f e^{-i(xi1 x + xi2 y)} dx dy,
//   f(z)     = (1/2pi) int fhat e^{+i(xi1 x + xi2 y)} dxi1 dxi2,
// on the node/wavenumber lattice of Grid. The (-1)^{k+m} phase from the node
// offset -pi*l and the quadrature weights are folded into the scale factors,
// so every symbol formula applies verbatim in native FFT order.
namespace dsii::spectral {

void forward(const Grid& g, const cplx* f, cplx* fhat);   // may alias
void inverse(const Grid& g, const cplx* fhat, cplx* f);   // may alias

double l2_norm(const Grid& g, const cplx* f);      // sqrt(sum |f|^2 dx dy)
double l2_norm_hat(const Grid& g, const cplx* fhat);  // Parseval twin, exact

// xi1^2 - xi2^2 per mode (native order): symbol of dxx - dyy up to sign i^2.
std::vector<double> laplace_symbol_ds(const Grid& g);

}  // namespace dsii::spectral
