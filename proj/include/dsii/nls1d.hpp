#pragma once
#include <vector>

#include "dsii/common.hpp"

// Independent 1D cubic NLS pseudospectral solver (oracle for the DS II
// y-independent reduction):  i q_t + q_xx + coeff |q|^2 q = 0  on lx*[-pi,pi),
// integrating-factor RK4 in Fourier space with 1D FFTs.
namespace dsii::nls1d {

struct Result {
  std::vector<cplx> q;
  bool aborted = false;
  double t_abort = 0.0;
};

Result evolve_1d(const std::vector<cplx>& q0, double coeff, double tmax, int nt,
                 double lx);

double l2_norm(const std::vector<cplx>& q, double lx);  // sqrt(sum |q|^2 dx)

}  // namespace dsii::nls1d
