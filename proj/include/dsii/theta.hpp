#pragma once
#include <string>
#include <vector>

#include "dsii/grid.hpp"

// Multi-dimensional theta series
//   Theta(z) = sum_{n in Z^g} exp(<n|Bn>/2 + <n|z>),
// B symmetric with negative definite real part, plus the doubly periodic
// exact DS II solution built from surface data,
//   Psi = sqrt(|q2|) Theta(z+r)/Theta(z) exp(i(-N1 Xi - N2 eta + N3 t/2)),
//   Xi = x+iy, eta = x-iy, z = i Va Xi - i Vb eta + i(Wa - Wb) t/2,
// with the defocusing regularity conditions Vb = -conj(Va), N2 = conj(N1)
// (Wb = -conj(Wa)) applied, so Vb, N2, Wb are derived rather than stored.
namespace dsii::theta {

// B row-major g x g. radius < 0 selects auto truncation: shells of constant
// ||n||_inf are added until a shell contributes < 1e-16 of the partial sum.
cplx theta(int g, const std::vector<cplx>& B, const std::vector<cplx>& z,
           int radius = -1);
// Directional derivative sum_n <n|d> exp(...): d/ds Theta(z + s d) at s = 0.
cplx theta_dir(int g, const std::vector<cplx>& B, const std::vector<cplx>& z,
               const std::vector<cplx>& d, int radius = -1);

// symmetry to tol and negative definite real part
bool is_riemann_matrix(int g, const std::vector<cplx>& B, double tol = 1e-12);

struct SurfaceData {
  int genus = 1;
  std::vector<cplx> B;   // g x g row-major
  std::vector<cplx> Va;  // g
  std::vector<cplx> Wa;  // g
  std::vector<cplx> r;   // g
  cplx N1, N3, q2;
};

// Structured text, one "key [indices] re im" entry per line (see README).
SurfaceData load_surface(const std::string& path);
void save_surface(const std::string& path, const SurfaceData& sd);
void validate_surface(const SurfaceData& sd);  // throws on bad B / sizes

struct EvalResult {
  cplx value;
  bool singular = false;  // |Theta(z)| below 1e-13 * |Theta(z+r)| scale
};

EvalResult eval_solution(const SurfaceData& sd, double x, double y, double t);
cplx dpsi_dt(const SurfaceData& sd, double x, double y, double t);  // analytic
cvec eval_grid(const SurfaceData& sd, const Grid& g, double t,
               bool* any_singular = nullptr);

struct PeriodicityReport {
  double res_n = 0, res_m = 0;      // n1 Re Va1 - n2 Re Va2, m1 Im Va1 - m2 Im Va2
  long l1 = 0, l2 = 0;              // nearest integers to Re N1/Re Va1, Im N1/Im Va1
  double res_l1 = 0, res_l2 = 0;    // distance to those integers
  bool degenerate_x = false, degenerate_y = false;  // |denominator| < 1e-14
  double lx = 0, ly = 0;            // pi n1 / Re Va1, -pi m1 / Im Va1 (when defined)
  bool match_x = false, match_y = false;  // computed period == requested
  bool pass = false;
};

PeriodicityReport check_periodicity(const SurfaceData& sd, double Lx, double Ly,
                                    long n1, long n2, long m1, long m2,
                                    double tol = 1e-10);

}  // namespace dsii::theta
