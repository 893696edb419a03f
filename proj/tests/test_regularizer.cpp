#include <cmath>
#include <random>

#include "doctest.h"
#include "dsii/regularizer.hpp"
#include "dsii/spectral.hpp"

using namespace dsii;

namespace {

cvec fill(const Grid& g, double (*f)(double, double)) {
  cvec v(g.size());
  for (int ix = 0; ix < g.nx; ++ix)
    for (int iy = 0; iy < g.ny; ++iy) v[g.idx(ix, iy)] = f(g.x(ix), g.y(iy));
  return v;
}

// radial reduction oracle for S = e^{-2|z|^2} (shat = e^{-|xi|^2/8}/4):
//   F^{-1}[cos(2psi) shat](z) = -cos(2theta)/4 * int_0^inf chi e^{-chi^2/8} J_2(chi r) dchi
double nonlocal_radial_oracle(cplx z) {
  const double r = std::abs(z), theta = std::arg(z);
  const double b = 18.0;  // e^{-40.5} truncation
  const int m = 36000;
  const double h = b / m;
  double s = 0;
  for (int j = 0; j <= m; ++j) {
    const double chi = j * h;
    const double f = chi * std::exp(-chi * chi / 8) * std::cyl_bessel_j(2.0, chi * r);
    s += f * (j == 0 || j == m ? 1.0 : (j % 2 ? 4.0 : 2.0));
  }
  return -std::cos(2 * theta) / 4 * s * h / 3.0;
}

}  // namespace

TEST_CASE("moments of a centred Gaussian") {
  Grid g(128, 128, 4, 4);
  const cvec s = fill(g, [](double x, double y) { return std::exp(-2 * (x * x + y * y)); });
  const MomentSet m = compute_moments(g, s.data(), 6);
  // a_0 = (1/2pi) integral = 1/4; higher radial moments vanish by symmetry
  CHECK(std::abs(m.dbar[0] - cplx(0.25, 0)) <= 1e-13);
  CHECK(std::abs(m.d[0] - cplx(0.25, 0)) <= 1e-13);
  for (int n = 1; n <= 6; ++n) {
    CHECK(std::abs(m.dbar[n]) <= 1e-13);
    CHECK(std::abs(m.d[n]) <= 1e-13);
  }
}

TEST_CASE("first moment of x e^{-|z|^2} and the real-input parity") {
  Grid g(128, 128, 4, 4);
  const cvec s =
      fill(g, [](double x, double y) { return x * std::exp(-(x * x + y * y)); });
  const MomentSet m = compute_moments(g, s.data(), 5);
  // a_1 = (1/2pi) int x e^{-r^2} (-i z/2) = -i/4pi * int x^2 e^{-r^2} = -i/8
  CHECK(std::abs(m.dbar[1] - cplx(0, -0.125)) <= 1e-13);
  // b_n = (-1)^n conj(a_n) for real data
  for (int n = 0; n <= 5; ++n) {
    const double sgn = n % 2 ? -1.0 : 1.0;
    CHECK(std::abs(m.d[n] - sgn * std::conj(m.dbar[n])) <= 1e-13);
  }
}

TEST_CASE("classical symbol multiplication") {
  Grid g(32, 32, 1, 1);
  cvec shat(g.size());
  for (std::size_t i = 0; i < shat.size(); ++i) shat[i] = cplx(1.0, -2.0);
  cvec out(g.size());
  classical_nonlocal(g, shat.data(), out.data());
  CHECK(out[g.idx(0, 0)] == cplx(0));
  CHECK(std::abs(out[g.idx(3, 0)] - cplx(1.0, -2.0)) <= 1e-15);   // pure xi1: symbol +1
  CHECK(std::abs(out[g.idx(0, 5)] + cplx(1.0, -2.0)) <= 1e-15);   // pure xi2: symbol -1
  CHECK(std::abs(out[g.idx(2, 2)]) <= 1e-15);                     // diagonal: symbol 0
}

TEST_CASE("regularized nonlocal term reproduces the closed form for a Gaussian") {
  // shat = e^{-|xi|^2} exactly when S = e^{-|z|^2/4}/2, and then
  // F^{-1}[cos(2psi) shat] = Re W_1(z)
  Grid g(128, 128, 5, 5);
  const cvec s =
      fill(g, [](double x, double y) { return 0.5 * std::exp(-(x * x + y * y) / 4); });
  cvec shat(g.size()), out(g.size());
  spectral::forward(g, s.data(), shat.data());
  Regularizer reg(g, 8);
  const MomentSet m = compute_moments(g, s.data(), 8);
  reg.apply(m, shat.data(), out.data());
  double err = 0, im = 0;
  for (int ix = 0; ix < g.nx; ++ix)
    for (int iy = 0; iy < g.ny; ++iy) {
      const std::size_t i = g.idx(ix, iy);
      err = std::max(err,
                     std::abs(out[i].real() - wfields::w(1, cplx(g.x(ix), g.y(iy))).real()));
      im = std::max(im, std::abs(out[i].imag()));
    }
  CHECK(err <= 1e-12);
  CHECK(im <= 1e-12);
}

TEST_CASE("output is real to machine precision for generic real input") {
  Grid g(64, 64, 3, 3);
  cvec s(g.size());
  for (int ix = 0; ix < g.nx; ++ix)
    for (int iy = 0; iy < g.ny; ++iy) {
      const double x = g.x(ix), y = g.y(iy);
      // asymmetric, offset, non-centred real data
      s[g.idx(ix, iy)] = std::exp(-((x - 0.4) * (x - 0.4) + 1.7 * (y + 0.2) * (y + 0.2))) +
                         0.5 * std::exp(-2 * ((x + 0.8) * (x + 0.8) + y * y));
    }
  cvec shat(g.size()), out(g.size());
  spectral::forward(g, s.data(), shat.data());
  Regularizer reg(g, 10);
  reg.apply(compute_moments(g, s.data(), 10), shat.data(), out.data());
  double im = 0;
  for (const cplx& v : out) im = std::max(im, std::abs(v.imag()));
  CHECK(im <= 1e-12);
}

TEST_CASE("independent radial quadrature oracle") {
  Grid g(256, 256, 6.15, 6.15);
  const cvec s = fill(g, [](double x, double y) { return std::exp(-2 * (x * x + y * y)); });
  cvec shat(g.size()), out(g.size());
  spectral::forward(g, s.data(), shat.data());
  Regularizer reg(g, 10);
  reg.apply(compute_moments(g, s.data(), 10), shat.data(), out.data());
  std::mt19937 rng(21);
  std::uniform_int_distribution<int> pick(96, 160);  // |x|,|y| <= 4.9 region
  for (int trial = 0; trial < 10; ++trial) {
    const int ix = pick(rng), iy = pick(rng);
    const cplx z(g.x(ix), g.y(iy));
    CHECK(std::abs(out[g.idx(ix, iy)].real() - nonlocal_radial_oracle(z)) <= 1e-9);
  }
}

TEST_CASE("accuracy improves with the Taylor order") {
  // shifted Gaussian so that every moment is populated
  Grid g(64, 64, 3, 3);
  const cvec s = fill(g, [](double x, double y) {
    return std::exp(-((x - 0.5) * (x - 0.5) + (y - 0.3) * (y - 0.3)));
  });
  cvec shat(g.size());
  spectral::forward(g, s.data(), shat.data());
  cvec ref(g.size());
  {
    Regularizer reg(g, 12);
    reg.apply(compute_moments(g, s.data(), 12), shat.data(), ref.data());
  }
  double prev = -1;
  std::vector<double> errs;
  for (int M : {2, 4, 6, 8}) {
    Regularizer reg(g, M);
    cvec out(g.size());
    reg.apply(compute_moments(g, s.data(), M), shat.data(), out.data());
    double e = 0;
    for (std::size_t i = 0; i < out.size(); ++i)
      e = std::max(e, std::abs(out[i] - ref[i]));
    errs.push_back(e);
    (void)prev;
  }
  CHECK(errs[1] < errs[0]);
  CHECK(errs[2] < errs[1]);
  CHECK(errs[3] < errs[2]);
  CHECK(errs[3] <= 1e-9);
}

TEST_CASE("data with vanishing moments reduces to the classical path") {
  // S = Re(z^6) e^{-|z|^2}: all moments through order 5 are zero by angular
  // orthogonality, so the hybrid and classical evaluations must coincide.
  Grid g(64, 64, 3, 3);
  const cvec s = fill(g, [](double x, double y) {
    const cplx z6 = std::pow(cplx(x, y), 6);
    return z6.real() * std::exp(-(x * x + y * y));
  });
  cvec shat(g.size()), cls(g.size()), out(g.size());
  spectral::forward(g, s.data(), shat.data());
  classical_nonlocal(g, shat.data(), cls.data());
  spectral::inverse(g, cls.data(), cls.data());
  Regularizer reg(g, 5);
  const MomentSet m = compute_moments(g, s.data(), 5);
  for (int n = 0; n <= 5; ++n) CHECK(std::abs(m.dbar[n]) <= 1e-13);
  reg.apply(m, shat.data(), out.data());
  double err = 0;
  for (std::size_t i = 0; i < out.size(); ++i)
    err = std::max(err, std::abs(out[i] - cls[i]));
  CHECK(err <= 1e-12);
}

TEST_CASE("apply performs exactly one inverse transform") {
  Grid g(32, 32, 2, 2);
  const cvec s = fill(g, [](double x, double y) { return std::exp(-(x * x + y * y)); });
  cvec shat(g.size()), out(g.size());
  spectral::forward(g, s.data(), shat.data());
  Regularizer reg(g, 6);
  const MomentSet m = compute_moments(g, s.data(), 6);
  fft::reset_transform_count();
  reg.apply(m, shat.data(), out.data());
  CHECK(fft::transform_count() == 1);
}

TEST_CASE("order mismatch is rejected") {
  Grid g(32, 32, 2, 2);
  const cvec s = fill(g, [](double x, double y) { return std::exp(-(x * x + y * y)); });
  cvec shat(g.size()), out(g.size());
  spectral::forward(g, s.data(), shat.data());
  Regularizer reg(g, 6);
  const MomentSet m = compute_moments(g, s.data(), 5);
  CHECK_THROWS_AS(reg.apply(m, shat.data(), out.data()), std::invalid_argument);
  CHECK_THROWS_AS(Regularizer(g, 0), std::invalid_argument);
  CHECK_THROWS_AS(Regularizer(g, 17), std::invalid_argument);
}
