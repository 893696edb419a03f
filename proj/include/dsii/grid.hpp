#pragma once
#include <cstddef>
#include <numbers>
#include <stdexcept>

#include "dsii/common.hpp"

namespace dsii {

inline constexpr double pi = std::numbers::pi;

// Uniform periodic grid on lx*[-pi,pi) x ly*[-pi,pi).
// Fields are row-major with x leading: f[ix*ny + iy].
// Fourier data is kept in FFT-native order: index k carries the integer
// wavenumber k for k < n/2 and k - n for k >= n/2, so xi1 = wavenumber/lx.
struct Grid {
  int nx = 0, ny = 0;
  double lx = 1.0, ly = 1.0;

  Grid() = default;
  Grid(int nx_, int ny_, double lx_, double ly_) : nx(nx_), ny(ny_), lx(lx_), ly(ly_) {
    auto pow2 = [](int n) { return n >= 8 && (n & (n - 1)) == 0; };
    if (!pow2(nx) || !pow2(ny))
      throw std::invalid_argument("grid sizes must be powers of two >= 8");
    if (!(lx > 0) || !(ly > 0))
      throw std::invalid_argument("grid scales must be positive");
  }

  std::size_t size() const { return std::size_t(nx) * std::size_t(ny); }
  std::size_t idx(int ix, int iy) const { return std::size_t(ix) * ny + iy; }

  double x(int ix) const { return lx * (-pi + 2.0 * pi * ix / nx); }
  double y(int iy) const { return ly * (-pi + 2.0 * pi * iy / ny); }
  int kx(int k) const { return k < nx / 2 ? k : k - nx; }  // integer wavenumber
  int ky(int m) const { return m < ny / 2 ? m : m - ny; }
  double xi1(int k) const { return kx(k) / lx; }
  double xi2(int m) const { return ky(m) / ly; }

  double dx() const { return 2.0 * pi * lx / nx; }
  double dy() const { return 2.0 * pi * ly / ny; }
  double cell_area() const { return dx() * dy(); }

  bool operator==(const Grid&) const = default;
};

}  // namespace dsii
