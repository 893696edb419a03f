#include "dsii/initial_data.hpp"

#include <cmath>
#include <stdexcept>

#include "dsii/io.hpp"

namespace dsii::initial_data {

cvec gaussian(const Grid& g) {
  cvec f(g.size());
  for (int ix = 0; ix < g.nx; ++ix) {
    const double x = g.x(ix);
    for (int iy = 0; iy < g.ny; ++iy) {
      const double y = g.y(iy);
      f[g.idx(ix, iy)] = std::exp(-(x * x + y * y));
    }
  }
  return f;
}

cvec asymmetric_gaussian(const Grid& g) {
  cvec f(g.size());
  for (int ix = 0; ix < g.nx; ++ix) {
    const double x = g.x(ix);
    for (int iy = 0; iy < g.ny; ++iy) {
      const double y = g.y(iy);
      f[g.idx(ix, iy)] = std::exp(-(x * x + x * y + 2.0 * y * y));
    }
  }
  return f;
}

cvec from_file(const std::string& path, const Grid& g) {
  io::LoadedField lf = io::read_field(path);
  if (!(lf.grid == g))
    throw std::runtime_error("field file dimensions do not match the requested grid");
  return std::move(lf.f);
}

}  // namespace dsii::initial_data
