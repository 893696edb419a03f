#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dsii/nls1d.hpp"
#include "dsii/theta.hpp"
#include "dsii/wfields.hpp"

namespace py = pybind11;
using namespace dsii;

PYBIND11_MODULE(_dsii, m) {
  m.doc() = "DS II solver core: theta series, W fields, 1d NLS oracle";
  m.attr("__version__") = "1.0.0";

  m.def("theta", &theta::theta, py::arg("genus"), py::arg("B"), py::arg("z"),
        py::arg("radius") = -1,
        "Multidimensional theta series; B row-major genus x genus.");
  m.def("is_riemann_matrix", &theta::is_riemann_matrix, py::arg("genus"), py::arg("B"),
        py::arg("tol") = 1e-12);
  m.def("wfield", &wfields::w, py::arg("n"), py::arg("z"),
        "Closed-form inverse transform W_n(z) of conj(xi)^n e^{-|xi|^2}/xi.");
  m.def("qfun", &wfields::qfun, py::arg("n"), py::arg("u"),
        "Regularized lower incomplete gamma P(n+1, u).");
  m.def(
      "evolve_nls1d",
      [](const std::vector<cplx>& q0, double coeff, double tmax, int nt, double lx) {
        const auto r = nls1d::evolve_1d(q0, coeff, tmax, nt, lx);
        if (r.aborted) throw std::runtime_error("nls1d blow-up");
        return r.q;
      },
      py::arg("q0"), py::arg("coeff"), py::arg("tmax"), py::arg("nt"), py::arg("lx"),
      "1d cubic NLS i q_t + q_xx + coeff |q|^2 q = 0 on lx*[-pi,pi).");
}
