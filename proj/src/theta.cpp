#include "dsii/theta.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dsii::theta {
namespace {

constexpr int kMaxGenus = 4;
constexpr int kMaxRadius = 80;

// sum of exp(<n|Bn>/2 + <n|z>) (weighted by <n|d> if d) over ||n||_inf == R
cplx shell(int g, const std::vector<cplx>& B, const std::vector<cplx>& z,
           const std::vector<cplx>* d, int R) {
  std::array<int, kMaxGenus> n{};
  n.fill(-R);
  cplx sum(0);
  for (;;) {
    int linf = 0;
    for (int i = 0; i < g; ++i) linf = std::max(linf, std::abs(n[i]));
    if (linf == R) {
      cplx e(0);
      for (int i = 0; i < g; ++i) {
        e += double(n[i]) * z[i];
        for (int j = 0; j < g; ++j) e += 0.5 * double(n[i]) * B[i * g + j] * double(n[j]);
      }
      cplx term = std::exp(e);
      if (d) {
        cplx wgt(0);
        for (int i = 0; i < g; ++i) wgt += double(n[i]) * (*d)[i];
        term *= wgt;
      }
      sum += term;
    }
    int i = 0;
    while (i < g && n[i] == R) n[i++] = -R;
    if (i == g) break;
    ++n[i];
  }
  return sum;
}

cplx series(int g, const std::vector<cplx>& B, const std::vector<cplx>& z,
            const std::vector<cplx>* d, int radius) {
  if (g < 1 || g > kMaxGenus) throw std::invalid_argument("genus must be 1..4");
  if (B.size() != std::size_t(g) * g || z.size() != std::size_t(g))
    throw std::invalid_argument("theta argument sizes do not match genus");
  if (radius >= 0) {
    cplx total(0);
    for (int R = 0; R <= radius; ++R) total += shell(g, B, z, d, R);
    return total;
  }
  // auto mode: grow until a shell is negligible against the running scale
  cplx total = shell(g, B, z, d, 0);
  double scale = std::abs(total);
  int quiet = 0;
  for (int R = 1; R <= kMaxRadius; ++R) {
    const cplx s = shell(g, B, z, d, R);
    total += s;
    scale = std::max(scale, std::abs(total));
    if (std::abs(s) <= 1e-16 * std::max(scale, 1e-300)) {
      if (++quiet == 2) break;
    } else {
      quiet = 0;
    }
  }
  return total;
}

std::vector<cplx> zvec(const SurfaceData& sd, double x, double y, double t) {
  const int g = sd.genus;
  const cplx Xi(x, y), eta(x, -y);
  const cplx I(0, 1);
  std::vector<cplx> z(g);
  for (int j = 0; j < g; ++j) {
    const cplx Vb = -std::conj(sd.Va[j]);       // defocusing regularity
    const cplx Wb = -std::conj(sd.Wa[j]);
    z[j] = I * sd.Va[j] * Xi - I * Vb * eta + I * (sd.Wa[j] - Wb) * (t / 2.0);
  }
  return z;
}

}  // namespace

cplx theta(int g, const std::vector<cplx>& B, const std::vector<cplx>& z, int radius) {
  return series(g, B, z, nullptr, radius);
}

cplx theta_dir(int g, const std::vector<cplx>& B, const std::vector<cplx>& z,
               const std::vector<cplx>& d, int radius) {
  if (d.size() != std::size_t(g)) throw std::invalid_argument("direction size mismatch");
  return series(g, B, z, &d, radius);
}

bool is_riemann_matrix(int g, const std::vector<cplx>& B, double tol) {
  if (g < 1 || g > kMaxGenus || B.size() != std::size_t(g) * g) return false;
  double bmax = 1.0;
  for (const cplx& v : B) bmax = std::max(bmax, std::abs(v));
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < i; ++j)
      if (std::abs(B[i * g + j] - B[j * g + i]) > tol * bmax) return false;
  // -Re(B) must be positive definite: plain Cholesky
  std::array<double, kMaxGenus * kMaxGenus> a{};
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) a[i * g + j] = -B[i * g + j].real();
  for (int i = 0; i < g; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = a[i * g + j];
      for (int k = 0; k < j; ++k) s -= a[i * g + k] * a[j * g + k];
      if (i == j) {
        if (s <= 0.0) return false;
        a[i * g + i] = std::sqrt(s);
      } else {
        a[i * g + j] = s / a[j * g + j];
      }
    }
  }
  return true;
}

SurfaceData load_surface(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path);
  // first pass: find the genus, then fill indexed entries
  std::vector<std::vector<std::string>> lines;
  std::string line;
  int genus = 0;
  while (std::getline(is, line)) {
    std::istringstream ss(line);
    std::vector<std::string> tok;
    std::string t;
    while (ss >> t) {
      if (t[0] == '#') break;
      tok.push_back(t);
    }
    if (tok.empty()) continue;
    if (tok[0] == "genus") {
      if (tok.size() != 2) throw std::runtime_error("bad genus line");
      genus = std::atoi(tok[1].c_str());
    }
    lines.push_back(std::move(tok));
  }
  if (genus < 1 || genus > kMaxGenus)
    throw std::runtime_error("surface file must declare genus 1..4");

  SurfaceData sd;
  sd.genus = genus;
  sd.B.assign(std::size_t(genus) * genus, cplx(0));
  sd.Va.assign(genus, cplx(0));
  sd.Wa.assign(genus, cplx(0));
  sd.r.assign(genus, cplx(0));

  auto want = [&](const std::vector<std::string>& tok, std::size_t n) {
    if (tok.size() != n)
      throw std::runtime_error("bad entry for key '" + tok[0] + "'");
  };
  auto idx = [&](const std::string& s) {
    const int i = std::atoi(s.c_str());
    if (i < 1 || i > genus) throw std::runtime_error("index out of range: " + s);
    return i - 1;
  };
  auto num = [&](const std::string& re, const std::string& im) {
    return cplx(std::strtod(re.c_str(), nullptr), std::strtod(im.c_str(), nullptr));
  };

  for (const auto& tok : lines) {
    const std::string& k = tok[0];
    if (k == "genus") continue;
    if (k == "B") {
      want(tok, 5);
      sd.B[std::size_t(idx(tok[1])) * genus + idx(tok[2])] = num(tok[3], tok[4]);
    } else if (k == "Va" || k == "Wa" || k == "r") {
      want(tok, 4);
      auto& v = k == "Va" ? sd.Va : k == "Wa" ? sd.Wa : sd.r;
      v[idx(tok[1])] = num(tok[2], tok[3]);
    } else if (k == "N1" || k == "N3" || k == "q2") {
      want(tok, 3);
      (k == "N1" ? sd.N1 : k == "N3" ? sd.N3 : sd.q2) = num(tok[1], tok[2]);
    } else {
      throw std::runtime_error("unknown key in surface file: " + k);
    }
  }
  validate_surface(sd);
  return sd;
}

void save_surface(const std::string& path, const SurfaceData& sd) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  os.precision(17);
  os << "# DS II doubly periodic surface data\n";
  os << "genus " << sd.genus << "\n";
  for (int i = 0; i < sd.genus; ++i)
    for (int j = 0; j < sd.genus; ++j) {
      const cplx v = sd.B[std::size_t(i) * sd.genus + j];
      os << "B " << i + 1 << ' ' << j + 1 << ' ' << v.real() << ' ' << v.imag() << "\n";
    }
  auto vec = [&](const char* k, const std::vector<cplx>& v) {
    for (int i = 0; i < sd.genus; ++i)
      os << k << ' ' << i + 1 << ' ' << v[i].real() << ' ' << v[i].imag() << "\n";
  };
  vec("Va", sd.Va);
  vec("Wa", sd.Wa);
  vec("r", sd.r);
  os << "N1 " << sd.N1.real() << ' ' << sd.N1.imag() << "\n";
  os << "N3 " << sd.N3.real() << ' ' << sd.N3.imag() << "\n";
  os << "q2 " << sd.q2.real() << ' ' << sd.q2.imag() << "\n";
}

void validate_surface(const SurfaceData& sd) {
  const std::size_t g = sd.genus;
  if (sd.B.size() != g * g || sd.Va.size() != g || sd.Wa.size() != g || sd.r.size() != g)
    throw std::runtime_error("surface data sizes do not match genus");
  if (!is_riemann_matrix(sd.genus, sd.B))
    throw std::runtime_error("B is not a Riemann matrix (symmetric, Re negative definite)");
}

EvalResult eval_solution(const SurfaceData& sd, double x, double y, double t) {
  const cplx Xi(x, y), eta(x, -y), I(0, 1);
  const auto z = zvec(sd, x, y, t);
  std::vector<cplx> zr(z);
  for (int j = 0; j < sd.genus; ++j) zr[j] += sd.r[j];
  const cplx th0 = theta(sd.genus, sd.B, z);
  const cplx th1 = theta(sd.genus, sd.B, zr);
  EvalResult er;
  er.singular = std::abs(th0) < 1e-13 * (std::abs(th1) + 1e-300);
  const cplx phase = std::exp(I * (-sd.N1 * Xi - std::conj(sd.N1) * eta + sd.N3 * (t / 2.0)));
  er.value = std::sqrt(std::abs(sd.q2)) * (th1 / th0) * phase;
  return er;
}

cplx dpsi_dt(const SurfaceData& sd, double x, double y, double t) {
  const cplx I(0, 1);
  const auto z = zvec(sd, x, y, t);
  std::vector<cplx> zr(z), d(sd.genus);
  for (int j = 0; j < sd.genus; ++j) {
    zr[j] += sd.r[j];
    d[j] = I * (sd.Wa[j] + std::conj(sd.Wa[j])) / 2.0;  // dz/dt, Wb = -conj(Wa)
  }
  const cplx th0 = theta(sd.genus, sd.B, z);
  const cplx th1 = theta(sd.genus, sd.B, zr);
  const cplx td0 = theta_dir(sd.genus, sd.B, z, d);
  const cplx td1 = theta_dir(sd.genus, sd.B, zr, d);
  const EvalResult er = eval_solution(sd, x, y, t);
  return er.value * (td1 / th1 - td0 / th0 + I * sd.N3 / 2.0);
}

cvec eval_grid(const SurfaceData& sd, const Grid& g, double t, bool* any_singular) {
  cvec f(g.size());
  bool sing = false;
  for (int ix = 0; ix < g.nx; ++ix) {
    const double x = g.x(ix);
    for (int iy = 0; iy < g.ny; ++iy) {
      const EvalResult er = eval_solution(sd, x, g.y(iy), t);
      f[g.idx(ix, iy)] = er.value;
      sing = sing || er.singular;
    }
  }
  if (any_singular) *any_singular = sing;
  return f;
}

PeriodicityReport check_periodicity(const SurfaceData& sd, double Lx, double Ly,
                                    long n1, long n2, long m1, long m2, double tol) {
  PeriodicityReport rep;
  const cplx V1 = sd.Va[0];
  if (sd.genus >= 2) {
    const cplx V2 = sd.Va[1];
    rep.res_n = double(n1) * V1.real() - double(n2) * V2.real();
    rep.res_m = double(m1) * V1.imag() - double(m2) * V2.imag();
  }
  rep.degenerate_x = std::abs(V1.real()) < 1e-14;
  rep.degenerate_y = std::abs(V1.imag()) < 1e-14;
  if (!rep.degenerate_x) {
    const double r1 = sd.N1.real() / V1.real();
    rep.l1 = std::lround(r1);
    rep.res_l1 = std::abs(r1 - double(rep.l1));
    rep.lx = pi * double(n1) / V1.real();
    rep.match_x = std::abs(rep.lx - Lx) <= tol * std::max(1.0, std::abs(Lx));
  }
  if (!rep.degenerate_y) {
    const double r2 = sd.N1.imag() / V1.imag();
    rep.l2 = std::lround(r2);
    rep.res_l2 = std::abs(r2 - double(rep.l2));
    rep.ly = -pi * double(m1) / V1.imag();
    rep.match_y = std::abs(rep.ly - Ly) <= tol * std::max(1.0, std::abs(Ly));
  }
  rep.pass = std::abs(rep.res_n) <= tol && std::abs(rep.res_m) <= tol &&
             (rep.degenerate_x || (rep.res_l1 <= tol && rep.match_x)) &&
             (rep.degenerate_y || (rep.res_l2 <= tol && rep.match_y));
  return rep;
}

}  // namespace dsii::theta
