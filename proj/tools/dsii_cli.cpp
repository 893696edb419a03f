// dsii: pseudospectral DS II solver and exact-solution tools.
#include <fftw3.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dsii/diagnostics.hpp"
#include "dsii/initial_data.hpp"
#include "dsii/io.hpp"
#include "dsii/nls1d.hpp"
#include "dsii/solver.hpp"
#include "dsii/theta.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace dsii;

namespace {

constexpr const char* kVersion = "1.0.0";

double parse_rho(const std::string& s) {
  if (s == "defocusing" || s == "+1" || s == "1" || s == "1.0") return 1.0;
  if (s == "focusing" || s == "-1" || s == "-1.0") return -1.0;
  throw CLI::ValidationError("--rho", "expected defocusing|focusing|+1|-1");
}

// Flat JSON config -> option tokens, injected before the explicit flags so
// that anything given on the command line overrides the file (TakeLast).
std::vector<std::string> config_tokens(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open config " + path);
  json j = json::parse(is);
  if (!j.is_object()) throw std::runtime_error("config must be a JSON object");
  std::vector<std::string> toks;
  for (const auto& [k, v] : j.items()) {
    std::string t = "--" + k + "=";
    if (v.is_array()) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) t += ',';
        t += v[i].is_string() ? v[i].get<std::string>() : v[i].dump();
      }
    } else {
      t += v.is_string() ? v.get<std::string>() : v.dump();
    }
    toks.push_back(std::move(t));
  }
  return toks;
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream os(path, std::ios::trunc);
  os << j.dump(2) << "\n";
}

json versions_json() {
  return {{"dsii", kVersion}, {"fftw", std::string(fftw_version)}};
}

// ---------------------------------------------------------------- evolve ---

struct EvolveArgs {
  int nx = 64, ny = 64;
  double lx = 2.6, ly = 2.6;
  std::string initial = "gaussian", initial_file;
  double amplitude = 1.0;
  std::string rho = "defocusing";
  double beta = 1.0;
  std::string method = "regularized", scheme = "ifrk4";
  int order = 10;
  double theta_switch = 1.0;
  bool linear = false, dealias = false;
  double tmax = 0.4;
  int nt = 1000, norm_every = 1;
  std::vector<double> snapshots;
  std::string out = "run";
  bool grid_given = false;
};

int run_evolve(const EvolveArgs& a) {
  Grid g;
  cvec psi0;
  if (!a.initial_file.empty()) {
    io::LoadedField lf = io::read_field(a.initial_file);
    if (a.grid_given) {
      g = Grid(a.nx, a.ny, a.lx, a.ly);
      if (!(g == lf.grid))
        throw std::runtime_error("--initial-file grid differs from the requested grid");
    } else {
      g = lf.grid;
    }
    psi0 = std::move(lf.f);
  } else {
    g = Grid(a.nx, a.ny, a.lx, a.ly);
    psi0 = a.initial == "gaussian" ? initial_data::gaussian(g)
                                   : initial_data::asymmetric_gaussian(g);
  }
  if (a.amplitude != 1.0)
    for (cplx& v : psi0) v *= a.amplitude;

  SolverConfig sc;
  sc.rho = parse_rho(a.rho);
  sc.beta = a.beta;
  sc.method = a.method == "classical" ? Nonlocal::Classical : Nonlocal::Regularized;
  sc.taylor_order = a.order;
  sc.scheme = a.scheme == "composite" ? Scheme::CompositeRK : Scheme::IFRK4;
  sc.theta_switch = a.theta_switch;
  sc.linear = a.linear;
  sc.dealias = a.dealias;

  const double tail = DsiiSolver::tail_indicator(g, psi0);
  DsiiSolver solver(g, sc);

  fs::create_directories(a.out);
  EvolveOptions opt;
  opt.tmax = a.tmax;
  opt.nt = a.nt;
  opt.norm_every = a.norm_every;
  opt.snapshot_times = a.snapshots;
  json snaps = json::array();
  int snapi = 0;
  opt.on_snapshot = [&](int step, double t, const cvec& psi) {
    char name[64];
    std::snprintf(name, sizeof(name), "snapshot_%03d.field", snapi++);
    io::write_field((fs::path(a.out) / name).string(), g, t, psi);
    snaps.push_back({{"file", name}, {"t", t}, {"step", step}});
  };

  const auto tic = std::chrono::steady_clock::now();
  RunResult r = solver.evolve(psi0, opt);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - tic).count();

  io::write_field((fs::path(a.out) / "final.field").string(), g, r.t_final, r.psi);
  if (opt.norm_every > 0) io::write_norms_csv((fs::path(a.out) / "norms.csv").string(), r.norms);

  json meta = {
      {"command", "evolve"},
      {"config",
       {{"nx", g.nx}, {"ny", g.ny}, {"lx", g.lx}, {"ly", g.ly},
        {"initial", a.initial_file.empty() ? a.initial : a.initial_file},
        {"amplitude", a.amplitude}, {"rho", sc.rho}, {"beta", sc.beta},
        {"method", a.method}, {"order", sc.taylor_order}, {"scheme", a.scheme},
        {"theta_switch", sc.theta_switch}, {"linear", sc.linear},
        {"dealias", sc.dealias}, {"tmax", a.tmax}, {"nt", a.nt},
        {"norm_every", a.norm_every}}},
      {"versions", versions_json()},
      {"tail_indicator", tail},
      {"timing", {{"wall_s", wall}}},
      {"transforms", {{"total", r.transforms}, {"per_step", r.transforms_per_step}}},
      {"snapshots", snaps},
      {"t_final", r.t_final},
      {"aborted", r.aborted},
  };
  if (r.aborted) meta["t_abort"] = r.t_abort;
  if (!r.norms.empty()) {
    meta["l2_initial"] = r.norms.front().second;
    meta["l2_final"] = r.norms.back().second;
  }
  write_json(fs::path(a.out) / "meta.json", meta);
  std::cout << meta.dump(2) << "\n";
  return r.aborted ? 3 : 0;
}

// ----------------------------------------------------------------- sweep ---

struct SweepArgs {
  std::string initial = "gaussian";
  std::vector<int> levels{5, 6, 7, 8};
  std::vector<double> lvals{1.65, 2.6, 4.0, 6.15};
  int ref_level = 9;
  double ref_l = 0;
  double tmax = 0.4, dt = 0;
  std::string rho = "defocusing";
  double beta = 1.0;
  int order = 10;
  bool skip_classical = false, skip_regularized = false, linear = false;
  int jobs = 1;
  std::string out = "sweep";
};

int run_sweep(const SweepArgs& a) {
  diagnostics::SweepConfig cfg;
  cfg.initial = a.initial;
  cfg.levels = a.levels;
  cfg.lvals = a.lvals;
  cfg.ref_level = a.ref_level;
  cfg.ref_l = a.ref_l;
  cfg.tmax = a.tmax;
  cfg.dt = a.dt;
  cfg.rho = parse_rho(a.rho);
  cfg.beta = a.beta;
  cfg.taylor_order = a.order;
  cfg.run_classical = !a.skip_classical;
  cfg.run_regularized = !a.skip_regularized;
  cfg.linear = a.linear;
  cfg.jobs = a.jobs;
  cfg.log = [](const std::string& s) { std::cerr << s << "\n"; };

  const auto tic = std::chrono::steady_clock::now();
  diagnostics::SweepResult res = diagnostics::convergence_sweep(cfg);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - tic).count();

  fs::create_directories(a.out);
  std::vector<std::vector<double>> rows;
  for (const auto& r : res.rows)
    rows.push_back({double(r.level), double(1 << r.level), r.l, r.err_classical,
                    r.err_regularized});
  io::write_csv((fs::path(a.out) / "sweep.csv").string(),
                {"level", "n", "l", "err_classical", "err_regularized"}, rows);

  json jr = json::array();
  for (const auto& r : res.rows)
    jr.push_back({{"level", r.level}, {"l", r.l}, {"err_classical", r.err_classical},
                  {"err_regularized", r.err_regularized}});
  json meta = {
      {"command", "sweep"},
      {"config",
       {{"initial", a.initial}, {"levels", a.levels}, {"lvals", a.lvals},
        {"ref_level", res.ref_level}, {"ref_l", res.ref_l}, {"tmax", a.tmax},
        {"dt", cfg.dt > 0 ? cfg.dt : cfg.tmax / 4000.0}, {"rho", cfg.rho},
        {"beta", a.beta}, {"order", a.order}, {"classical", cfg.run_classical},
        {"regularized", cfg.run_regularized}, {"linear", a.linear}, {"jobs", a.jobs}}},
      {"versions", versions_json()},
      {"timing", {{"wall_s", wall}}},
      {"rows", jr},
      {"class_regularized", res.class_regularized},
      {"class_classical", res.class_classical},
      {"floor_classical", res.floor_classical},
      {"aborted", res.aborted},
  };
  write_json(fs::path(a.out) / "meta.json", meta);
  std::cout << meta.dump(2) << "\n";
  return res.aborted ? 3 : 0;
}

// ------------------------------------------------------------ theta-eval ---

struct ThetaEvalArgs {
  std::string surface;
  double x = 0, y = 0, t = 0;
  int nx = 64, ny = 64;
  double Lx = 0, Ly = 0;  // physical periods; grid covers [-Lx/2, Lx/2)
  std::string out;
};

int run_theta_eval(const ThetaEvalArgs& a) {
  theta::SurfaceData sd = theta::load_surface(a.surface);
  if (!a.out.empty()) {
    if (!(a.Lx > 0) || !(a.Ly > 0))
      throw std::runtime_error("grid evaluation needs --Lx and --Ly > 0");
    Grid g(a.nx, a.ny, a.Lx / (2 * pi), a.Ly / (2 * pi));
    bool sing = false;
    cvec f = theta::eval_grid(sd, g, a.t, &sing);
    io::write_field(a.out, g, a.t, f);
    double amax = 0;
    for (const cplx& v : f) amax = std::max(amax, std::abs(v));
    json j = {{"out", a.out},   {"nx", g.nx},           {"ny", g.ny},
              {"lx", g.lx},     {"ly", g.ly},           {"t", a.t},
              {"singular", sing}, {"max_abs", amax}};
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  theta::EvalResult er = theta::eval_solution(sd, a.x, a.y, a.t);
  const cplx dt = theta::dpsi_dt(sd, a.x, a.y, a.t);
  json j = {{"x", a.x},
            {"y", a.y},
            {"t", a.t},
            {"value", {er.value.real(), er.value.imag()}},
            {"abs", std::abs(er.value)},
            {"dpsi_dt", {dt.real(), dt.imag()}},
            {"singular", er.singular}};
  std::cout << j.dump(2) << "\n";
  return 0;
}

// ----------------------------------------------------------- theta-check ---

struct ThetaCheckArgs {
  std::string surface;
  double t = 0.15;
  int nx = 32, ny = 32;
  double Lx = 0, Ly = 0;
  long n1 = 1, n2 = 1, m1 = 1, m2 = 1;
  double tol = 1e-10;
};

int run_theta_check(const ThetaCheckArgs& a) {
  theta::SurfaceData sd = theta::load_surface(a.surface);
  const int gn = sd.genus;

  // theta identities at random arguments
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> U(-1.5, 1.5);
  double err_shift = 0, err_quasi = 0;
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<cplx> z(gn);
    for (auto& v : z) v = cplx(U(rng), U(rng));
    const cplx th = theta::theta(gn, sd.B, z);
    for (int j = 0; j < gn; ++j) {
      std::vector<cplx> zs(z);
      zs[j] += cplx(0, 2 * pi);
      err_shift = std::max(err_shift, std::abs(theta::theta(gn, sd.B, zs) - th));
      std::vector<cplx> zb(z);
      for (int i = 0; i < gn; ++i) zb[i] += sd.B[std::size_t(i) * gn + j];
      const cplx fac = std::exp(-sd.B[std::size_t(j) * gn + j] / 2.0 - z[j]);
      err_quasi = std::max(err_quasi, std::abs(theta::theta(gn, sd.B, zb) - fac * th));
    }
  }

  json j = {{"surface", a.surface},
            {"theta_shift_2pii", err_shift},
            {"theta_quasiperiod", err_quasi}};

  bool ok = err_shift <= 1e-12 && err_quasi <= 1e-11;

  if (a.Lx > 0 && a.Ly > 0) {
    theta::PeriodicityReport rep =
        theta::check_periodicity(sd, a.Lx, a.Ly, a.n1, a.n2, a.m1, a.m2);
    j["periodicity"] = {{"res_n", rep.res_n},   {"res_m", rep.res_m},
                        {"l1", rep.l1},         {"l2", rep.l2},
                        {"res_l1", rep.res_l1}, {"res_l2", rep.res_l2},
                        {"degenerate_x", rep.degenerate_x},
                        {"degenerate_y", rep.degenerate_y},
                        {"lx_period", rep.lx},  {"ly_period", rep.ly},
                        {"pass", rep.pass}};

    // PDE residual of the evaluated field on the periodic box (beta = 1,
    // rho = +1): max |i psi_t + psi_xx - psi_yy + 2(Phi + |psi|^2) psi|.
    Grid g(a.nx, a.ny, a.Lx / (2 * pi), a.Ly / (2 * pi));
    bool sing = false;
    cvec f = theta::eval_grid(sd, g, a.t, &sing);
    const std::size_t n = g.size();
    cvec fhat(n), xx(n), yy(n), s(n), phi(n);
    spectral::forward(g, f.data(), fhat.data());
    for (int k = 0; k < g.nx; ++k)
      for (int m = 0; m < g.ny; ++m) {
        const std::size_t i = g.idx(k, m);
        const double x1 = g.xi1(k), x2 = g.xi2(m);
        xx[i] = -x1 * x1 * fhat[i];
        yy[i] = -x2 * x2 * fhat[i];
      }
    spectral::inverse(g, xx.data(), xx.data());
    spectral::inverse(g, yy.data(), yy.data());
    for (std::size_t i = 0; i < n; ++i) s[i] = std::norm(f[i]);
    spectral::forward(g, s.data(), phi.data());
    for (int k = 0; k < g.nx; ++k)
      for (int m = 0; m < g.ny; ++m) {
        const std::size_t i = g.idx(k, m);
        const double x1 = g.xi1(k), x2 = g.xi2(m);
        const double r2 = x1 * x1 + x2 * x2;
        // the -1 part of (-1 - cos 2psi) acts at the zero mode
        phi[i] = r2 == 0.0 ? -phi[i] : cplx(-2.0 * x1 * x1 / r2) * phi[i];
      }
    spectral::inverse(g, phi.data(), phi.data());
    double res = 0;
    for (int ix = 0; ix < g.nx; ++ix)
      for (int iy = 0; iy < g.ny; ++iy) {
        const std::size_t i = g.idx(ix, iy);
        const cplx pt = theta::dpsi_dt(sd, g.x(ix), g.y(iy), a.t);
        const cplx r = cplx(0, 1) * pt + xx[i] - yy[i] +
                       2.0 * (phi[i].real() + s[i].real()) * f[i];
        res = std::max(res, std::abs(r));
      }
    j["pde_residual"] = res;
    j["singular"] = sing;
    ok = ok && !sing && res <= a.tol && rep.pass;
  }

  j["pass"] = ok;
  std::cout << j.dump(2) << "\n";
  return ok ? 0 : 1;
}

// ------------------------------------------------------------- oracle-1d ---

struct Oracle1dArgs {
  int nx = 256;
  double lx = 10.0;
  std::string initial = "sech";
  double amplitude = 1.0;
  int mode = 1;
  double coeff = 2.0, tmax = 1.0;
  int nt = 2000;
  std::string out;
};

int run_oracle_1d(const Oracle1dArgs& a) {
  std::vector<cplx> q0(a.nx);
  for (int j = 0; j < a.nx; ++j) {
    const double x = a.lx * (-pi + 2 * pi * j / a.nx);
    if (a.initial == "sech")
      q0[j] = a.amplitude / std::cosh(x);
    else if (a.initial == "plane")
      q0[j] = a.amplitude * std::polar(1.0, a.mode * x / a.lx);
    else
      throw std::runtime_error("unknown 1d initial data: " + a.initial);
  }
  const double l2i = nls1d::l2_norm(q0, a.lx);
  nls1d::Result r = nls1d::evolve_1d(q0, a.coeff, a.tmax, a.nt, a.lx);
  const double l2f = nls1d::l2_norm(r.q, a.lx);

  if (!a.out.empty()) {
    std::vector<std::vector<double>> rows;
    for (int j = 0; j < a.nx; ++j) {
      const double x = a.lx * (-pi + 2 * pi * j / a.nx);
      rows.push_back({x, r.q[j].real(), r.q[j].imag()});
    }
    io::write_csv(a.out, {"x", "re", "im"}, rows);
  }
  json j = {{"nx", a.nx},       {"lx", a.lx},   {"coeff", a.coeff},
            {"tmax", a.tmax},   {"nt", a.nt},   {"l2_initial", l2i},
            {"l2_final", l2f},  {"l2_drift", std::abs(l2f - l2i) / l2i},
            {"aborted", r.aborted}};
  if (r.aborted) j["t_abort"] = r.t_abort;
  std::cout << j.dump(2) << "\n";
  return r.aborted ? 3 : 0;
}

// -------------------------------------------------------------- selftest ---

int run_selftest() {
  int fails = 0;
  auto check = [&](const char* name, double err, double tol) {
    const bool ok = err <= tol;
    std::printf("%s %-28s err=%.3e tol=%.1e\n", ok ? "PASS" : "FAIL", name, err, tol);
    if (!ok) ++fails;
  };

  {  // transform roundtrip + Parseval
    Grid g(64, 64, 1.3, 0.7);
    cvec f(g.size()), fhat(g.size()), back(g.size());
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> U(-1, 1);
    for (cplx& v : f) v = cplx(U(rng), U(rng));
    spectral::forward(g, f.data(), fhat.data());
    spectral::inverse(g, fhat.data(), back.data());
    double e = 0;
    for (std::size_t i = 0; i < f.size(); ++i) e = std::max(e, std::abs(f[i] - back[i]));
    check("fft_roundtrip", e, 1e-13);
    check("parseval",
          std::abs(spectral::l2_norm(g, f.data()) - spectral::l2_norm_hat(g, fhat.data())),
          1e-13);
  }
  {  // continuum Gaussian pair
    Grid g(128, 128, 4, 4);
    cvec f(g.size()), fhat(g.size());
    for (int ix = 0; ix < g.nx; ++ix)
      for (int iy = 0; iy < g.ny; ++iy) {
        const double x = g.x(ix), y = g.y(iy);
        f[g.idx(ix, iy)] = std::exp(-(x * x + y * y));
      }
    spectral::forward(g, f.data(), fhat.data());
    double e = 0;
    for (int k = 0; k < g.nx; ++k)
      for (int m = 0; m < g.ny; ++m) {
        const double x1 = g.xi1(k), x2 = g.xi2(m);
        e = std::max(e, std::abs(fhat[g.idx(k, m)] -
                                 0.5 * std::exp(-(x1 * x1 + x2 * x2) / 4)));
      }
    check("gaussian_pair", e, 1e-12);
  }
  {  // regularizer vs closed form: shat = e^{-|xi|^2} -> Re W_1(z)
    Grid g(128, 128, 5, 5);
    cvec s(g.size()), out(g.size());
    for (int ix = 0; ix < g.nx; ++ix)
      for (int iy = 0; iy < g.ny; ++iy) {
        const double x = g.x(ix), y = g.y(iy);
        s[g.idx(ix, iy)] = 0.5 * std::exp(-(x * x + y * y) / 4);
      }
    Regularizer reg(g, 8);
    MomentSet mo = compute_moments(g, s.data(), 8);
    cvec shat(g.size());
    spectral::forward(g, s.data(), shat.data());
    reg.apply(mo, shat.data(), out.data());
    double e = 0;
    for (int ix = 0; ix < g.nx; ++ix)
      for (int iy = 0; iy < g.ny; ++iy) {
        const cplx w1 = wfields::w(1, cplx(g.x(ix), g.y(iy)));
        e = std::max(e, std::abs(out[g.idx(ix, iy)] - w1.real()));
      }
    check("regularizer_closed_form", e, 1e-11);
  }
  {  // theta vs the classical constant theta3(0, e^{-pi}) for B = -2pi
    const cplx th = theta::theta(1, {cplx(-2 * pi, 0)}, {cplx(0, 0)});
    long double ref = 0;
    for (int n = -24; n <= 24; ++n) ref += std::exp(-pi * (long double)(n) * n);
    check("theta_g1_constant", std::abs(th - cplx(double(ref), 0)), 1e-13);
  }
  {  // linear evolution is exact per mode
    Grid g(32, 32, 1, 1);
    cvec psi0(g.size());
    for (int ix = 0; ix < g.nx; ++ix)
      for (int iy = 0; iy < g.ny; ++iy)
        psi0[g.idx(ix, iy)] =
            cplx(std::cos(g.x(ix)), 0.3 * std::sin(g.y(iy) + 0.5));
    SolverConfig sc;
    sc.linear = true;
    DsiiSolver solver(g, sc);
    EvolveOptions opt;
    opt.tmax = 0.7;
    opt.nt = 10;
    opt.norm_every = 0;
    RunResult r = solver.evolve(psi0, opt);
    cvec fhat(g.size()), exact(g.size());
    spectral::forward(g, psi0.data(), fhat.data());
    const auto& L = solver.linear_symbol();
    for (std::size_t i = 0; i < fhat.size(); ++i)
      fhat[i] *= std::exp(L[i] * opt.tmax);
    spectral::inverse(g, fhat.data(), exact.data());
    double e = 0;
    for (std::size_t i = 0; i < exact.size(); ++i)
      e = std::max(e, std::abs(exact[i] - r.psi[i]));
    check("linear_exact", e, 1e-12);
  }
  {  // L^2 conservation, nonlinear
    Grid g(32, 32, 3, 3);
    cvec psi0(g.size());
    for (int ix = 0; ix < g.nx; ++ix)
      for (int iy = 0; iy < g.ny; ++iy)
        psi0[g.idx(ix, iy)] =
            0.25 * cplx(std::cos(g.x(ix) / g.lx), 0.5 * std::sin(g.y(iy) / g.ly));
    SolverConfig sc;
    DsiiSolver solver(g, sc);
    EvolveOptions opt;
    opt.tmax = 2.0;
    opt.nt = 200;
    RunResult r = solver.evolve(psi0, opt);
    double drift = 0;
    for (const auto& [t, v] : r.norms)
      drift = std::max(drift, std::abs(v - r.norms.front().second));
    check("l2_conservation", drift / r.norms.front().second, 1e-11);
  }
  {  // 1d plane wave phase rotation
    const int n = 64;
    const double lx = 1.0, A = 0.7, c = 2.0, tmax = 1.0;
    std::vector<cplx> q0(n);
    for (int j = 0; j < n; ++j)
      q0[j] = A * std::polar(1.0, 2.0 * (-pi + 2 * pi * j / n));
    nls1d::Result r = nls1d::evolve_1d(q0, c, tmax, 400, lx);
    const double k = 2.0 / lx;
    double e = 0;
    for (int j = 0; j < n; ++j) {
      const cplx exact = q0[j] * std::polar(1.0, (c * A * A - k * k) * tmax);
      e = std::max(e, std::abs(r.q[j] - exact));
    }
    check("nls1d_plane_wave", e, 1e-9);
  }
  std::printf("%s (%d failure%s)\n", fails ? "SELFTEST FAIL" : "SELFTEST OK", fails,
              fails == 1 ? "" : "s");
  return fails ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudospectral solver for the Davey-Stewartson II equation"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  auto take_last = [](CLI::Option* o) {
    o->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    return o;
  };

  int rc = 0;

  // evolve
  EvolveArgs ev;
  CLI::App* cev = app.add_subcommand("evolve", "Run the DS II solver");
  std::string cfg_path;
  for (CLI::App* c : {cev}) c->add_option("--config", cfg_path, "JSON config file");
  auto* o_nx = take_last(cev->add_option("--nx", ev.nx));
  auto* o_ny = take_last(cev->add_option("--ny", ev.ny));
  auto* o_lx = take_last(cev->add_option("--lx", ev.lx));
  auto* o_ly = take_last(cev->add_option("--ly", ev.ly));
  take_last(cev->add_option("--initial", ev.initial)
                ->check(CLI::IsMember({"gaussian", "asymmetric"})));
  take_last(cev->add_option("--initial-file", ev.initial_file));
  take_last(cev->add_option("--amplitude", ev.amplitude));
  take_last(cev->add_option("--rho", ev.rho));
  take_last(cev->add_option("--beta", ev.beta)->check(CLI::PositiveNumber));
  take_last(cev->add_option("--method", ev.method)
                ->check(CLI::IsMember({"classical", "regularized"})));
  take_last(cev->add_option("--order", ev.order)->check(CLI::Range(1, 12)));
  take_last(cev->add_option("--scheme", ev.scheme)
                ->check(CLI::IsMember({"ifrk4", "composite"})));
  take_last(cev->add_option("--theta-switch", ev.theta_switch));
  take_last(cev->add_flag("--linear", ev.linear));
  take_last(cev->add_flag("--dealias", ev.dealias));
  take_last(cev->add_option("--tmax", ev.tmax));
  take_last(cev->add_option("--nt", ev.nt)->check(CLI::PositiveNumber));
  take_last(cev->add_option("--norm-every", ev.norm_every));
  take_last(cev->add_option("--snapshots", ev.snapshots)->delimiter(','));
  take_last(cev->add_option("--out", ev.out));
  cev->callback([&] {
    ev.grid_given = o_nx->count() || o_ny->count() || o_lx->count() || o_ly->count();
    rc = run_evolve(ev);
  });

  // sweep
  SweepArgs sw;
  CLI::App* csw = app.add_subcommand("sweep", "Grid convergence study");
  csw->add_option("--config", cfg_path, "JSON config file");
  take_last(csw->add_option("--initial", sw.initial)
                ->check(CLI::IsMember({"gaussian", "asymmetric"})));
  take_last(csw->add_option("--levels", sw.levels)->delimiter(','));
  take_last(csw->add_option("--lvals", sw.lvals)->delimiter(','));
  take_last(csw->add_option("--ref-level", sw.ref_level)->check(CLI::Range(5, 12)));
  take_last(csw->add_option("--ref-l", sw.ref_l));
  take_last(csw->add_option("--tmax", sw.tmax));
  take_last(csw->add_option("--dt", sw.dt));
  take_last(csw->add_option("--rho", sw.rho));
  take_last(csw->add_option("--beta", sw.beta)->check(CLI::PositiveNumber));
  take_last(csw->add_option("--order", sw.order)->check(CLI::Range(1, 12)));
  take_last(csw->add_flag("--skip-classical", sw.skip_classical));
  take_last(csw->add_flag("--skip-regularized", sw.skip_regularized));
  take_last(csw->add_flag("--linear", sw.linear));
  take_last(csw->add_option("--jobs", sw.jobs)->check(CLI::Range(1, 64)));
  take_last(csw->add_option("--out", sw.out));
  csw->callback([&] { rc = run_sweep(sw); });

  // theta-eval
  ThetaEvalArgs te;
  CLI::App* cte = app.add_subcommand("theta-eval", "Evaluate an exact theta solution");
  cte->add_option("--config", cfg_path, "JSON config file");
  take_last(cte->add_option("--surface", te.surface)->required());
  take_last(cte->add_option("--x", te.x));
  take_last(cte->add_option("--y", te.y));
  take_last(cte->add_option("--t", te.t));
  take_last(cte->add_option("--nx", te.nx));
  take_last(cte->add_option("--ny", te.ny));
  take_last(cte->add_option("--Lx", te.Lx));
  take_last(cte->add_option("--Ly", te.Ly));
  take_last(cte->add_option("--out", te.out, "write a field file on an nx x ny grid"));
  cte->callback([&] { rc = run_theta_eval(te); });

  // theta-check
  ThetaCheckArgs tc;
  CLI::App* ctc = app.add_subcommand(
      "theta-check", "Verify theta identities, periodicity and the PDE residual");
  ctc->add_option("--config", cfg_path, "JSON config file");
  take_last(ctc->add_option("--surface", tc.surface)->required());
  take_last(ctc->add_option("--t", tc.t));
  take_last(ctc->add_option("--nx", tc.nx));
  take_last(ctc->add_option("--ny", tc.ny));
  take_last(ctc->add_option("--Lx", tc.Lx));
  take_last(ctc->add_option("--Ly", tc.Ly));
  take_last(ctc->add_option("--n1", tc.n1));
  take_last(ctc->add_option("--n2", tc.n2));
  take_last(ctc->add_option("--m1", tc.m1));
  take_last(ctc->add_option("--m2", tc.m2));
  take_last(ctc->add_option("--tol", tc.tol));
  ctc->callback([&] { rc = run_theta_check(tc); });

  // oracle-1d
  Oracle1dArgs o1;
  CLI::App* co1 = app.add_subcommand("oracle-1d", "Independent 1D cubic NLS run");
  co1->add_option("--config", cfg_path, "JSON config file");
  take_last(co1->add_option("--nx", o1.nx));
  take_last(co1->add_option("--lx", o1.lx)->check(CLI::PositiveNumber));
  take_last(co1->add_option("--initial", o1.initial)
                ->check(CLI::IsMember({"sech", "plane"})));
  take_last(co1->add_option("--amplitude", o1.amplitude));
  take_last(co1->add_option("--mode", o1.mode));
  take_last(co1->add_option("--coeff", o1.coeff));
  take_last(co1->add_option("--tmax", o1.tmax));
  take_last(co1->add_option("--nt", o1.nt)->check(CLI::PositiveNumber));
  take_last(co1->add_option("--out", o1.out, "CSV of the final profile"));
  co1->callback([&] { rc = run_oracle_1d(o1); });

  // selftest
  CLI::App* cst = app.add_subcommand("selftest", "Quick internal consistency checks");
  cst->callback([&] { rc = run_selftest(); });

  // inject config-file tokens right after the subcommand name so that
  // explicit command-line options take precedence
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    for (std::size_t i = 0; i < args.size(); ++i) {
      std::string path;
      if (args[i] == "--config" && i + 1 < args.size())
        path = args[i + 1];
      else if (args[i].rfind("--config=", 0) == 0)
        path = args[i].substr(9);
      if (!path.empty()) {
        auto toks = config_tokens(path);
        args.insert(args.begin() + 1, toks.begin(), toks.end());
        break;
      }
    }
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
