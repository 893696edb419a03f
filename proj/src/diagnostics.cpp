#include "dsii/diagnostics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "dsii/fft.hpp"
#include "dsii/initial_data.hpp"

namespace dsii::diagnostics {

double l2_norm(const Grid& g, const cvec& f) { return spectral::l2_norm(g, f.data()); }

double linf_error(const cvec& f, const cvec& h) {
  if (f.size() != h.size()) throw std::invalid_argument("size mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f[i] - h[i]));
  return m;
}

std::vector<double> fourier_decay_report(const Grid& g, const cvec& f_phys) {
  cvec fhat(g.size());
  spectral::forward(g, f_phys.data(), fhat.data());
  const int kmax = std::max(g.nx, g.ny) / 2;
  int shells = 1;
  while ((1 << (shells - 1)) <= kmax) ++shells;
  std::vector<double> rep(shells, 0.0);
  for (int k = 0; k < g.nx; ++k) {
    const int ak = std::abs(g.kx(k));
    for (int m = 0; m < g.ny; ++m) {
      const int r = std::max(ak, std::abs(g.ky(m)));
      int s = 0;
      while ((1 << s) <= r) ++s;  // shell s covers 2^{s-1} <= r < 2^s
      rep[s] = std::max(rep[s], std::abs(fhat[g.idx(k, m)]));
    }
  }
  return rep;
}

cvec trig_resample(const Grid& src, const cvec& f_phys,
                   const std::vector<double>& xs, const std::vector<double>& ys) {
  if (f_phys.size() != src.size()) throw std::invalid_argument("field size mismatch");
  const int nx = src.nx, ny = src.ny;
  cvec G(src.size());
  fft::fft2(nx, ny, f_phys.data(), G.data());
  const double scale = 1.0 / (double(nx) * ny);
  for (cplx& v : G) v *= scale;

  // stage 1: contract the x index against each target x
  const std::size_t nxs = xs.size(), nys = ys.size();
  cvec a(nxs * ny);
  std::vector<cplx> ph(std::max(nx, ny));
  for (std::size_t i = 0; i < nxs; ++i) {
    const double phase = xs[i] / src.lx + pi;  // node j sits at phase 2*pi*j/nx
    for (int k = 0; k < nx; ++k) ph[k] = std::polar(1.0, src.kx(k) * phase);
    for (int m = 0; m < ny; ++m) {
      cplx acc(0);
      for (int k = 0; k < nx; ++k) acc += G[src.idx(k, m)] * ph[k];
      a[i * ny + m] = acc;
    }
  }
  // stage 2: contract the y index against each target y
  cvec out(nxs * nys);
  for (std::size_t j = 0; j < nys; ++j) {
    const double phase = ys[j] / src.ly + pi;
    for (int m = 0; m < ny; ++m) ph[m] = std::polar(1.0, src.ky(m) * phase);
    for (std::size_t i = 0; i < nxs; ++i) {
      cplx acc(0);
      for (int m = 0; m < ny; ++m) acc += a[i * ny + m] * ph[m];
      out[i * nys + j] = acc;
    }
  }
  return out;
}

namespace {

cvec named_initial(const std::string& name, const Grid& g) {
  if (name == "gaussian") return initial_data::gaussian(g);
  if (name == "asymmetric") return initial_data::asymmetric_gaussian(g);
  throw std::invalid_argument("unknown initial data: " + name);
}

struct RunOut {
  cvec psi;
  bool aborted = false;
};

RunOut run_one(const SweepConfig& cfg, const Grid& g, Nonlocal method, int nt) {
  SolverConfig sc;
  sc.rho = cfg.rho;
  sc.beta = cfg.beta;
  sc.method = method;
  sc.taylor_order = cfg.taylor_order;
  sc.linear = cfg.linear;
  DsiiSolver solver(g, sc);
  EvolveOptions opt;
  opt.tmax = cfg.tmax;
  opt.nt = nt;
  opt.norm_every = 0;
  RunResult r = solver.evolve(named_initial(cfg.initial, g), opt);
  return {std::move(r.psi), r.aborted};
}

std::string classify(const std::vector<double>& errs) {
  std::vector<double> drops;
  for (std::size_t i = 0; i + 1 < errs.size(); ++i)
    drops.push_back(std::log10(std::max(errs[i], 1e-300)) -
                    std::log10(std::max(errs[i + 1], 1e-300)));
  if (drops.empty()) return "unknown";
  double mean = 0.0, mn = drops[0];
  for (double d : drops) {
    mean += d;
    mn = std::min(mn, d);
  }
  mean /= drops.size();
  if (mean >= 2.0 && mn >= 1.0) return "spectral";
  if (drops.back() < 1.0) return "saturating";
  return "mixed";
}

}  // namespace

SweepResult convergence_sweep(const SweepConfig& cfg) {
  if (cfg.levels.empty() || cfg.levels.size() != cfg.lvals.size())
    throw std::invalid_argument("levels/lvals must be non-empty and the same length");
  const double dt = cfg.dt > 0 ? cfg.dt : cfg.tmax / 4000.0;
  const int nt = std::max(1, int(std::lround(cfg.tmax / dt)));
  auto log = [&](const std::string& s) {
    if (cfg.log) cfg.log(s);
  };

  SweepResult res;
  res.ref_level = cfg.ref_level;
  res.ref_l = cfg.ref_l > 0 ? cfg.ref_l : std::sqrt(2.0) * cfg.lvals.back();

  const Grid gref(1 << cfg.ref_level, 1 << cfg.ref_level, res.ref_l, res.ref_l);
  log("reference: N=" + std::to_string(gref.nx) + " regularized, nt=" + std::to_string(nt));
  RunOut ref = run_one(cfg, gref, Nonlocal::Regularized, nt);
  if (ref.aborted) {
    res.aborted = true;
    log("reference run aborted");
    return res;
  }

  res.rows.resize(cfg.levels.size());
  for (std::size_t i = 0; i < cfg.levels.size(); ++i) {
    res.rows[i].level = cfg.levels[i];
    res.rows[i].l = cfg.lvals[i];
  }

  struct Task {
    std::size_t row;
    Nonlocal method;
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < cfg.levels.size(); ++i) {
    if (cfg.run_classical) tasks.push_back({i, Nonlocal::Classical});
    if (cfg.run_regularized) tasks.push_back({i, Nonlocal::Regularized});
  }

  // reference values on each coarse grid's nodes, shared by both methods
  std::vector<cvec> ref_on(cfg.levels.size());
  for (std::size_t i = 0; i < cfg.levels.size(); ++i) {
    const Grid g(1 << cfg.levels[i], 1 << cfg.levels[i], cfg.lvals[i], cfg.lvals[i]);
    std::vector<double> xs(g.nx), ys(g.ny);
    for (int k = 0; k < g.nx; ++k) xs[k] = g.x(k);
    for (int m = 0; m < g.ny; ++m) ys[m] = g.y(m);
    ref_on[i] = trig_resample(gref, ref.psi, xs, ys);
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> any_abort{false};
  auto worker = [&]() {
    for (;;) {
      const std::size_t ti = next.fetch_add(1);
      if (ti >= tasks.size()) return;
      const Task& tk = tasks[ti];
      SweepRow& row = res.rows[tk.row];
      const Grid g(1 << row.level, 1 << row.level, row.l, row.l);
      RunOut out = run_one(cfg, g, tk.method, nt);
      double err = -1;
      if (out.aborted)
        any_abort = true;
      else
        err = linf_error(out.psi, ref_on[tk.row]);
      const bool cls = tk.method == Nonlocal::Classical;
      (cls ? row.err_classical : row.err_regularized) = err;
      char buf[128];
      std::snprintf(buf, sizeof(buf), "N=%d %s err=%.3e", g.nx,
                    cls ? "classical" : "regularized", err);
      log(buf);
    }
  };

  const int jobs = std::max(1, cfg.jobs);
  if (jobs == 1 || tasks.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    const int nw = std::min<int>(jobs, int(tasks.size()));
    for (int w = 0; w < nw; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  res.aborted = any_abort.load();

  std::vector<double> ec, er;
  for (const SweepRow& r : res.rows) {
    if (r.err_classical >= 0) ec.push_back(r.err_classical);
    if (r.err_regularized >= 0) er.push_back(r.err_regularized);
  }
  if (!er.empty()) res.class_regularized = classify(er);
  if (!ec.empty()) {
    res.class_classical = classify(ec);
    res.floor_classical = *std::min_element(ec.begin(), ec.end());
  }
  return res;
}

}  // namespace dsii::diagnostics
