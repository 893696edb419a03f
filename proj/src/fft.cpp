#include "dsii/fft.hpp"

#include <fftw3.h>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <mutex>
#include <tuple>

namespace dsii::fft {
namespace {

struct Engine {
  std::mutex mu;
  std::map<std::tuple<int, int, int, bool>, fftw_plan> plans2;  // nx, ny, sign, inplace
  std::map<std::tuple<int, int, bool>, fftw_plan> plans1;       // n, sign, inplace
  std::atomic<long long> count2{0};
  std::string wpath;
  int nthreads = 1;

  Engine() {
    if (const char* t = std::getenv("DSII_THREADS")) nthreads = std::max(1, std::atoi(t));
#ifdef DSII_HAVE_FFTW_THREADS
    if (nthreads > 1) {
      fftw_init_threads();
      fftw_plan_with_nthreads(nthreads);
    }
#endif
    wpath = resolve_wisdom_path();
    if (!wpath.empty()) fftw_import_wisdom_from_filename(wpath.c_str());
  }

  static std::string resolve_wisdom_path() {
    if (const char* w = std::getenv("DSII_WISDOM")) {
      if (w[0] == '\0' || std::string(w) == "off") return {};
      return w;
    }
    const char* home = std::getenv("HOME");
    if (!home) return {};
    std::error_code ec;
    auto dir = std::filesystem::path(home) / ".cache" / "dsii";
    std::filesystem::create_directories(dir, ec);
    if (ec) return {};
    return (dir / "fftw.wisdom").string();
  }

  void save_wisdom() {
    if (!wpath.empty()) fftw_export_wisdom_to_filename(wpath.c_str());
  }

  fftw_plan plan2(int nx, int ny, int sign, bool inplace) {
    std::lock_guard lk(mu);
    auto key = std::make_tuple(nx, ny, sign, inplace);
    auto it = plans2.find(key);
    if (it != plans2.end()) return it->second;
    // plan on 64-byte-aligned scratch matching every field buffer's alignment;
    // grids past the solver's working sizes are one-shot, not worth measuring
    cvec a(std::size_t(nx) * ny), b(inplace ? 0 : std::size_t(nx) * ny);
    auto* pa = reinterpret_cast<fftw_complex*>(a.data());
    auto* pb = inplace ? pa : reinterpret_cast<fftw_complex*>(b.data());
    const unsigned flags = std::size_t(nx) * ny <= 512u * 512u ? FFTW_MEASURE : FFTW_ESTIMATE;
    fftw_plan p = fftw_plan_dft_2d(nx, ny, pa, pb, sign, flags);
    plans2.emplace(key, p);
    save_wisdom();
    return p;
  }

  fftw_plan plan1(int n, int sign, bool inplace) {
    std::lock_guard lk(mu);
    auto key = std::make_tuple(n, sign, inplace);
    auto it = plans1.find(key);
    if (it != plans1.end()) return it->second;
    cvec a(n), b(inplace ? 0 : n);
    auto* pa = reinterpret_cast<fftw_complex*>(a.data());
    auto* pb = inplace ? pa : reinterpret_cast<fftw_complex*>(b.data());
    fftw_plan p = fftw_plan_dft_1d(n, pa, pb, sign, FFTW_MEASURE);
    plans1.emplace(key, p);
    save_wisdom();
    return p;
  }
};

Engine& eng() {
  static Engine e;
  return e;
}

void run2(int nx, int ny, const cplx* in, cplx* out, int sign) {
  fftw_plan p = eng().plan2(nx, ny, sign, in == out);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
  eng().count2.fetch_add(1, std::memory_order_relaxed);
}

void run1(int n, const cplx* in, cplx* out, int sign) {
  fftw_plan p = eng().plan1(n, sign, in == out);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

}  // namespace

void fft2(int nx, int ny, const cplx* in, cplx* out) { run2(nx, ny, in, out, FFTW_FORWARD); }
void ifft2(int nx, int ny, const cplx* in, cplx* out) { run2(nx, ny, in, out, FFTW_BACKWARD); }
void fft1(int n, const cplx* in, cplx* out) { run1(n, in, out, FFTW_FORWARD); }
void ifft1(int n, const cplx* in, cplx* out) { run1(n, in, out, FFTW_BACKWARD); }

long long transform_count() { return eng().count2.load(std::memory_order_relaxed); }
void reset_transform_count() { eng().count2.store(0, std::memory_order_relaxed); }

std::string wisdom_path() { return eng().wpath; }
int threads() { return eng().nthreads; }

}  // namespace dsii::fft
