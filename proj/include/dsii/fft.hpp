#pragma once
#include <string>

#include "dsii/common.hpp"

// Thin wrapper over FFTW: cached FFTW_MEASURE plans (deterministic across runs
// via persisted wisdom), execution counters, optional threading via DSII_THREADS.
// Transforms are unnormalized complex-to-complex; in == out is allowed.
namespace dsii::fft {

void fft2(int nx, int ny, const cplx* in, cplx* out);   // forward (e^{-i...})
void ifft2(int nx, int ny, const cplx* in, cplx* out);  // backward, no 1/(nx*ny)
void fft1(int n, const cplx* in, cplx* out);
void ifft1(int n, const cplx* in, cplx* out);

long long transform_count();  // 2D executions since process start / last reset
void reset_transform_count();

std::string wisdom_path();  // where wisdom is persisted ("" if disabled)
int threads();              // effective FFTW thread count

}  // namespace dsii::fft
