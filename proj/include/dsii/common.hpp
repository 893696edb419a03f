#pragma once
#include <complex>
#include <cstddef>
#include <new>
#include <vector>

namespace dsii {

using cplx = std::complex<double>;

// 64-byte-aligned allocator so FFTW SIMD plans apply to every field buffer.
template <class T>
struct AlignedAlloc {
  using value_type = T;
  static constexpr std::size_t alignment = 64;
  AlignedAlloc() = default;
  template <class U>
  AlignedAlloc(const AlignedAlloc<U>&) {}
  T* allocate(std::size_t n) {
    return static_cast<T*>(::operator new(n * sizeof(T), std::align_val_t(alignment)));
  }
  void deallocate(T* p, std::size_t) noexcept {
    ::operator delete(p, std::align_val_t(alignment));
  }
  template <class U>
  bool operator==(const AlignedAlloc<U>&) const { return true; }
};

using cvec = std::vector<cplx, AlignedAlloc<cplx>>;

}  // namespace dsii
