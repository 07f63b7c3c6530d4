#pragma once

#include <cstddef>

// Per-ISA entry points, only declared for the variants that are compiled in.

namespace awg::kernels {

#if defined(AWG_HAVE_AVX2)
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
void cdot(const double* ar, const double* ai, const double* br, const double* bi,
          std::size_t n, double* out_re, double* out_im);
void axpy(double a, const double* x, double* y, std::size_t n);
void caxpy(double ar, double ai, const double* x, double* yr, double* yi, std::size_t n);
}  // namespace avx2
#endif

#if defined(AWG_HAVE_NEON)
namespace neon {
double dot(const double* a, const double* b, std::size_t n);
void cdot(const double* ar, const double* ai, const double* br, const double* bi,
          std::size_t n, double* out_re, double* out_im);
void axpy(double a, const double* x, double* y, std::size_t n);
void caxpy(double ar, double ai, const double* x, double* yr, double* yi, std::size_t n);
}  // namespace neon
#endif

}  // namespace awg::kernels
