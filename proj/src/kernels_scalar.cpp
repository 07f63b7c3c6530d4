#include "awg/kernels.hpp"

namespace awg::kernels::scalar {

double dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void cdot(const double* ar, const double* ai, const double* br, const double* bi,
          std::size_t n, double* out_re, double* out_im) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += ar[i] * br[i] - ai[i] * bi[i];
    im += ar[i] * bi[i] + ai[i] * br[i];
  }
  *out_re = re;
  *out_im = im;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void caxpy(double ar, double ai, const double* x, double* yr, double* yi, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    yr[i] += ar * x[i];
    yi[i] += ai * x[i];
  }
}

}  // namespace awg::kernels::scalar
