// AArch64 Advanced SIMD variants (two doubles per register).

#include <arm_neon.h>

#include "kernels_impl.hpp"

namespace awg::kernels::neon {

double dot(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void cdot(const double* ar, const double* ai, const double* br, const double* bi,
          std::size_t n, double* out_re, double* out_im) {
  float64x2_t re = vdupq_n_f64(0.0);
  float64x2_t im = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t xr = vld1q_f64(ar + i);
    const float64x2_t xi = vld1q_f64(ai + i);
    const float64x2_t yr = vld1q_f64(br + i);
    const float64x2_t yi = vld1q_f64(bi + i);
    re = vfmaq_f64(re, xr, yr);
    re = vfmsq_f64(re, xi, yi);
    im = vfmaq_f64(im, xr, yi);
    im = vfmaq_f64(im, xi, yr);
  }
  double sr = vaddvq_f64(re);
  double si = vaddvq_f64(im);
  for (; i < n; ++i) {
    sr += ar[i] * br[i] - ai[i] * bi[i];
    si += ar[i] * bi[i] + ai[i] * br[i];
  }
  *out_re = sr;
  *out_im = si;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
  for (; i < n; ++i) y[i] += a * x[i];
}

void caxpy(double ar, double ai, const double* x, double* yr, double* yi, std::size_t n) {
  const float64x2_t vr = vdupq_n_f64(ar);
  const float64x2_t vi = vdupq_n_f64(ai);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t xv = vld1q_f64(x + i);
    vst1q_f64(yr + i, vfmaq_f64(vld1q_f64(yr + i), vr, xv));
    vst1q_f64(yi + i, vfmaq_f64(vld1q_f64(yi + i), vi, xv));
  }
  for (; i < n; ++i) {
    yr[i] += ar * x[i];
    yi[i] += ai * x[i];
  }
}

}  // namespace awg::kernels::neon
