// Built with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include "kernels_impl.hpp"

namespace awg::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void cdot(const double* ar, const double* ai, const double* br, const double* bi,
          std::size_t n, double* out_re, double* out_im) {
  __m256d re = _mm256_setzero_pd();
  __m256d im = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xr = _mm256_loadu_pd(ar + i);
    const __m256d xi = _mm256_loadu_pd(ai + i);
    const __m256d yr = _mm256_loadu_pd(br + i);
    const __m256d yi = _mm256_loadu_pd(bi + i);
    re = _mm256_fmadd_pd(xr, yr, re);
    re = _mm256_fnmadd_pd(xi, yi, re);
    im = _mm256_fmadd_pd(xr, yi, im);
    im = _mm256_fmadd_pd(xi, yr, im);
  }
  double sr = hsum(re);
  double si = hsum(im);
  for (; i < n; ++i) {
    sr += ar[i] * br[i] - ai[i] * bi[i];
    si += ar[i] * bi[i] + ai[i] * br[i];
  }
  *out_re = sr;
  *out_im = si;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void caxpy(double ar, double ai, const double* x, double* yr, double* yi, std::size_t n) {
  const __m256d vr = _mm256_set1_pd(ar);
  const __m256d vi = _mm256_set1_pd(ai);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xv = _mm256_loadu_pd(x + i);
    _mm256_storeu_pd(yr + i, _mm256_fmadd_pd(vr, xv, _mm256_loadu_pd(yr + i)));
    _mm256_storeu_pd(yi + i, _mm256_fmadd_pd(vi, xv, _mm256_loadu_pd(yi + i)));
  }
  for (; i < n; ++i) {
    yr[i] += ar * x[i];
    yi[i] += ai * x[i];
  }
}

}  // namespace awg::kernels::avx2
