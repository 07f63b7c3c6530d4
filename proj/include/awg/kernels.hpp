#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference version and
// vectorised variants; the variant used by the library is picked once at
// startup from the CPU features (override with AWG_SIMD=scalar|avx2|neon).

#include <complex>
#include <cstddef>
#include <span>

namespace awg::kernels {

enum class Isa { scalar, avx2, neon };

const char* isa_name(Isa isa);

struct KernelTable {
  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // sum_i (ar[i] + j ai[i]) * (br[i] + j bi[i]), no conjugation
  void (*cdot)(const double* ar, const double* ai, const double* br, const double* bi,
               std::size_t n, double* out_re, double* out_im);
  // y[i] += a * x[i]
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // (yr + j yi)[i] += (ar + j ai) * x[i], x real
  void (*caxpy)(double ar, double ai, const double* x, double* yr, double* yi, std::size_t n);
};

bool isa_available(Isa isa);

// Throws std::invalid_argument when the ISA is not compiled in or not
// supported by this CPU.
const KernelTable& table(Isa isa);

Isa active_isa();
const KernelTable& active();

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
void cdot(const double* ar, const double* ai, const double* br, const double* bi,
          std::size_t n, double* out_re, double* out_im);
void axpy(double a, const double* x, double* y, std::size_t n);
void caxpy(double ar, double ai, const double* x, double* yr, double* yi, std::size_t n);
}  // namespace scalar

// Span front ends over the active table.

double dot(std::span<const double> a, std::span<const double> b);

std::complex<double> cdot(std::span<const double> ar, std::span<const double> ai,
                          std::span<const double> br, std::span<const double> bi);

void axpy(double a, std::span<const double> x, std::span<double> y);

void caxpy(std::complex<double> a, std::span<const double> x, std::span<double> yr,
           std::span<double> yi);

}  // namespace awg::kernels
