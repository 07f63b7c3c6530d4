#include "awg/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

#include "kernels_impl.hpp"

namespace awg::kernels {

namespace {

constexpr KernelTable kScalar{&scalar::dot, &scalar::cdot, &scalar::axpy, &scalar::caxpy};
#if defined(AWG_HAVE_AVX2)
constexpr KernelTable kAvx2{&avx2::dot, &avx2::cdot, &avx2::axpy, &avx2::caxpy};
#endif
#if defined(AWG_HAVE_NEON)
constexpr KernelTable kNeon{&neon::dot, &neon::cdot, &neon::axpy, &neon::caxpy};
#endif

Isa detect() {
  if (const char* forced = std::getenv("AWG_SIMD")) {
    const std::string_view name(forced);
    if (name == "scalar") return Isa::scalar;
    if (name == "avx2" && isa_available(Isa::avx2)) return Isa::avx2;
    if (name == "neon" && isa_available(Isa::neon)) return Isa::neon;
  }
  if (isa_available(Isa::avx2)) return Isa::avx2;
  if (isa_available(Isa::neon)) return Isa::neon;
  return Isa::scalar;
}

}  // namespace

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(AWG_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::neon:
#if defined(AWG_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& table(Isa isa) {
  if (!isa_available(isa)) {
    throw std::invalid_argument(std::string("kernel ISA not available: ") + isa_name(isa));
  }
  switch (isa) {
#if defined(AWG_HAVE_AVX2)
    case Isa::avx2: return kAvx2;
#endif
#if defined(AWG_HAVE_NEON)
    case Isa::neon: return kNeon;
#endif
    default: return kScalar;
  }
}

Isa active_isa() {
  static const Isa isa = detect();
  return isa;
}

const KernelTable& active() {
  static const KernelTable& t = table(active_isa());
  return t;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  return active().dot(a.data(), b.data(), a.size());
}

std::complex<double> cdot(std::span<const double> ar, std::span<const double> ai,
                          std::span<const double> br, std::span<const double> bi) {
  const std::size_t n = ar.size();
  if (ai.size() != n || br.size() != n || bi.size() != n) {
    throw std::invalid_argument("cdot: length mismatch");
  }
  double re = 0.0;
  double im = 0.0;
  active().cdot(ar.data(), ai.data(), br.data(), bi.data(), n, &re, &im);
  return {re, im};
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("axpy: length mismatch");
  active().axpy(a, x.data(), y.data(), x.size());
}

void caxpy(std::complex<double> a, std::span<const double> x, std::span<double> yr,
           std::span<double> yi) {
  if (x.size() != yr.size() || x.size() != yi.size()) {
    throw std::invalid_argument("caxpy: length mismatch");
  }
  active().caxpy(a.real(), a.imag(), x.data(), yr.data(), yi.data(), x.size());
}

}  // namespace awg::kernels
