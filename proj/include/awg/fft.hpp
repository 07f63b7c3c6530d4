#pragma once

// Thin FFTW wrapper used for fast convolution, filter design and spectra.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace awg::fft {

// Real-to-complex transform of x zero-padded (or truncated) to n points.
// Returns the n/2 + 1 non-negative frequency bins, unnormalised.
std::vector<std::complex<double>> rfft(std::span<const double> x, std::size_t n);

// Inverse of rfft, scaled by 1/n. `bins` must hold n/2 + 1 values.
std::vector<double> irfft(std::span<const std::complex<double>> bins, std::size_t n);

std::size_t next_pow2(std::size_t n);

}  // namespace awg::fft
