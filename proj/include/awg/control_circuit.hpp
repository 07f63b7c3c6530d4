#pragma once

// Bias/control network between a DAC and the diode terminals, modelled as a
// discrete LTI filter, plus the regularised inverse used for control-signal
// design.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "awg/signal.hpp"

namespace awg {

// FIR response. taps[0] acts at time -lead samples, so lead > 0 describes a
// two-sided (non-causal) filter; ordinary circuits use lead = 0.
struct ControlCircuitModel {
  std::vector<double> taps{1.0};
  double sample_rate = 1.0;
  double passband_lo = 0.0;  // Hz
  double passband_hi = 0.0;  // Hz
  std::size_t lead = 0;

  void validate() const;
  std::complex<double> response(double freq_hz) const;
};

ControlCircuitModel identity_circuit(double sample_rate, double passband_lo, double passband_hi);

// Sampled impulse response of the series-RLC low-pass
//   H(s) = wn^2 / (s^2 + 2 zeta wn s + wn^2),  wn = 2 pi cutoff,
// truncated once the envelope decays below 1e-12 and scaled to unit DC gain.
ControlCircuitModel rlc_lowpass(double sample_rate, double cutoff_hz, double damping,
                                double passband_lo, double passband_hi);

// y[n] = sum_m taps[m] * x[n - m + lead], zero initial state, length |x|.
std::vector<double> convolve_direct(std::span<const double> taps, std::size_t lead,
                                    std::span<const double> x);
std::vector<double> convolve_fft(std::span<const double> taps, std::size_t lead,
                                 std::span<const double> x);

// Throws ConfigError on a sample-rate mismatch.
SampledSignal apply_response(const ControlCircuitModel& cc, const SampledSignal& v);

// As apply_response, but the input is taken to hold its first value before
// the record and its last value after it, so the circuit starts settled.
// This is how a DAC driving the circuit behaves; it leaves a dc bias intact
// at the edges.
SampledSignal apply_response_held(const ControlCircuitModel& cc, const SampledSignal& v);

constexpr double kDefaultRegEps = 1e-6;

// Tikhonov inverse G = H* / (|H|^2 + reg_eps max|H|^2) on an fft_len-point
// grid. fft_len = 0 starts from max(1024, 8 * taps) rounded to a power of
// two and doubles until the inverse has decayed before wrapping. The result
// is two-sided and carries lead = fft_len / 2 before trimming negligible
// tails. Throws DegenerateFilterError for an all-zero response.
ControlCircuitModel inverse_filter(const ControlCircuitModel& cc, double reg_eps = kDefaultRegEps,
                                   std::size_t fft_len = 0);

struct Flatness {
  double ripple_db;
  double min_gain_db;
};

// Passband ripple and minimum gain from the DTFT sampled at 1025 points
// across [passband_lo, passband_hi].
Flatness flatness_metric(const ControlCircuitModel& cc);

// Upper edge of the band [0, f] on which |H| >= 10 sqrt(reg_eps) max|H|
// holds continuously from dc. This is where inverse_filter is accurate.
double reliable_band_hz(const ControlCircuitModel& cc, double reg_eps = kDefaultRegEps);

}  // namespace awg
