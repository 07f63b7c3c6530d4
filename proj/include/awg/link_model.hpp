#pragma once

// Single-input single-output link: received baseband with beamforming gain
// and AWGN, receiver dc removal, and modulation efficiency.

#include <cstdint>
#include <span>
#include <vector>

#include "awg/array_scattering.hpp"
#include "awg/signal.hpp"

namespace awg {

struct LinkConfig {
  double beam_gain = 1.0;        // G_b
  double mod_attenuation = 1.0;  // L_m
  double noise_std = 0.0;        // V
  std::uint64_t seed = 0;
  double dc_window = 1e-3;       // s

  void validate() const;
};

// y(t) = G_b sum_k A_k(t) + n(t), n ~ N(0, noise_std^2) from a generator
// seeded by link.seed. Warns when the baseband is not narrow against
// `carrier_hz` (pass 0 to skip the check).
SampledSignal received_signal(const WaveformFactor& factor, const Codebook& codebook,
                              const LinkConfig& link, double carrier_hz = 0.0,
                              Warnings* warnings = nullptr);

// Same sum restricted to `units` (noise-free); building block for
// per-input superposition checks.
SampledSignal received_signal(const WaveformFactor& factor, const Codebook& codebook,
                              const LinkConfig& link, std::span<const std::size_t> units);

// Dc-filtered receiver form: y(t) = L_m G_b sum_{k in B1} A_k^ac(t) + n(t).
SampledSignal received_ac_signal(const WaveformFactor& factor, const Codebook& codebook,
                                 const LinkConfig& link);

// Subtracts the mean of each consecutive dc_window-long block (the last,
// possibly shorter block uses its own mean; a window longer than the record
// uses the whole record).
SampledSignal dc_filter(const SampledSignal& y, const LinkConfig& link);
std::vector<double> remove_mean(std::span<const double> x);

// eta_m = sum_{B1} ||A_k^ac||^2 / (sum_{B1} ||A_k||^2 + sum_{B0} alpha^2 N),
// ac parts taken over the full record; 0 when B1 is empty.
double modulation_efficiency(const WaveformFactor& factor, const Codebook& codebook);

// Unsquared-norm reading of the same ratio (norms in the numerator and the
// first denominator term, alpha^2 per OFF unit), kept for comparison.
double modulation_efficiency_norm_form(const WaveformFactor& factor, const Codebook& codebook,
                                       double alpha);

// Coherent detector for a scattered envelope: rotates the field by the phase
// of its mean (the carrier component) and keeps the in-phase part.
SampledSignal coherent_detect(const ComplexSignal& field);

// One-sided amplitude spectrum (rectangular window): bin k of an N-point
// record has frequency k fs / N and amplitude 2 |X_k| / N (|X_k| / N at dc
// and Nyquist), so a unit sine on a bin centre reads 1.
struct Spectrum {
  std::vector<double> freq_hz;
  std::vector<double> amplitude;

  double magnitude_db(std::size_t k) const;
};

Spectrum amplitude_spectrum(const SampledSignal& y);

// Local maxima of the spectrum (dc excluded) at least `min_db` above the
// noise floor: the median level, but never lower than 240 dB under the
// maximum. Strongest first.
std::vector<std::size_t> spectral_peaks(const Spectrum& s, double min_db);

}  // namespace awg
