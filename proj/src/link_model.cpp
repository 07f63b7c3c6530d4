#include "awg/link_model.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "awg/errors.hpp"
#include "awg/fft.hpp"
#include "awg/kernels.hpp"

namespace awg {

namespace {

bool is_constant(std::span<const double> x) {
  return std::all_of(x.begin(), x.end(), [&](double v) { return v == x.front(); });
}

void check_factor(const WaveformFactor& factor, const Codebook& codebook) {
  if (factor.units != codebook.size()) {
    throw ConfigError("waveform factor and codebook disagree on unit count", "codebook");
  }
  if (factor.values.size() != factor.units * factor.samples) {
    throw ConfigError("magnitude traces differ in length", "waveform_factor");
  }
}

double energy(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

}  // namespace

void LinkConfig::validate() const {
  if (!(beam_gain > 0.0)) throw ConfigError("must be > 0", "link.beam_gain");
  if (!(noise_std >= 0.0)) throw ConfigError("must be >= 0", "link.noise_std");
  if (!(dc_window > 0.0)) throw ConfigError("must be > 0", "link.dc_window");
  if (!std::isfinite(mod_attenuation)) throw ConfigError("must be finite", "link.mod_attenuation");
}

SampledSignal received_signal(const WaveformFactor& factor, const Codebook& codebook,
                              const LinkConfig& link, double carrier_hz, Warnings* warnings) {
  link.validate();
  check_factor(factor, codebook);
  if (carrier_hz > 0.0 && factor.sample_rate / 2.0 > 0.01 * carrier_hz) {
    warn(warnings, "baseband bandwidth is not small against the carrier");
  }
  SampledSignal y;
  y.sample_rate = factor.sample_rate;
  y.unit = SignalUnit::volt;
  y.samples.assign(factor.samples, 0.0);
  const auto& k = kernels::active();
  for (std::size_t u = 0; u < factor.units; ++u) {
    k.axpy(link.beam_gain, factor.unit(u).data(), y.samples.data(), factor.samples);
  }
  if (link.noise_std > 0.0) {
    std::mt19937_64 rng(link.seed);
    std::normal_distribution<double> noise(0.0, link.noise_std);
    for (double& v : y.samples) v += noise(rng);
  }
  return y;
}

SampledSignal received_signal(const WaveformFactor& factor, const Codebook& codebook,
                              const LinkConfig& link, std::span<const std::size_t> units) {
  link.validate();
  check_factor(factor, codebook);
  SampledSignal y;
  y.sample_rate = factor.sample_rate;
  y.unit = SignalUnit::volt;
  y.samples.assign(factor.samples, 0.0);
  const auto& k = kernels::active();
  for (std::size_t u : units) {
    if (u >= factor.units) throw ConfigError("unit index out of range", "units");
    k.axpy(link.beam_gain, factor.unit(u).data(), y.samples.data(), factor.samples);
  }
  return y;
}

SampledSignal received_ac_signal(const WaveformFactor& factor, const Codebook& codebook,
                                 const LinkConfig& link) {
  link.validate();
  check_factor(factor, codebook);
  SampledSignal y;
  y.sample_rate = factor.sample_rate;
  y.unit = SignalUnit::volt;
  y.samples.assign(factor.samples, 0.0);
  const double gain = link.mod_attenuation * link.beam_gain;
  const auto& k = kernels::active();
  SampledSignal row;
  row.sample_rate = factor.sample_rate;
  for (std::size_t u = 0; u < factor.units; ++u) {
    if (!codebook.bits[u]) continue;
    row.samples.assign(factor.unit(u).begin(), factor.unit(u).end());
    const SampledSignal ac = dc_filter(row, link);
    k.axpy(gain, ac.samples.data(), y.samples.data(), factor.samples);
  }
  if (link.noise_std > 0.0) {
    std::mt19937_64 rng(link.seed);
    std::normal_distribution<double> noise(0.0, link.noise_std);
    for (double& v : y.samples) v += noise(rng);
  }
  return y;
}

std::vector<double> remove_mean(std::span<const double> x) {
  std::vector<double> out(x.size(), 0.0);
  if (x.empty() || is_constant(x)) return out;
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - mean;
  return out;
}

SampledSignal dc_filter(const SampledSignal& y, const LinkConfig& link) {
  if (!(link.dc_window > 0.0)) throw ConfigError("must be > 0", "link.dc_window");
  SampledSignal out;
  out.sample_rate = y.sample_rate;
  out.unit = y.unit;
  out.samples.resize(y.size());
  const auto window = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(link.dc_window * y.sample_rate)));
  const std::span<const double> in(y.samples);
  for (std::size_t start = 0; start < in.size(); start += window) {
    const std::size_t len = std::min(window, in.size() - start);
    const auto block = remove_mean(in.subspan(start, len));
    std::copy(block.begin(), block.end(), out.samples.begin() + static_cast<std::ptrdiff_t>(start));
  }
  return out;
}

double modulation_efficiency(const WaveformFactor& factor, const Codebook& codebook) {
  check_factor(factor, codebook);
  if (factor.samples == 0) throw ConfigError("need at least one sample", "waveform_factor");
  double ac = 0.0;
  double on_total = 0.0;
  double off_total = 0.0;
  for (std::size_t u = 0; u < factor.units; ++u) {
    const auto row = factor.unit(u);
    if (codebook.bits[u]) {
      ac += energy(remove_mean(row));
      on_total += energy(row);
    } else {
      off_total += energy(row);
    }
  }
  if (codebook.on_count() == 0 || ac == 0.0) return 0.0;
  return ac / (on_total + off_total);
}

double modulation_efficiency_norm_form(const WaveformFactor& factor, const Codebook& codebook,
                                       double alpha) {
  check_factor(factor, codebook);
  double ac = 0.0;
  double den = 0.0;
  for (std::size_t u = 0; u < factor.units; ++u) {
    const auto row = factor.unit(u);
    if (codebook.bits[u]) {
      ac += std::sqrt(energy(remove_mean(row)));
      den += std::sqrt(energy(row));
    } else {
      den += alpha * alpha;
    }
  }
  if (den == 0.0) return 0.0;
  return ac / den;
}

SampledSignal coherent_detect(const ComplexSignal& field) {
  std::complex<double> mean = 0.0;
  for (const auto& v : field.samples) mean += v;
  const std::complex<double> rot =
      std::abs(mean) > 0.0 ? std::conj(mean) / std::abs(mean) : std::complex<double>(1.0, 0.0);
  SampledSignal y;
  y.sample_rate = field.sample_rate;
  y.samples.resize(field.size());
  for (std::size_t t = 0; t < field.size(); ++t) y.samples[t] = (field.samples[t] * rot).real();
  return y;
}

double Spectrum::magnitude_db(std::size_t k) const {
  return 20.0 * std::log10(std::max(amplitude[k], 1e-20));
}

Spectrum amplitude_spectrum(const SampledSignal& y) {
  Spectrum s;
  const std::size_t n = y.size();
  if (n == 0) return s;
  const auto bins = fft::rfft(y.samples, n);
  s.freq_hz.resize(bins.size());
  s.amplitude.resize(bins.size());
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t k = 0; k < bins.size(); ++k) {
    const bool edge = k == 0 || (n % 2 == 0 && k == n / 2);
    s.freq_hz[k] = static_cast<double>(k) * y.sample_rate * inv_n;
    s.amplitude[k] = std::abs(bins[k]) * inv_n * (edge ? 1.0 : 2.0);
  }
  return s;
}

std::vector<std::size_t> spectral_peaks(const Spectrum& s, double min_db) {
  std::vector<std::size_t> peaks;
  if (s.amplitude.size() < 3) return peaks;
  std::vector<double> db;
  for (std::size_t k = 1; k < s.amplitude.size(); ++k) db.push_back(s.magnitude_db(k));
  std::vector<double> sorted = db;
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2),
                   sorted.end());
  // Below 1e-12 of the maximum (-240 dB) content is rounding residue, so the
  // floor never drops under that level.
  const double max_db = *std::max_element(db.begin(), db.end());
  const double floor_db = std::max(sorted[sorted.size() / 2], max_db - 240.0);
  for (std::size_t k = 1; k < s.amplitude.size(); ++k) {
    const double left = s.amplitude[k - 1];
    const double right = k + 1 < s.amplitude.size() ? s.amplitude[k + 1] : 0.0;
    const bool local = s.amplitude[k] > left && s.amplitude[k] >= right;
    if (local && s.magnitude_db(k) >= floor_db + min_db) peaks.push_back(k);
  }
  std::sort(peaks.begin(), peaks.end(),
            [&](std::size_t a, std::size_t b) { return s.amplitude[a] > s.amplitude[b]; });
  return peaks;
}

}  // namespace awg
