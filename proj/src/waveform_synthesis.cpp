#include "awg/waveform_synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "awg/fft.hpp"
#include "awg/kernels.hpp"

namespace awg {

namespace {

constexpr double kHammingA0 = 25.0 / 46.0;

// Split re/im copies of the DFT matrix for the dot-product kernels.
struct SplitDft {
  std::size_t n;
  std::vector<double> re;
  std::vector<double> im;

  explicit SplitDft(std::size_t len) : n(len), re(len * len), im(len * len) {
    const auto m = dft_matrix(len);
    for (std::size_t i = 0; i < m.data.size(); ++i) {
      re[i] = m.data[i].real();
      im[i] = m.data[i].imag();
    }
  }
};

bool is_single_tap_identity(const ControlCircuitModel& cc) {
  return cc.taps.size() == 1 && cc.lead == 0 && cc.taps[0] != 0.0;
}

void check_bandwidth(const SampledSignal& target, const ControlCircuitModel& cc, double reg_eps) {
  if (target.size() < 2) return;
  const double reliable = reliable_band_hz(cc, reg_eps);
  if (reliable >= target.sample_rate / 2.0) return;
  double mean = 0.0;
  for (double v : target.samples) mean += v;
  mean /= static_cast<double>(target.size());
  std::vector<double> ac(target.samples);
  for (double& v : ac) v -= mean;
  const std::size_t n = target.size();
  const auto spec = fft::rfft(ac, n);
  double peak = 0.0;
  for (std::size_t k = 1; k < spec.size(); ++k) peak = std::max(peak, std::abs(spec[k]));
  if (peak == 0.0) return;
  for (std::size_t k = 1; k < spec.size(); ++k) {
    const double f = static_cast<double>(k) * target.sample_rate / static_cast<double>(n);
    if (f > reliable && std::abs(spec[k]) >= 1e-3 * peak) {
      std::ostringstream msg;
      msg << "target has content at " << f << " Hz beyond the control circuit's reliable band [0, "
          << reliable << "] Hz";
      throw FeasibilityError(msg.str(), 0.0, reliable);
    }
  }
}

}  // namespace

void StftPlan::validate() const {
  if (dft_len < 1) throw ConfigError("must be >= 1", "stft.dft_len");
  if (hop < 1 || hop > dft_len) throw ConfigError("must lie in [1, dft_len]", "stft.hop");
  if (window.size() != dft_len) throw ConfigError("length must equal dft_len", "stft.window");
  if (!(sample_rate > 0.0)) throw ConfigError("must be > 0", "stft.sample_rate");
}

StftPlan StftPlan::hamming(std::size_t dft_len, std::size_t hop, double sample_rate) {
  StftPlan p;
  p.dft_len = dft_len;
  p.hop = hop;
  p.window = hamming_window(dft_len);
  p.sample_rate = sample_rate;
  p.validate();
  return p;
}

void BandAssignment::validate(std::size_t dft_len) const {
  if (sets.empty()) throw ConfigError("at least one band required", "bands");
  std::vector<int> owner(dft_len, -1);
  for (std::size_t k = 0; k < sets.size(); ++k) {
    for (std::size_t b : sets[k]) {
      if (b >= dft_len) throw ConfigError("bin index out of range", "bands");
      if (owner[b] >= 0 && owner[b] != static_cast<int>(k)) {
        std::ostringstream msg;
        msg << "bin " << b << " assigned to bands " << owner[b] << " and " << k;
        throw ConfigError(msg.str(), "bands");
      }
      owner[b] = static_cast<int>(k);
    }
  }
}

std::size_t mirror_bin(std::size_t bin, std::size_t dft_len) { return (dft_len - bin) % dft_len; }

ComplexMatrix dft_matrix(std::size_t dft_len) {
  if (dft_len < 1) throw ConfigError("must be >= 1", "dft_len");
  const double scale = 1.0 / std::sqrt(static_cast<double>(dft_len));
  std::vector<std::complex<double>> roots(dft_len);
  for (std::size_t i = 0; i < dft_len; ++i) {
    roots[i] = std::polar(scale, -2.0 * kPi * static_cast<double>(i) / static_cast<double>(dft_len));
  }
  ComplexMatrix m(dft_len, dft_len);
  for (std::size_t p = 0; p < dft_len; ++p) {
    for (std::size_t q = 0; q < dft_len; ++q) m(p, q) = roots[(p * q) % dft_len];
  }
  return m;
}

std::vector<double> hamming_window(std::size_t dft_len) {
  if (dft_len == 0 || dft_len % 2 != 0) {
    throw PreconditionError("hamming_window: length must be even and positive");
  }
  std::vector<double> w(dft_len);
  const auto half = static_cast<std::ptrdiff_t>(dft_len / 2);
  for (std::size_t i = 0; i < dft_len; ++i) {
    const auto n = static_cast<std::ptrdiff_t>(i) - half;
    w[i] = kHammingA0 +
           (1.0 - kHammingA0) * std::cos(2.0 * kPi * static_cast<double>(n) /
                                         static_cast<double>(dft_len));
  }
  return w;
}

RealMatrix hankelize(std::span<const double> b, std::size_t dft_len, std::size_t hop) {
  if (dft_len < 1 || hop < 1) throw ConfigError("dft_len and hop must be >= 1", "stft");
  const std::size_t frames = b.size() / hop;
  RealMatrix m(dft_len, frames, 0.0);
  for (std::size_t j = 0; j < frames; ++j) {
    for (std::size_t i = 0; i < dft_len; ++i) {
      const std::size_t idx = i + j * hop;
      if (idx < b.size()) m(i, j) = b[idx];
    }
  }
  return m;
}

Spectrogram stft(const SampledSignal& y, const StftPlan& plan) {
  plan.validate();
  if (y.sample_rate != plan.sample_rate) {
    throw ConfigError("signal rate does not match the plan", "stft.sample_rate");
  }
  const std::size_t len = plan.dft_len;
  const SplitDft dft(len);
  const RealMatrix frames = hankelize(y.samples, len, plan.hop);

  Spectrogram s;
  s.bins = len;
  s.frames = frames.cols;
  s.plan = plan;
  s.source_length = y.size();
  s.values.resize(len * s.frames);
  const auto& k = kernels::active();
  std::vector<double> col(len);
  for (std::size_t j = 0; j < s.frames; ++j) {
    for (std::size_t i = 0; i < len; ++i) col[i] = plan.window[i] * frames(i, j);
    for (std::size_t p = 0; p < len; ++p) {
      const double re = k.dot(dft.re.data() + p * len, col.data(), len);
      const double im = k.dot(dft.im.data() + p * len, col.data(), len);
      s.at(p, j) = {re, im};
    }
  }
  return s;
}

SampledSignal istft(const Spectrogram& spec) {
  spec.plan.validate();
  const std::size_t len = spec.bins;
  const std::size_t hop = spec.plan.hop;
  if (len != spec.plan.dft_len) throw ConfigError("bin count differs from plan", "spectrogram");
  SampledSignal out;
  out.sample_rate = spec.plan.sample_rate;
  if (spec.frames == 0) return out;

  const std::size_t span = (spec.frames - 1) * hop + len;
  const std::size_t n_out =
      spec.source_length > 0 ? std::min(span, spec.source_length) : span;
  std::vector<double> acc(span, 0.0);
  std::vector<double> norm(span, 0.0);

  // Xi is symmetric, so Xi^H Y is a row of conj(Xi) against Y; only the
  // real part is kept.
  const SplitDft dft(len);
  const auto& k = kernels::active();
  std::vector<double> yre(len);
  std::vector<double> yim(len);
  const auto& w = spec.plan.window;
  for (std::size_t j = 0; j < spec.frames; ++j) {
    for (std::size_t p = 0; p < len; ++p) {
      yre[p] = spec.at(p, j).real();
      yim[p] = spec.at(p, j).imag();
    }
    const std::size_t start = j * hop;
    for (std::size_t q = 0; q < len; ++q) {
      const double x = k.dot(dft.re.data() + q * len, yre.data(), len) +
                       k.dot(dft.im.data() + q * len, yim.data(), len);
      acc[start + q] += w[q] * x;
      norm[start + q] += w[q] * w[q];
    }
  }

  out.samples.resize(n_out);
  for (std::size_t n = 0; n < n_out; ++n) {
    if (!(norm[n] > 0.0)) {
      std::ostringstream msg;
      msg << "istft: no window coverage at sample " << n;
      throw CoverageError(msg.str(), n);
    }
    out.samples[n] = acc[n] / norm[n];
  }
  return out;
}

Spectrogram band_mask(const Spectrogram& spec, std::span<const std::size_t> bins) {
  std::vector<bool> keep(spec.bins, false);
  for (std::size_t b : bins) {
    if (b >= spec.bins) throw ConfigError("bin index out of range", "bands");
    keep[b] = true;
  }
  Spectrogram out = spec;
  for (std::size_t j = 0; j < spec.frames; ++j) {
    for (std::size_t b = 0; b < spec.bins; ++b) {
      if (!keep[b]) out.at(b, j) = 0.0;
    }
  }
  return out;
}

double normalized_correlation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ConfigError("length mismatch", "correlation");
  if (a.empty()) return 0.0;
  double ma = 0.0;
  double mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= static_cast<double>(a.size());
  mb /= static_cast<double>(b.size());
  double sab = 0.0;
  double saa = 0.0;
  double sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

SingleInputDesign design_single_input(const SampledSignal& target, const UnitModel& unit,
                                      const ControlCircuitModel& cc, double carrier_omega,
                                      const SingleInputOptions& options) {
  target.validate();
  unit.validate();
  cc.validate();
  if (target.sample_rate != cc.sample_rate) {
    throw ConfigError("target rate does not match the control circuit", "target.sample_rate");
  }
  if (!(options.margin >= 0.0 && options.margin < 1.0)) {
    throw ConfigError("must lie in [0, 1)", "synthesis.margin");
  }
  if (options.check_bandwidth && !is_single_tap_identity(cc)) {
    check_bandwidth(target, cc, options.reg_eps);
  }

  const MagnitudeRange range = magnitude_range(unit, carrier_omega);
  const double lo = range.lo + options.margin * range.span();
  const double hi = range.hi;

  SingleInputDesign d;
  if (target.samples.empty()) {
    d.control.sample_rate = d.magnitude.sample_rate = d.diode_voltage.sample_rate =
        target.sample_rate;
    return d;
  }
  const auto [mn, mx] = std::minmax_element(target.samples.begin(), target.samples.end());
  if (*mx > *mn) {
    d.scale = (hi - lo) / (*mx - *mn);
    d.offset = lo - d.scale * *mn;
  } else {
    d.scale = 0.0;
    d.offset = 0.5 * (lo + hi);
  }

  d.magnitude.sample_rate = target.sample_rate;
  d.magnitude.samples.resize(target.size());
  d.diode_voltage.sample_rate = target.sample_rate;
  d.diode_voltage.unit = SignalUnit::volt;
  d.diode_voltage.samples.resize(target.size());
  for (std::size_t t = 0; t < target.size(); ++t) {
    const double m = std::clamp(d.offset + d.scale * target.samples[t], lo, hi);
    d.magnitude.samples[t] = m;
    d.diode_voltage.samples[t] = inverse_magnitude_map(unit, m, carrier_omega);
  }

  if (is_single_tap_identity(cc)) {
    d.control = d.diode_voltage;
    if (cc.taps[0] != 1.0) {
      for (double& v : d.control.samples) v /= cc.taps[0];
    }
  } else {
    d.control = apply_response_held(inverse_filter(cc, options.reg_eps), d.diode_voltage);
  }
  d.control.unit = SignalUnit::volt;
  return d;
}

MultiInputDesign design_multi_input(const SampledSignal& target, const BandAssignment& bands,
                                    const StftPlan& plan, const UnitModel& unit,
                                    std::span<const ControlCircuitModel> cc_per_input,
                                    double carrier_omega, const SingleInputOptions& options) {
  plan.validate();
  bands.validate(plan.dft_len);
  if (cc_per_input.size() != 1 && cc_per_input.size() != bands.sets.size()) {
    throw ConfigError("expected one control circuit, or one per band", "control_circuit");
  }
  if (plan.sample_rate != target.sample_rate) {
    throw ConfigError("target rate does not match the plan", "stft.sample_rate");
  }

  MultiInputDesign out;
  out.spectrogram = stft(target, plan);

  // Every bin holding more than -60 dB of the peak must belong to a band.
  std::vector<bool> covered(plan.dft_len, false);
  for (const auto& set : bands.sets) {
    for (std::size_t b : set) covered[b] = true;
  }
  double peak = 0.0;
  for (const auto& v : out.spectrogram.values) peak = std::max(peak, std::abs(v));
  for (std::size_t b = 0; b < plan.dft_len && peak > 0.0; ++b) {
    if (covered[b]) continue;
    for (std::size_t j = 0; j < out.spectrogram.frames; ++j) {
      if (std::abs(out.spectrogram.at(b, j)) > 1e-3 * peak) {
        std::ostringstream msg;
        msg << "bin " << b << " carries target energy but is in no band";
        throw ConfigError(msg.str(), "bands");
      }
    }
  }

  for (std::size_t k = 0; k < bands.sets.size(); ++k) {
    SampledSignal part = istft(band_mask(out.spectrogram, bands.sets[k]));
    part.samples.resize(target.size(), 0.0);
    part.unit = target.unit;
    const ControlCircuitModel& cc = cc_per_input.size() == 1 ? cc_per_input[0] : cc_per_input[k];
    out.inputs.push_back(design_single_input(part, unit, cc, carrier_omega, options));
    out.components.push_back(std::move(part));
  }
  return out;
}

std::size_t image_row_to_bin(std::size_t row, std::size_t dft_len) {
  return (dft_len / 2 + dft_len - row) % dft_len;
}

std::size_t bin_to_image_row(std::size_t bin, std::size_t dft_len) {
  return (dft_len / 2 + dft_len - bin) % dft_len;
}

bool symmetrize_image(RealMatrix& image) {
  const std::size_t rows = image.rows;
  bool symmetric = true;
  for (std::size_t r = 1; r < rows / 2; ++r) {
    const std::size_t m = rows - r;
    for (std::size_t c = 0; c < image.cols; ++c) {
      const double a = image(r, c);
      const double b = image(m, c);
      if (a != b) {
        symmetric = false;
        image(r, c) = image(m, c) = 0.5 * (a + b);
      }
    }
  }
  return symmetric;
}

ImageDesign image_to_control(const RealMatrix& image, const StftPlan& plan, const UnitModel& unit,
                             const ControlCircuitModel& cc, double carrier_omega,
                             Warnings* warnings, const SingleInputOptions& options) {
  plan.validate();
  const std::size_t len = plan.dft_len;
  if (image.rows != len) throw ConfigError("image row count must equal dft_len", "image");
  if (len % 2 != 0) throw ConfigError("dft_len must be even for image targets", "stft.dft_len");

  ImageDesign out;
  out.image = image;
  if (!symmetrize_image(out.image)) {
    warn(warnings, "image was not symmetric about the dc row; mirrored rows averaged");
  }

  Spectrogram& s = out.target;
  s.bins = len;
  s.frames = image.cols;
  s.plan = plan;
  s.source_length = image.cols * plan.hop;
  s.values.assign(len * s.frames, 0.0);
  // exp(-j 2 pi b (L/2) / L) = (-1)^b puts each frame's pulse mid-window.
  for (std::size_t j = 0; j < s.frames; ++j) {
    for (std::size_t r = 0; r < len; ++r) {
      const std::size_t b = image_row_to_bin(r, len);
      const double sign = (b % 2 == 0) ? 1.0 : -1.0;
      s.at(b, j) = sign * out.image(r, j);
    }
  }
  out.waveform = istft(s);
  out.waveform.samples.resize(s.source_length, 0.0);
  out.design = design_single_input(out.waveform, unit, cc, carrier_omega, options);
  return out;
}

RealMatrix spectrogram_image(const Spectrogram& spec) {
  RealMatrix img(spec.bins, spec.frames, 0.0);
  for (std::size_t j = 0; j < spec.frames; ++j) {
    for (std::size_t b = 0; b < spec.bins; ++b) {
      img(bin_to_image_row(b, spec.bins), j) = std::abs(spec.at(b, j));
    }
  }
  return img;
}

}  // namespace awg
