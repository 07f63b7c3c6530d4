#include "awg/waveforms.hpp"

#include <cmath>

#include "awg/diode_unit.hpp"
#include "awg/errors.hpp"
#include "awg/io.hpp"

namespace awg {

namespace {

// Position within the current period, in [-period/2, period/2).
double centred(double t, double period) {
  double r = std::fmod(t, period);
  if (r < 0.0) r += period;
  return r - 0.5 * period;
}

}  // namespace

const char* waveform_kind_name(WaveformKind kind) {
  switch (kind) {
    case WaveformKind::constant: return "constant";
    case WaveformKind::sine: return "sine";
    case WaveformKind::square: return "square";
    case WaveformKind::gauss_pulse: return "gauss_pulse";
    case WaveformKind::sinc: return "sinc";
    case WaveformKind::chirp: return "chirp";
    case WaveformKind::file: return "file";
  }
  return "constant";
}

WaveformKind parse_waveform_kind(const std::string& name) {
  if (name == "constant") return WaveformKind::constant;
  if (name == "sine") return WaveformKind::sine;
  if (name == "square") return WaveformKind::square;
  if (name == "gauss_pulse") return WaveformKind::gauss_pulse;
  if (name == "sinc") return WaveformKind::sinc;
  if (name == "chirp") return WaveformKind::chirp;
  if (name == "file") return WaveformKind::file;
  throw ConfigError("unknown waveform kind '" + name + "'", "inputs.kind");
}

SampledSignal generate_waveform(const WaveformSpec& spec, std::size_t samples, double sample_rate,
                                SignalUnit unit) {
  if (!(sample_rate > 0.0)) throw ConfigError("must be > 0", "sample_rate");
  SampledSignal s;
  s.sample_rate = sample_rate;
  s.unit = unit;
  if (spec.kind == WaveformKind::file) {
    s.samples = read_signal_csv(spec.path).samples;
    s.samples.resize(samples, s.samples.empty() ? 0.0 : s.samples.back());
    for (double& v : s.samples) v = spec.offset + spec.amplitude * v;
    return s;
  }
  if (spec.kind != WaveformKind::constant && !(spec.frequency > 0.0)) {
    throw ConfigError("must be > 0", "inputs.frequency");
  }
  const double period = spec.kind == WaveformKind::constant ? 1.0 : 1.0 / spec.frequency;
  s.samples.resize(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = static_cast<double>(i) / sample_rate;
    double v = 0.0;
    switch (spec.kind) {
      case WaveformKind::constant:
        v = 0.0;
        break;
      case WaveformKind::sine:
        v = std::sin(2.0 * kPi * spec.frequency * t + spec.phase);
        break;
      case WaveformKind::square: {
        double cycles = spec.frequency * t + spec.phase / (2.0 * kPi);
        cycles -= std::floor(cycles);
        v = cycles < 0.5 ? 1.0 : -1.0;
        break;
      }
      case WaveformKind::gauss_pulse: {
        const double u = centred(t + spec.phase / (2.0 * kPi) * period, period);
        v = std::exp(-0.5 * u * u / (spec.width * spec.width));
        break;
      }
      case WaveformKind::sinc: {
        const double u = centred(t + spec.phase / (2.0 * kPi) * period, period) / spec.width;
        v = u == 0.0 ? 1.0 : std::sin(kPi * u) / (kPi * u);
        break;
      }
      case WaveformKind::chirp: {
        double tau = std::fmod(t, period);
        const double rate = (spec.f_stop - spec.f_start) / period;
        v = std::sin(2.0 * kPi * (spec.f_start * tau + 0.5 * rate * tau * tau) + spec.phase);
        break;
      }
      case WaveformKind::file:
        break;
    }
    s.samples[i] = spec.offset + spec.amplitude * v;
  }
  return s;
}

}  // namespace awg
