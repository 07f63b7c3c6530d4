#pragma once

// Test-signal generators used by scenarios and synthesis targets.

#include <cstddef>
#include <string>

#include "awg/signal.hpp"

namespace awg {

enum class WaveformKind { constant, sine, square, gauss_pulse, sinc, chirp, file };

// Periodic shapes repeat every 1/frequency seconds; gauss_pulse and sinc
// are centred in each period. `width` is the Gaussian sigma (s) or the sinc
// main-lobe half width (s). chirp sweeps f_start -> f_stop over each period.
struct WaveformSpec {
  WaveformKind kind = WaveformKind::constant;
  double amplitude = 1.0;
  double offset = 0.0;
  double frequency = 1e3;  // Hz
  double phase = 0.0;      // rad
  double width = 1e-4;     // s
  double f_start = 0.0;    // Hz
  double f_stop = 0.0;     // Hz
  std::string path;        // file kind: CSV (time_s, value)
};

const char* waveform_kind_name(WaveformKind kind);
WaveformKind parse_waveform_kind(const std::string& name);

SampledSignal generate_waveform(const WaveformSpec& spec, std::size_t samples, double sample_rate,
                                SignalUnit unit = SignalUnit::volt);

}  // namespace awg
