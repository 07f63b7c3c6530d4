#pragma once

// CSV and PGM artifacts. Numbers are written with 17 significant digits,
// '.' as decimal separator and LF line endings so files can serve as exact
// regression baselines.

#include <filesystem>
#include <string>
#include <vector>

#include "awg/array_scattering.hpp"
#include "awg/control_circuit.hpp"
#include "awg/link_model.hpp"
#include "awg/signal.hpp"
#include "awg/waveform_synthesis.hpp"

namespace awg {

std::string format_number(double v);

// time_s,value
void write_signal_csv(const std::filesystem::path& path, const SampledSignal& s);
SampledSignal read_signal_csv(const std::filesystem::path& path);

// time_s,re,im
void write_complex_signal_csv(const std::filesystem::path& path, const ComplexSignal& s);

// theta_deg,phi_deg,value
void write_pattern_csv(const std::filesystem::path& path, const BeamPattern& p);

// freq_hz,magnitude_db
void write_spectrum_csv(const std::filesystem::path& path, const Spectrum& s);

// index,value
void write_taps_csv(const std::filesystem::path& path, std::span<const double> taps);
std::vector<double> read_taps_csv(const std::filesystem::path& path);

// frame,bin,re,im and frame,bin,magnitude_db
void write_spectrogram_csv(const std::filesystem::path& path, const Spectrogram& s);
void write_spectrogram_db_csv(const std::filesystem::path& path, const Spectrogram& s);

// 8-bit grayscale, P2 (text) or P5 (binary). Pixels come back scaled to [0, 1].
RealMatrix read_pgm(const std::filesystem::path& path);
// Values are clamped to [0, 1] and quantised to 0..255.
void write_pgm(const std::filesystem::path& path, const RealMatrix& image, bool binary = false);

}  // namespace awg
