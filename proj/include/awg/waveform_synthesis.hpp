#pragma once

// Inverse design of DAC control signals: single-input waveform synthesis via
// the inverse magnitude map and a regularised deconvolution, and multi-input
// synthesis by splitting a target spectrogram into disjoint bands.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "awg/control_circuit.hpp"
#include "awg/diode_unit.hpp"
#include "awg/errors.hpp"
#include "awg/signal.hpp"

namespace awg {

template <typename T>
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<T> data;  // row-major

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, T fill = T{}) : rows(r), cols(c), data(r * c, fill) {}
  T& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

using RealMatrix = Matrix<double>;
using ComplexMatrix = Matrix<std::complex<double>>;

struct StftPlan {
  std::size_t dft_len = 256;
  std::size_t hop = 128;
  std::vector<double> window;
  double sample_rate = 1.0;

  void validate() const;
  double bin_width_hz() const { return sample_rate / static_cast<double>(dft_len); }

  // Plan using hamming_window(dft_len).
  static StftPlan hamming(std::size_t dft_len, std::size_t hop, double sample_rate);
};

// L x Mf spectrogram stored frame by frame: values[frame * bins + bin].
struct Spectrogram {
  std::size_t bins = 0;
  std::size_t frames = 0;
  std::vector<std::complex<double>> values;
  StftPlan plan;
  std::size_t source_length = 0;  // samples of the analysed signal, 0 if unknown

  std::complex<double>& at(std::size_t bin, std::size_t frame) {
    return values[frame * bins + bin];
  }
  const std::complex<double>& at(std::size_t bin, std::size_t frame) const {
    return values[frame * bins + bin];
  }
};

// Disjoint sets of 0-based frequency-bin indices, one per input.
struct BandAssignment {
  std::vector<std::vector<std::size_t>> sets;

  // Throws ConfigError for out-of-range or shared bins.
  void validate(std::size_t dft_len) const;
};

// Bin index mirrored through dc: (L - b) mod L.
std::size_t mirror_bin(std::size_t bin, std::size_t dft_len);

// Unitary DFT matrix, entry (p, q) = exp(-j 2 pi p q / L) / sqrt(L).
ComplexMatrix dft_matrix(std::size_t dft_len);

// a0 + (1 - a0) cos(2 pi n / L), a0 = 25/46, for n = -L/2 .. L/2 - 1 stored
// at index n + L/2 (the peak sits at index L/2). Requires even L.
std::vector<double> hamming_window(std::size_t dft_len);

// B(i, j) = b[i + j H] (0-based), Mf = floor(|b| / H) columns, zero beyond |b|.
RealMatrix hankelize(std::span<const double> b, std::size_t dft_len, std::size_t hop);

// Y = Xi W hankelize(y).
Spectrogram stft(const SampledSignal& y, const StftPlan& plan);

// Weighted overlap-add of Xi^H Y with the analysis window, normalised by the
// per-sample sum of squared window values. Output length is the frame span
// (Mf - 1) H + L, cut to source_length when that is shorter. Throws
// CoverageError if the normalisation vanishes inside the output.
SampledSignal istft(const Spectrogram& spec);

// Rows outside `bins` set to zero.
Spectrogram band_mask(const Spectrogram& spec, std::span<const std::size_t> bins);

// Zero-lag normalised cross-correlation after mean removal.
double normalized_correlation(std::span<const double> a, std::span<const double> b);

struct SingleInputOptions {
  double margin = 0.01;         // fraction of the magnitude span kept above L(v_forward)
  double reg_eps = kDefaultRegEps;
  bool check_bandwidth = true;
};

struct SingleInputDesign {
  SampledSignal control;         // DAC voltage x(t)
  SampledSignal magnitude;       // designed |RC| trace: offset + scale * target
  SampledSignal diode_voltage;   // L^-1 of the magnitude trace
  double scale = 0.0;
  double offset = 0.0;
};

// Affinely maps [min, max] of the target onto
// [L(v_forward) + margin * span, L(v_ref)] (a constant target goes to the
// middle of that interval), inverts L per sample, then deconvolves h_cc.
// Throws FeasibilityError if target content above -60 dB of its peak lies
// outside the control circuit's reliable band.
SingleInputDesign design_single_input(const SampledSignal& target, const UnitModel& unit,
                                      const ControlCircuitModel& cc, double carrier_omega,
                                      const SingleInputOptions& options = {});

struct MultiInputDesign {
  std::vector<SampledSignal> components;  // band-limited target per input
  std::vector<SingleInputDesign> inputs;
  Spectrogram spectrogram;
};

// Masks the target spectrogram per band, resynthesises each component and
// designs one control signal per component. `cc_per_input` holds one
// circuit per band, or a single circuit shared by all.
MultiInputDesign design_multi_input(const SampledSignal& target, const BandAssignment& bands,
                                    const StftPlan& plan, const UnitModel& unit,
                                    std::span<const ControlCircuitModel> cc_per_input,
                                    double carrier_omega, const SingleInputOptions& options = {});

// Image rows map to bins so that the middle row (L/2) is dc, row 0 is the
// Nyquist bin and rows r and L - r are conjugate mirrors.
std::size_t image_row_to_bin(std::size_t row, std::size_t dft_len);
std::size_t bin_to_image_row(std::size_t bin, std::size_t dft_len);

// Averages mirrored rows; returns true when the input already was symmetric.
bool symmetrize_image(RealMatrix& image);

struct ImageDesign {
  RealMatrix image;          // symmetrised, intensities in [0, 1]
  Spectrogram target;        // spectrogram built from the image
  SampledSignal waveform;    // istft of the target
  SingleInputDesign design;
};

// Pixel intensities (0..1) become |Y| with a linear phase that centres each
// frame's energy in its window; istft then the single-input design.
ImageDesign image_to_control(const RealMatrix& image, const StftPlan& plan, const UnitModel& unit,
                             const ControlCircuitModel& cc, double carrier_omega,
                             Warnings* warnings = nullptr,
                             const SingleInputOptions& options = {});

// |stft| of a signal laid out as an image (rows per image_row_to_bin).
RealMatrix spectrogram_image(const Spectrogram& spec);

}  // namespace awg
