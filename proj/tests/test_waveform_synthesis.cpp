#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "doctest.h"

#include "awg/array_scattering.hpp"
#include "awg/errors.hpp"
#include "awg/link_model.hpp"
#include "awg/waveform_synthesis.hpp"
#include "awg/waveforms.hpp"

using namespace awg;
using cd = std::complex<double>;

namespace {

const double kPiD = 3.141592653589793;

SampledSignal white_noise(std::size_t n, std::uint64_t seed, double fs = 1e6) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> x(n);
  for (double& v : x) v = g(rng);
  return make_signal(x, fs);
}

// Forward model for a single input feeding one ON unit.
std::vector<double> forward(const SampledSignal& control, const UnitModel& u,
                            const ControlCircuitModel& cc) {
  Codebook cb{{1}};
  std::vector<SampledSignal> in{control};
  const auto f = waveform_factor(cb, Wiring::single(1), u, cc, in, default_omega());
  return received_signal(f, cb, LinkConfig{}).samples;
}

}  // namespace

TEST_CASE("dft matrix") {
  const auto one = dft_matrix(1);
  CHECK(one(0, 0) == cd(1.0, 0.0));

  const auto m4 = dft_matrix(4);
  for (std::size_t p = 0; p < 4; ++p) {
    for (std::size_t q = 0; q < 4; ++q) {
      const cd expected = std::exp(cd(0.0, -2.0 * kPiD * p * q / 4.0)) / 2.0;
      CHECK(std::abs(m4(p, q) - expected) < 1e-15);
    }
  }

  for (std::size_t len : {1u, 2u, 4u, 8u, 64u, 256u}) {
    const auto m = dft_matrix(len);
    double err = 0.0;
    for (std::size_t a = 0; a < len; ++a) {
      for (std::size_t b = 0; b < len; ++b) {
        cd s = 0.0;
        for (std::size_t c = 0; c < len; ++c) s += m(a, c) * std::conj(m(b, c));
        err = std::max(err, std::abs(s - (a == b ? 1.0 : 0.0)));
      }
    }
    CAPTURE(len);
    CHECK(err <= 1e-12);
  }
}

TEST_CASE("hamming window") {
  const auto w = hamming_window(16);
  CHECK(w[8] == 1.0);
  CHECK(w[0] == doctest::Approx(2.0 / 23.0).epsilon(1e-14));
  for (std::size_t n = 1; n < 8; ++n) CHECK(w[8 + n] == doctest::Approx(w[8 - n]).epsilon(1e-15));
  CHECK_THROWS_AS(hamming_window(7), PreconditionError);
}

TEST_CASE("hankelize") {
  const std::vector<double> b{1, 2, 3, 4, 5, 6, 7};
  const auto m = hankelize(b, 3, 2);
  REQUIRE(m.cols == 3);
  CHECK(m(0, 0) == 1);
  CHECK(m(2, 0) == 3);
  CHECK(m(0, 1) == 3);
  CHECK(m(2, 2) == 7);

  const auto blocks = hankelize(b, 3, 3);
  REQUIRE(blocks.cols == 2);
  CHECK(blocks(0, 1) == 4);
  CHECK(blocks(2, 1) == 6);

  const auto tail = hankelize(b, 4, 3);  // second column reads b[3..6], third b[6..9]
  REQUIRE(tail.cols == 2);
  CHECK(tail(3, 1) == 7);
  const std::vector<double> c{1, 2, 3, 4, 5};
  const auto pad = hankelize(c, 4, 2);
  REQUIRE(pad.cols == 2);
  CHECK(pad(3, 1) == 0.0);  // index 5 is past the end
  CHECK(pad(2, 1) == 5.0);
}

TEST_CASE("stft equals the explicit matrix product") {
  const auto y = white_noise(100, 1);
  const auto plan = StftPlan::hamming(16, 8, 1e6);
  const auto s = stft(y, plan);
  const auto xi = dft_matrix(16);
  const auto frames = hankelize(y.samples, 16, 8);
  REQUIRE(s.frames == frames.cols);
  for (std::size_t j = 0; j < s.frames; ++j) {
    for (std::size_t p = 0; p < 16; ++p) {
      cd acc = 0.0;
      for (std::size_t q = 0; q < 16; ++q) acc += xi(p, q) * plan.window[q] * frames(q, j);
      CHECK(std::abs(s.at(p, j) - acc) < 1e-12);
    }
  }
}

TEST_CASE("stft basics") {
  const auto plan = StftPlan::hamming(32, 16, 1e6);
  const auto z = stft(make_signal(std::vector<double>(200, 0.0), 1e6), plan);
  for (const auto& v : z.values) CHECK(v == cd(0.0, 0.0));

  // Bin-centred tone with a rectangular window and H = L.
  StftPlan rect;
  rect.dft_len = 32;
  rect.hop = 32;
  rect.window.assign(32, 1.0);
  rect.sample_rate = 1e6;
  std::vector<double> tone(320);
  for (std::size_t n = 0; n < tone.size(); ++n) tone[n] = std::cos(2.0 * kPiD * 5.0 * n / 32.0);
  const auto s = stft(make_signal(tone, 1e6), rect);
  for (std::size_t j = 0; j < s.frames; ++j) {
    for (std::size_t b = 0; b < 32; ++b) {
      const double expected = (b == 5 || b == 27) ? std::sqrt(32.0) / 2.0 : 0.0;
      CHECK(std::abs(s.at(b, j)) == doctest::Approx(expected).epsilon(1e-12).scale(1.0));
    }
  }

  // Real input: conjugate-symmetric columns; Parseval per frame.
  const auto y = white_noise(500, 2);
  const auto sy = stft(y, plan);
  const auto frames = hankelize(y.samples, 32, 16);
  for (std::size_t j = 0; j < sy.frames; ++j) {
    double e_col = 0.0;
    double e_frame = 0.0;
    for (std::size_t b = 0; b < 32; ++b) {
      CHECK(std::abs(sy.at(b, j) - std::conj(sy.at(mirror_bin(b, 32), j))) < 1e-12);
      e_col += std::norm(sy.at(b, j));
      e_frame += std::pow(plan.window[b] * frames(b, j), 2);
    }
    CHECK(e_col == doctest::Approx(e_frame).epsilon(1e-10));
  }
}

TEST_CASE("istft round trip") {
  for (std::size_t hop : {64u, 128u}) {
    const auto y = white_noise(1 << 12, 3 + hop);
    const auto plan = StftPlan::hamming(256, hop, 1e6);
    const auto back = istft(stft(y, plan));
    REQUIRE(back.size() == y.size());
    double err = 0.0;
    double scale = 0.0;
    // Interior: samples covered by full frames.
    const std::size_t end = (y.size() / hop - 1) * hop + 256 - 256;
    for (std::size_t i = 0; i < end; ++i) {
      err = std::max(err, std::abs(back.samples[i] - y.samples[i]));
      scale = std::max(scale, std::abs(y.samples[i]));
    }
    CHECK(err / scale <= 1e-10);
  }
}

TEST_CASE("istft: zero, linearity, coverage") {
  const auto plan = StftPlan::hamming(16, 8, 1e6);
  const auto s1 = stft(white_noise(160, 4), plan);
  const auto s2 = stft(white_noise(160, 5), plan);
  Spectrogram zero = s1;
  for (auto& v : zero.values) v = 0.0;
  for (double v : istft(zero).samples) CHECK(v == 0.0);
  Spectrogram sum = s1;
  for (std::size_t i = 0; i < sum.values.size(); ++i) sum.values[i] += s2.values[i];
  const auto a = istft(s1), b = istft(s2), c = istft(sum);
  for (std::size_t i = 0; i < c.size(); ++i) CHECK(std::abs(c.samples[i] - a.samples[i] - b.samples[i]) < 1e-12);

  Spectrogram gap = s1;
  gap.plan.window.assign(16, 1.0);
  gap.plan.window[0] = 0.0;
  gap.plan.hop = 16;
  gap.frames = 2;
  gap.values.resize(32);
  gap.source_length = 0;
  try {
    istft(gap);
    FAIL("expected CoverageError");
  } catch (const CoverageError& e) {
    CHECK(e.sample() == 0);
  }
}

TEST_CASE("band mask") {
  const auto plan = StftPlan::hamming(32, 16, 1e6);
  const auto s = stft(white_noise(320, 6), plan);
  std::vector<std::size_t> all(32);
  for (std::size_t b = 0; b < 32; ++b) all[b] = b;
  CHECK(band_mask(s, all).values == s.values);

  std::vector<std::size_t> even, odd;
  for (std::size_t b = 0; b < 32; ++b) (b % 2 ? odd : even).push_back(b);
  const auto me = band_mask(s, even);
  const auto mo = band_mask(s, odd);
  for (std::size_t i = 0; i < s.values.size(); ++i) CHECK(me.values[i] + mo.values[i] == s.values[i]);

  // Two tones: keeping one bin pair isolates one tone.
  std::vector<double> x(640), t1(640);
  for (std::size_t n = 0; n < x.size(); ++n) {
    t1[n] = std::cos(2.0 * kPiD * 4.0 * n / 32.0);
    x[n] = t1[n] + 0.5 * std::cos(2.0 * kPiD * 10.0 * n / 32.0);
  }
  const auto sx = stft(make_signal(x, 1e6), plan);
  const std::vector<std::size_t> keep{3, 4, 5, 27, 28, 29};
  const auto iso = istft(band_mask(sx, keep));
  for (std::size_t n = 0; n < 600; ++n) CHECK(std::abs(iso.samples[n] - t1[n]) < 1e-9);
}

TEST_CASE("band assignment validation") {
  BandAssignment ok{{{1, 31}, {2, 30}}};
  CHECK_NOTHROW(ok.validate(32));
  BandAssignment shared{{{1, 2}, {2, 3}}};
  CHECK_THROWS_AS(shared.validate(32), ConfigError);
  BandAssignment range{{{40}}};
  CHECK_THROWS_AS(range.validate(32), ConfigError);
}

TEST_CASE("single-input design with a flat circuit") {
  UnitModel u;
  const double fs = 1e6;
  const auto cc = identity_circuit(fs, 0.0, 2e5);
  const MagnitudeRange r = magnitude_range(u, default_omega());

  WaveformSpec sq;
  sq.kind = WaveformKind::square;
  sq.frequency = 10e3;
  const auto target = generate_waveform(sq, 1000, fs, SignalUnit::dimensionless);
  const auto d = design_single_input(target, u, cc, default_omega());
  std::vector<double> levels;
  for (double v : d.control.samples) {
    bool seen = false;
    for (double l : levels) seen = seen || l == v;
    if (!seen) levels.push_back(v);
  }
  CHECK(levels.size() == 2);
  const auto y = forward(d.control, u, cc);
  CHECK(normalized_correlation(y, target.samples) >= 0.999);
  CHECK(*std::max_element(d.magnitude.samples.begin(), d.magnitude.samples.end()) == doctest::Approx(r.hi));
  CHECK(*std::min_element(d.magnitude.samples.begin(), d.magnitude.samples.end()) ==
        doctest::Approx(r.lo + 0.01 * r.span()));

  WaveformSpec sinc;
  sinc.kind = WaveformKind::sinc;
  sinc.frequency = 2e3;
  sinc.width = 2e-5;
  const auto ts = generate_waveform(sinc, 1000, fs, SignalUnit::dimensionless);
  const auto ds = design_single_input(ts, u, cc, default_omega());
  CHECK(normalized_correlation(forward(ds.control, u, cc), ts.samples) >= 0.999);

  const auto constant = make_signal(std::vector<double>(50, 3.0), fs);
  const auto dc = design_single_input(constant, u, cc, default_omega());
  const double mid = 0.5 * (r.lo + 0.01 * r.span() + r.hi);
  for (double v : dc.control.samples) {
    CHECK(v == doctest::Approx(inverse_magnitude_map(u, mid, default_omega())).epsilon(1e-12));
  }
}

TEST_CASE("single-input design through an RLC circuit") {
  UnitModel u;
  const double fs = 1e6;
  const auto cc = rlc_lowpass(fs, 100e3, 0.7, 0.0, 20e3);
  WaveformSpec s;
  s.kind = WaveformKind::sine;
  s.frequency = 5e3;
  const auto target = generate_waveform(s, 2000, fs, SignalUnit::dimensionless);
  SingleInputOptions opts;
  opts.margin = 0.05;
  const auto d = design_single_input(target, u, cc, default_omega(), opts);
  // Away from the record edges the circuit reproduces the designed bias.
  const auto v = apply_response_held(cc, d.control);
  double err = 0.0;
  for (std::size_t n = 200; n < 1800; ++n) err = std::max(err, std::abs(v.samples[n] - d.diode_voltage.samples[n]));
  CHECK(err < 1e-3);
  const auto y = forward(d.control, u, cc);
  std::vector<double> ys(y.begin() + 200, y.end() - 200);
  std::vector<double> ts(target.samples.begin() + 200, target.samples.end() - 200);
  CHECK(normalized_correlation(ys, ts) >= 0.999);

  WaveformSpec wide;
  wide.kind = WaveformKind::sine;
  wide.frequency = 450e3;
  const auto too_fast = generate_waveform(wide, 2000, fs, SignalUnit::dimensionless);
  const auto narrow = rlc_lowpass(fs, 5e3, 0.7, 0.0, 1e3);
  try {
    design_single_input(too_fast, u, narrow, default_omega());
    FAIL("expected FeasibilityError");
  } catch (const FeasibilityError& e) {
    CHECK(e.band_hi_hz() < 450e3);
  }
}

TEST_CASE("multi-input design") {
  UnitModel u;
  const double fs = 1e6;
  const auto cc = identity_circuit(fs, 0.0, 4e5);
  const auto plan = StftPlan::hamming(100, 100, fs);  // 10 kHz bins, frames tile the target
  std::vector<double> x(2000), c1(2000), c2(2000);
  for (std::size_t n = 0; n < x.size(); ++n) {
    c1[n] = std::sin(2.0 * kPiD * 20e3 * n / fs);
    c2[n] = 0.7 * std::cos(2.0 * kPiD * 50e3 * n / fs);
    x[n] = c1[n] + c2[n];
  }
  const auto target = make_signal(x, fs);
  BandAssignment bands{{{1, 2, 3, 97, 98, 99}, {4, 5, 6, 94, 95, 96}}};
  const auto d = design_multi_input(target, bands, plan, u, std::span(&cc, 1), default_omega());
  REQUIRE(d.inputs.size() == 2);
  const auto full = istft(d.spectrogram);
  for (std::size_t n = 0; n < 2000; ++n) {
    CHECK(std::abs(d.components[0].samples[n] + d.components[1].samples[n] - full.samples[n]) < 1e-9);
    CHECK(std::abs(d.components[0].samples[n] - c1[n]) < 1e-9);
  }

  // Forward-simulate both inputs on two unit groups; the ac sum follows the target.
  Codebook cb{{1, 1}};
  Wiring wiring{{0, 1}, 2};
  std::vector<SampledSignal> in{d.inputs[0].control, d.inputs[1].control};
  const auto f = waveform_factor(cb, wiring, u, cc, in, default_omega());
  const auto y = received_signal(f, cb, LinkConfig{});
  std::vector<double> expect(2000);
  for (std::size_t n = 0; n < 2000; ++n) {
    expect[n] = d.inputs[0].scale * d.components[0].samples[n] + d.inputs[1].scale * d.components[1].samples[n];
  }
  CHECK(normalized_correlation(y.samples, expect) >= 0.999);
  CHECK(normalized_correlation(y.samples, x) >= 0.98);

  // K = 1 with every bin is the single-input design of the resynthesised target.
  std::vector<std::size_t> all(100);
  for (std::size_t b = 0; b < 100; ++b) all[b] = b;
  BandAssignment one{{all}};
  const auto d1 = design_multi_input(target, one, plan, u, std::span(&cc, 1), default_omega());
  const auto single = design_single_input(d1.components[0], u, cc, default_omega());
  CHECK(d1.inputs[0].control.samples == single.control.samples);

  BandAssignment partial{{{1, 2, 3, 97, 98, 99}}};
  CHECK_THROWS_AS(design_multi_input(target, partial, plan, u, std::span(&cc, 1), default_omega()),
                  ConfigError);
  BandAssignment overlap{{{1, 2, 3}, {3, 4}}};
  CHECK_THROWS_AS(design_multi_input(target, overlap, plan, u, std::span(&cc, 1), default_omega()),
                  ConfigError);
}

TEST_CASE("image rows and symmetry") {
  CHECK(image_row_to_bin(32, 64) == 0);
  CHECK(image_row_to_bin(0, 64) == 32);
  CHECK(image_row_to_bin(31, 64) == 1);
  CHECK(image_row_to_bin(33, 64) == 63);
  for (std::size_t r = 0; r < 64; ++r) {
    CHECK(bin_to_image_row(image_row_to_bin(r, 64), 64) == r);
    CHECK(image_row_to_bin(64 - r == 64 ? 0 : 64 - r, 64) == mirror_bin(image_row_to_bin(r, 64), 64));
  }
  RealMatrix img(8, 3, 0.0);
  img(2, 1) = 1.0;
  CHECK_FALSE(symmetrize_image(img));
  CHECK(img(2, 1) == 0.5);
  CHECK(img(6, 1) == 0.5);
  CHECK(symmetrize_image(img));
}

TEST_CASE("image targets") {
  UnitModel u;
  const double fs = 1e6;
  const auto cc = identity_circuit(fs, 0.0, 4e5);
  const auto plan = StftPlan::hamming(32, 32, fs);

  RealMatrix black(32, 10, 0.0);
  const auto d0 = image_to_control(black, plan, u, cc, default_omega());
  for (double v : d0.design.control.samples) CHECK(v == d0.design.control.samples[0]);

  // One bright row pair -> a sustained tone at that bin.
  RealMatrix row(32, 10, 0.0);
  const std::size_t r = 12;  // bin 4
  for (std::size_t c = 0; c < 10; ++c) row(r, c) = row(32 - r, c) = 1.0;
  Warnings w;
  const auto d1 = image_to_control(row, plan, u, cc, default_omega(), &w);
  CHECK(w.empty());
  const auto spec = amplitude_spectrum(d1.waveform);
  const auto peaks = spectral_peaks(spec, 30.0);
  REQUIRE(!peaks.empty());
  CHECK(spec.freq_hz[peaks[0]] == doctest::Approx(4.0 * fs / 32.0));

  RealMatrix lopsided(32, 4, 0.0);
  lopsided(5, 2) = 1.0;
  Warnings w2;
  image_to_control(lopsided, plan, u, cc, default_omega(), &w2);
  CHECK(w2.size() == 1);

  RealMatrix wrong(30, 4, 0.0);
  CHECK_THROWS_AS(image_to_control(wrong, plan, u, cc, default_omega()), ConfigError);
}

TEST_CASE("synthesis is deterministic") {
  UnitModel u;
  const auto cc = rlc_lowpass(1e6, 100e3, 0.7, 0.0, 20e3);
  WaveformSpec s;
  s.kind = WaveformKind::gauss_pulse;
  s.frequency = 2e3;
  s.width = 4e-5;
  const auto t = generate_waveform(s, 1000, 1e6, SignalUnit::dimensionless);
  SingleInputOptions opts;
  opts.check_bandwidth = false;
  const auto a = design_single_input(t, u, cc, default_omega(), opts);
  const auto b = design_single_input(t, u, cc, default_omega(), opts);
  CHECK(a.control.samples == b.control.samples);
}
