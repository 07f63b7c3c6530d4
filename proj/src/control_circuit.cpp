#include "awg/control_circuit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "awg/diode_unit.hpp"
#include "awg/errors.hpp"
#include "awg/fft.hpp"
#include "awg/kernels.hpp"

namespace awg {

void ControlCircuitModel::validate() const {
  if (taps.empty()) throw ConfigError("impulse response is empty", "control_circuit.taps");
  for (double t : taps) {
    if (!std::isfinite(t)) throw ConfigError("non-finite tap", "control_circuit.taps");
  }
  if (!(sample_rate > 0.0)) throw ConfigError("must be > 0", "control_circuit.sample_rate");
  if (!(sample_rate >= 2.0 * passband_hi)) {
    throw ConfigError("passband upper edge is above Nyquist",
                      "control_circuit.passband");
  }
  if (passband_lo < 0.0) throw ConfigError("must be >= 0", "control_circuit.passband");
  if (lead >= taps.size() && taps.size() > 0 && lead != 0) {
    throw ConfigError("lead must index into the tap list", "control_circuit.lead");
  }
}

std::complex<double> ControlCircuitModel::response(double freq_hz) const {
  std::complex<double> acc = 0.0;
  const double w = 2.0 * kPi * freq_hz / sample_rate;
  for (std::size_t m = 0; m < taps.size(); ++m) {
    const double t = static_cast<double>(m) - static_cast<double>(lead);
    acc += taps[m] * std::polar(1.0, -w * t);
  }
  return acc;
}

ControlCircuitModel identity_circuit(double sample_rate, double passband_lo, double passband_hi) {
  ControlCircuitModel cc;
  cc.taps = {1.0};
  cc.sample_rate = sample_rate;
  cc.passband_lo = passband_lo;
  cc.passband_hi = passband_hi;
  cc.validate();
  return cc;
}

ControlCircuitModel rlc_lowpass(double sample_rate, double cutoff_hz, double damping,
                                double passband_lo, double passband_hi) {
  if (!(cutoff_hz > 0.0) || !(cutoff_hz < sample_rate / 2.0)) {
    throw ConfigError("cutoff must lie in (0, fs/2)", "control_circuit.cutoff_hz");
  }
  if (!(damping > 0.0 && damping <= 1.0)) {
    throw ConfigError("damping must lie in (0, 1]", "control_circuit.damping");
  }
  const double wn = 2.0 * kPi * cutoff_hz;
  const double ts = 1.0 / sample_rate;
  const double decay = damping * wn;
  // envelope exp(-decay t) < 1e-12
  const auto n_taps = static_cast<std::size_t>(std::ceil(27.7 / (decay * ts))) + 1;
  std::vector<double> h(n_taps);
  if (damping < 1.0) {
    const double wd = wn * std::sqrt(1.0 - damping * damping);
    for (std::size_t n = 0; n < n_taps; ++n) {
      const double t = static_cast<double>(n) * ts;
      h[n] = wn * wn / wd * std::exp(-decay * t) * std::sin(wd * t);
    }
  } else {
    for (std::size_t n = 0; n < n_taps; ++n) {
      const double t = static_cast<double>(n) * ts;
      h[n] = wn * wn * t * std::exp(-wn * t);
    }
  }
  double sum = 0.0;
  for (double v : h) sum += v;
  for (double& v : h) v /= sum;

  ControlCircuitModel cc;
  cc.taps = std::move(h);
  cc.sample_rate = sample_rate;
  cc.passband_lo = passband_lo;
  cc.passband_hi = passband_hi;
  cc.validate();
  return cc;
}

std::vector<double> convolve_direct(std::span<const double> taps, std::size_t lead,
                                    std::span<const double> x) {
  const std::size_t n = x.size();
  const std::size_t m = taps.size();
  std::vector<double> y(n, 0.0);
  if (n == 0 || m == 0) return y;
  std::vector<double> rev(taps.rbegin(), taps.rend());
  // x padded with m - 1 zeros on each side. Every output is a full m-term
  // dot product, so the summation order depends only on the tap index and a
  // delayed input gives a bit-identical delayed output.
  std::vector<double> xp(n + 2 * (m - 1), 0.0);
  std::copy(x.begin(), x.end(), xp.begin() + static_cast<std::ptrdiff_t>(m - 1));
  const auto& k = kernels::active();
  for (std::size_t i = 0; i < n; ++i) {
    // taps[j] pairs with x[i + lead - j]; rev[0] = taps[m - 1].
    const std::size_t pos = i + lead;
    if (pos >= n + m - 1) continue;
    y[i] = k.dot(rev.data(), xp.data() + pos, m);
  }
  return y;
}

std::vector<double> convolve_fft(std::span<const double> taps, std::size_t lead,
                                 std::span<const double> x) {
  const std::size_t n = x.size();
  const std::size_t m = taps.size();
  std::vector<double> y(n, 0.0);
  if (n == 0 || m == 0) return y;
  const std::size_t full = n + m - 1;
  const std::size_t len = fft::next_pow2(full);
  auto a = fft::rfft(taps, len);
  const auto b = fft::rfft(x, len);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
  const auto c = fft::irfft(a, len);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t pos = i + lead;
    if (pos < full) y[i] = c[pos];
  }
  return y;
}

SampledSignal apply_response(const ControlCircuitModel& cc, const SampledSignal& v) {
  if (v.sample_rate != cc.sample_rate) {
    std::ostringstream msg;
    msg << "signal rate " << v.sample_rate << " Hz does not match control circuit rate "
        << cc.sample_rate << " Hz";
    throw ConfigError(msg.str(), "control_circuit.sample_rate");
  }
  SampledSignal out;
  out.sample_rate = v.sample_rate;
  out.unit = v.unit;
  const std::size_t m = cc.taps.size();
  if (m == 1 && cc.lead == 0) {
    out.samples = v.samples;
    if (cc.taps[0] != 1.0) {
      for (double& s : out.samples) s *= cc.taps[0];
    }
  } else if (m <= 64 || v.samples.size() <= 64) {
    out.samples = convolve_direct(cc.taps, cc.lead, v.samples);
  } else {
    out.samples = convolve_fft(cc.taps, cc.lead, v.samples);
  }
  return out;
}

SampledSignal apply_response_held(const ControlCircuitModel& cc, const SampledSignal& v) {
  const std::size_t m = cc.taps.size();
  if (v.samples.empty() || (m == 1 && cc.lead == 0)) return apply_response(cc, v);
  const std::size_t front = m - 1;
  const std::size_t back = cc.lead;
  SampledSignal padded;
  padded.sample_rate = v.sample_rate;
  padded.unit = v.unit;
  padded.samples.reserve(front + v.size() + back);
  padded.samples.assign(front, v.samples.front());
  padded.samples.insert(padded.samples.end(), v.samples.begin(), v.samples.end());
  padded.samples.insert(padded.samples.end(), back, v.samples.back());
  SampledSignal out = apply_response(cc, padded);
  out.samples.erase(out.samples.begin(), out.samples.begin() + static_cast<std::ptrdiff_t>(front));
  out.samples.resize(v.size());
  return out;
}

ControlCircuitModel inverse_filter(const ControlCircuitModel& cc, double reg_eps,
                                   std::size_t fft_len) {
  if (!(reg_eps > 0.0)) throw ConfigError("reg_eps must be > 0", "reg_eps");
  cc.validate();
  const std::size_t m = cc.taps.size();
  const std::size_t n = fft_len == 0 ? fft::next_pow2(std::max<std::size_t>(1024, 8 * m)) : fft_len;
  if (n < 2) throw ConfigError("fft_len must be >= 2", "fft_len");

  // With fft_len unset the grid doubles until the circular inverse has
  // decayed at its wrap-around point, so the taps are not time-aliased.
  constexpr std::size_t kMaxAutoLen = std::size_t{1} << 22;
  std::size_t len = n;
  std::vector<double> circ;
  for (;;) {
    const auto h = fft::rfft(cc.taps, len);
    double peak = 0.0;
    for (const auto& v : h) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) throw DegenerateFilterError("inverse_filter: impulse response is all zero");
    const double floor = reg_eps * peak * peak;
    std::vector<std::complex<double>> g(h.size());
    for (std::size_t k = 0; k < h.size(); ++k) g[k] = std::conj(h[k]) / (std::norm(h[k]) + floor);
    circ = fft::irfft(g, len);
    if (fft_len != 0 || len >= kMaxAutoLen) break;
    double gmax = 0.0;
    double tail = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
      gmax = std::max(gmax, std::abs(circ[i]));
      // the far tail: within len/8 of the half-way point
      const std::size_t d = i > len / 2 ? i - len / 2 : len / 2 - i;
      if (d <= len / 8) tail = std::max(tail, std::abs(circ[i]));
    }
    if (tail <= 1e-12 * gmax) break;
    len *= 2;
  }
  const std::size_t n_used = len;
  // Undo the forward lead (a lead of L in h is a delay of L in its inverse)
  // and centre the two-sided response.
  const std::size_t centre = n_used / 2;
  std::vector<double> taps(n_used);
  for (std::size_t i = 0; i < n_used; ++i) {
    const std::size_t src = (i + 2 * n_used - centre - (cc.lead % n_used)) % n_used;
    taps[i] = circ[src];
  }

  double gmax = 0.0;
  for (double t : taps) gmax = std::max(gmax, std::abs(t));
  const double cut = gmax * 1e-15;
  std::size_t first = 0;
  while (first < centre && std::abs(taps[first]) <= cut) ++first;
  std::size_t last = n_used - 1;
  while (last > centre && std::abs(taps[last]) <= cut) --last;

  ControlCircuitModel inv;
  inv.taps.assign(taps.begin() + static_cast<std::ptrdiff_t>(first),
                  taps.begin() + static_cast<std::ptrdiff_t>(last) + 1);
  inv.lead = centre - first;
  inv.sample_rate = cc.sample_rate;
  inv.passband_lo = cc.passband_lo;
  inv.passband_hi = cc.passband_hi;
  return inv;
}

Flatness flatness_metric(const ControlCircuitModel& cc) {
  if (!(cc.passband_hi > cc.passband_lo)) {
    throw ConfigError("passband is empty", "control_circuit.passband");
  }
  constexpr int kPoints = 1025;
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (int i = 0; i < kPoints; ++i) {
    const double f = cc.passband_lo + (cc.passband_hi - cc.passband_lo) * i / (kPoints - 1);
    const double mag = std::abs(cc.response(f));
    lo = std::min(lo, mag);
    hi = std::max(hi, mag);
  }
  return {20.0 * std::log10(hi) - 20.0 * std::log10(lo), 20.0 * std::log10(lo)};
}

double reliable_band_hz(const ControlCircuitModel& cc, double reg_eps) {
  const std::size_t n = fft::next_pow2(std::max<std::size_t>(4096, 8 * cc.taps.size()));
  const auto h = fft::rfft(cc.taps, n);
  double peak = 0.0;
  for (const auto& v : h) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return 0.0;
  const double threshold = 10.0 * std::sqrt(reg_eps) * peak;
  std::size_t k = 0;
  while (k < h.size() && std::abs(h[k]) >= threshold) ++k;
  if (k == h.size()) return cc.sample_rate / 2.0;
  if (k == 0) return 0.0;
  return static_cast<double>(k - 1) * cc.sample_rate / static_cast<double>(n);
}

}  // namespace awg
