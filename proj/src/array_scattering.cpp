#include "awg/array_scattering.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "awg/kernels.hpp"

namespace awg {

namespace {

double norm3(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

double wrap_phase(double x) {
  double r = std::remainder(x, 2.0 * kPi);
  return r;
}

// Per-unit coefficient exp(j psi_k) w_k exp(j w tau_i), the direction
// independent part of every pattern and field evaluation.
std::vector<std::complex<double>> unit_coefficients(const ArrayScene& scene,
                                                    std::span<const std::complex<double>> psi) {
  const auto inc = steering_incident(scene);
  const auto amp = incident_amplitude(scene);
  std::vector<std::complex<double>> c(scene.unit_count());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = psi[k] * amp[k] * inc[k];
  return c;
}

}  // namespace

void ArrayScene::validate() const {
  if (rows < 1 || cols < 1) throw ConfigError("rows and cols must be >= 1", "scene.rows/cols");
  if (!(spacing > 0.0)) throw ConfigError("must be > 0", "scene.spacing");
  if (!(carrier_freq > 0.0)) throw ConfigError("must be > 0", "scene.carrier_freq");
  if (incidence == Incidence::spherical && feed_pos[2] == 0.0) {
    throw ConfigError("spherical feed must not lie in the array plane", "scene.feed_pos");
  }
  unit.validate();
}

Vec3 ArrayScene::position(std::size_t k) const {
  const std::size_t n = k / cols;
  const std::size_t m = k % cols;
  const double x = (static_cast<double>(m) - 0.5 * static_cast<double>(cols - 1)) * spacing;
  const double y = (static_cast<double>(n) - 0.5 * static_cast<double>(rows - 1)) * spacing;
  return {x, y, 0.0};
}

std::size_t Codebook::on_count() const {
  return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

void Wiring::validate(std::size_t units) const {
  if (num_inputs < 1) throw ConfigError("num_inputs must be >= 1", "wiring.num_inputs");
  if (input_of_unit.size() != units) {
    throw ConfigError("one entry per unit required", "wiring.input_of_unit");
  }
  for (std::size_t j : input_of_unit) {
    if (j >= num_inputs) throw ConfigError("input index out of range", "wiring.input_of_unit");
  }
}

Wiring Wiring::single(std::size_t units) { return {std::vector<std::size_t>(units, 0), 1}; }

Vec3 direction(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

std::vector<std::complex<double>> steering_incident(const ArrayScene& scene) {
  const double w = scene.omega();
  std::vector<std::complex<double>> e(scene.unit_count());
  if (scene.incidence == Incidence::plane) {
    const Vec3 u = direction(scene.plane_theta, scene.plane_phi);
    for (std::size_t k = 0; k < e.size(); ++k) {
      const Vec3 r = scene.position(k);
      const double tau = -(u[0] * r[0] + u[1] * r[1] + u[2] * r[2]) / kSpeedOfLight;
      e[k] = std::polar(1.0, w * tau);
    }
    return e;
  }
  for (std::size_t k = 0; k < e.size(); ++k) {
    const Vec3 r = scene.position(k);
    const double d =
        norm3({r[0] - scene.feed_pos[0], r[1] - scene.feed_pos[1], r[2] - scene.feed_pos[2]});
    if (d == 0.0) {
      std::ostringstream msg;
      msg << "feed coincides with unit " << k;
      throw GeometryError(msg.str());
    }
    e[k] = std::polar(1.0, w * d / kSpeedOfLight);
  }
  return e;
}

std::vector<std::complex<double>> steering_outgoing(const ArrayScene& scene, double theta,
                                                    double phi) {
  if (!(theta >= 0.0 && theta <= kPi / 2.0)) {
    throw PreconditionError("steering_outgoing: theta must lie in [0, pi/2]");
  }
  const Vec3 a = direction(theta, phi);
  const double w = scene.omega();
  std::vector<std::complex<double>> e(scene.unit_count());
  for (std::size_t k = 0; k < e.size(); ++k) {
    const Vec3 r = scene.position(k);
    e[k] = std::polar(1.0, w * (a[0] * r[0] + a[1] * r[1] + a[2] * r[2]) / kSpeedOfLight);
  }
  return e;
}

std::vector<double> incident_amplitude(const ArrayScene& scene) {
  std::vector<double> w(scene.unit_count(), 1.0);
  if (scene.incidence == Incidence::plane) return w;
  for (std::size_t k = 0; k < w.size(); ++k) {
    const Vec3 r = scene.position(k);
    const double d =
        norm3({r[0] - scene.feed_pos[0], r[1] - scene.feed_pos[1], r[2] - scene.feed_pos[2]});
    if (d == 0.0) throw GeometryError("feed coincides with a unit");
    w[k] = 1.0 / d;
  }
  return w;
}

std::vector<double> beamforming_phases(const Codebook& codebook, const UnitModel& unit,
                                       std::optional<double> on_bias) {
  const double on = unit.phi_on + (on_bias ? unit.jitter(*on_bias) : 0.0);
  std::vector<double> psi(codebook.size());
  for (std::size_t k = 0; k < psi.size(); ++k) psi[k] = codebook.bits[k] ? on : unit.phi_off;
  return psi;
}

std::vector<std::complex<double>> pack_phases(std::span<const double> phases) {
  std::vector<std::complex<double>> out(phases.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = std::polar(1.0, phases[k]);
  return out;
}

std::vector<std::complex<double>> beamforming_factor(const Codebook& codebook,
                                                     const UnitModel& unit,
                                                     std::optional<double> on_bias) {
  return pack_phases(beamforming_phases(codebook, unit, on_bias));
}

WaveformFactor waveform_factor(const Codebook& codebook, const Wiring& wiring,
                               const UnitModel& unit, std::span<const ControlCircuitModel> cc,
                               std::span<const SampledSignal> inputs, double omega) {
  const std::size_t units = codebook.size();
  wiring.validate(units);
  if (inputs.size() != wiring.num_inputs) {
    throw ConfigError("expected one input signal per DAC", "inputs");
  }
  if (cc.size() != 1 && cc.size() != wiring.num_inputs) {
    throw ConfigError("expected one control circuit, or one per input", "control_circuit");
  }
  const std::size_t samples = inputs.empty() ? 0 : inputs[0].size();
  const double rate = inputs.empty() ? 1.0 : inputs[0].sample_rate;
  for (const auto& in : inputs) {
    if (in.size() != samples) throw ConfigError("inputs differ in length", "inputs");
    if (in.sample_rate != rate) throw ConfigError("inputs differ in sample rate", "inputs");
  }

  std::vector<bool> used(wiring.num_inputs, false);
  for (std::size_t k = 0; k < units; ++k) {
    if (codebook.bits[k]) used[wiring.input_of_unit[k]] = true;
  }

  // One magnitude trace per driving input; units on the same input share it.
  std::vector<std::vector<double>> traces(wiring.num_inputs);
  for (std::size_t j = 0; j < wiring.num_inputs; ++j) {
    if (!used[j]) continue;
    const ControlCircuitModel& circuit = cc.size() == 1 ? cc[0] : cc[j];
    const SampledSignal vab = apply_response_held(circuit, inputs[j]);
    traces[j].resize(samples);
    for (std::size_t t = 0; t < samples; ++t) {
      if (!(vab.samples[t] >= unit.diode.v_forward)) {
        std::ostringstream msg;
        msg << "input " << j << " drives an ON unit to " << vab.samples[t]
            << " V at sample " << t << ", below v_forward=" << unit.diode.v_forward << " V";
        throw ModulationUnderflowError(msg.str(), j, t);
      }
      traces[j][t] = magnitude_map(unit, vab.samples[t], omega);
    }
  }

  WaveformFactor f;
  f.units = units;
  f.samples = samples;
  f.sample_rate = rate;
  f.values.resize(units * samples);
  for (std::size_t k = 0; k < units; ++k) {
    auto row = f.unit(k);
    if (codebook.bits[k]) {
      const auto& tr = traces[wiring.input_of_unit[k]];
      std::copy(tr.begin(), tr.end(), row.begin());
    } else {
      std::fill(row.begin(), row.end(), unit.alpha);
    }
  }
  return f;
}

WaveformFactor waveform_factor(const Codebook& codebook, const Wiring& wiring,
                               const UnitModel& unit, const ControlCircuitModel& cc,
                               std::span<const SampledSignal> inputs, double omega) {
  return waveform_factor(codebook, wiring, unit, std::span<const ControlCircuitModel>(&cc, 1),
                         inputs, omega);
}

WaveformFactor off_waveform_factor(const Codebook& codebook, const UnitModel& unit,
                                   std::size_t samples, double sample_rate) {
  if (codebook.on_count() != 0) {
    throw ConfigError("ON units need an input signal", "inputs");
  }
  WaveformFactor f;
  f.units = codebook.size();
  f.samples = samples;
  f.sample_rate = sample_rate;
  f.values.assign(f.units * samples, unit.alpha);
  return f;
}

AngleGrid AngleGrid::hemisphere(double step_deg) {
  if (!(step_deg > 0.0)) throw ConfigError("grid step must be > 0", "grid.step_deg");
  AngleGrid g;
  const auto nt = static_cast<std::size_t>(std::floor(90.0 / step_deg + 1e-9)) + 1;
  const auto np = static_cast<std::size_t>(std::ceil(360.0 / step_deg - 1e-9));
  for (std::size_t i = 0; i < nt; ++i) g.theta.push_back(deg2rad(step_deg * static_cast<double>(i)));
  for (std::size_t i = 0; i < np; ++i) g.phi.push_back(deg2rad(step_deg * static_cast<double>(i)));
  g.d_theta = deg2rad(step_deg);
  g.d_phi = deg2rad(step_deg);
  return g;
}

AngleGrid AngleGrid::theta_cut(double phi, double step_deg) {
  if (!(step_deg > 0.0)) throw ConfigError("grid step must be > 0", "grid.step_deg");
  AngleGrid g;
  const auto nt = static_cast<std::size_t>(std::floor(90.0 / step_deg + 1e-9)) + 1;
  for (std::size_t i = 0; i < nt; ++i) g.theta.push_back(deg2rad(step_deg * static_cast<double>(i)));
  g.phi = {phi};
  g.d_theta = deg2rad(step_deg);
  g.d_phi = 1.0;
  return g;
}

std::size_t BeamPattern::argmax() const {
  return static_cast<std::size_t>(std::max_element(values.begin(), values.end()) -
                                  values.begin());
}

double BeamPattern::integral() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s * grid.d_theta * grid.d_phi;
}

BeamPattern beam_pattern(const ArrayScene& scene, std::span<const std::complex<double>> psi,
                         const AngleGrid& grid, PatternForm form) {
  scene.validate();
  if (psi.size() != scene.unit_count()) {
    throw ConfigError("beamforming factor length must equal rows*cols", "codebook");
  }
  if (grid.size() == 0) throw ConfigError("angle grid is empty", "grid");

  BeamPattern out;
  out.grid = grid;
  out.values.assign(grid.size(), 0.0);
  const auto coef = unit_coefficients(scene, psi);

  if (form == PatternForm::incoherent) {
    double s = 0.0;
    for (const auto& c : coef) s += std::norm(c);
    std::fill(out.values.begin(), out.values.end(), s);
  } else {
    // exp(j k a.r) separates into a column factor exp(j k ax x_m) and a row
    // factor exp(j k ay y_n), so each direction is a row of complex dot
    // products over the columns.
    const std::size_t rows = scene.rows;
    const std::size_t cols = scene.cols;
    std::vector<double> cre(coef.size());
    std::vector<double> cim(coef.size());
    for (std::size_t k = 0; k < coef.size(); ++k) {
      cre[k] = coef[k].real();
      cim[k] = coef[k].imag();
    }
    std::vector<double> xs(cols);
    std::vector<double> ys(rows);
    for (std::size_t m = 0; m < cols; ++m) xs[m] = scene.position(m)[0];
    for (std::size_t n = 0; n < rows; ++n) ys[n] = scene.position(n * cols)[1];
    const double wave = scene.omega() / kSpeedOfLight;
    const auto& k = kernels::active();
    std::vector<double> ure(cols);
    std::vector<double> uim(cols);
    for (std::size_t it = 0; it < grid.theta.size(); ++it) {
      for (std::size_t ip = 0; ip < grid.phi.size(); ++ip) {
        const Vec3 a = direction(grid.theta[it], grid.phi[ip]);
        for (std::size_t m = 0; m < cols; ++m) {
          const double p = wave * a[0] * xs[m];
          ure[m] = std::cos(p);
          uim[m] = std::sin(p);
        }
        std::complex<double> total = 0.0;
        for (std::size_t n = 0; n < rows; ++n) {
          double sr = 0.0;
          double si = 0.0;
          k.cdot(cre.data() + n * cols, cim.data() + n * cols, ure.data(), uim.data(), cols, &sr,
                 &si);
          total += std::complex<double>(sr, si) * std::polar(1.0, wave * a[1] * ys[n]);
        }
        out.values[it * grid.phi.size() + ip] = std::norm(total);
      }
    }
  }

  double beta = 0.0;
  for (double v : out.values) beta += v;
  beta *= grid.d_theta * grid.d_phi;
  if (beta > 0.0) {
    for (double& v : out.values) v /= beta;
    out.normalized = true;
  }
  return out;
}

BeamPattern beam_pattern(const ArrayScene& scene, const Codebook& codebook, const AngleGrid& grid,
                         const PatternOptions& options) {
  const auto psi = beamforming_factor(codebook, scene.unit, options.on_bias);
  return beam_pattern(scene, psi, grid, options.form);
}

Codebook design_codebook(const ArrayScene& scene, double theta, double phi) {
  scene.validate();
  const auto inc = steering_incident(scene);
  const auto out = steering_outgoing(scene, theta, phi);
  Codebook cb;
  cb.bits.resize(scene.unit_count());
  for (std::size_t k = 0; k < cb.bits.size(); ++k) {
    const double ideal = -std::arg(inc[k] * out[k]);
    const double d_on = std::abs(wrap_phase(ideal - scene.unit.phi_on));
    const double d_off = std::abs(wrap_phase(ideal - scene.unit.phi_off));
    cb.bits[k] = d_on <= d_off ? 1 : 0;
  }
  return cb;
}

ComplexSignal constant_incident(std::size_t samples, double sample_rate) {
  ComplexSignal s;
  s.samples.assign(samples, {1.0, 0.0});
  s.sample_rate = sample_rate;
  return s;
}

ComplexSignal scattered_field(const ArrayScene& scene, const Codebook& codebook,
                              const WaveformFactor& factor, double theta, double phi,
                              double range_r, const ComplexSignal& incident,
                              Warnings* warnings) {
  scene.validate();
  if (codebook.size() != scene.unit_count() || factor.units != scene.unit_count()) {
    throw ConfigError("codebook and waveform factor must cover every unit", "codebook");
  }
  if (incident.size() != factor.samples) {
    throw ConfigError("incident envelope length must match the waveform factor", "incident");
  }
  if (!(range_r > 0.0)) throw ConfigError("range must be > 0", "range_r");

  // Narrowband and small-aperture conditions behind the separable model.
  const double f_max = factor.sample_rate / 2.0;
  const double diag = std::hypot(static_cast<double>(scene.cols - 1) * scene.spacing,
                                 static_cast<double>(scene.rows - 1) * scene.spacing);
  if (diag > 0.1 * kSpeedOfLight / f_max) {
    warn(warnings, "aperture is not small against the shortest baseband wavelength");
  }
  if (f_max > 0.01 * scene.carrier_freq) {
    warn(warnings, "baseband bandwidth is not small against the carrier");
  }

  const auto psi = beamforming_factor(codebook, scene.unit);
  const auto coef = unit_coefficients(scene, psi);
  const auto out = steering_outgoing(scene, theta, phi);

  const std::size_t n = factor.samples;
  std::vector<double> re(n, 0.0);
  std::vector<double> im(n, 0.0);
  const auto& k = kernels::active();
  for (std::size_t u = 0; u < factor.units; ++u) {
    const std::complex<double> c = out[u] * coef[u];
    k.caxpy(c.real(), c.imag(), factor.unit(u).data(), re.data(), im.data(), n);
  }

  ComplexSignal field;
  field.sample_rate = factor.sample_rate;
  field.samples.resize(n);
  const double inv_r = 1.0 / range_r;
  for (std::size_t t = 0; t < n; ++t) {
    field.samples[t] = std::complex<double>(re[t], im[t]) * incident.samples[t] * inv_r;
  }
  return field;
}

ComplexSignal scattered_field(const ArrayScene& scene, const Codebook& codebook,
                              const Wiring& wiring, std::span<const ControlCircuitModel> cc,
                              std::span<const SampledSignal> inputs, double theta, double phi,
                              double range_r, const ComplexSignal& incident,
                              Warnings* warnings) {
  const auto factor = waveform_factor(codebook, wiring, scene.unit, cc, inputs, scene.omega());
  return scattered_field(scene, codebook, factor, theta, phi, range_r, incident, warnings);
}

}  // namespace awg
