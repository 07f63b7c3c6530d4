#pragma once

// Planar-array scattering: steering vectors, beamforming/waveform factors,
// far-field beam patterns and the time-domain scattered envelope of an
// N x M surface lit by a near-field feed or a plane wave.

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "awg/control_circuit.hpp"
#include "awg/diode_unit.hpp"
#include "awg/errors.hpp"
#include "awg/signal.hpp"

namespace awg {

enum class Incidence { spherical, plane };

using Vec3 = std::array<double, 3>;

// Units sit in the z = 0 plane centred on the origin; column m runs along x
// and row n along y. Unit k = n * cols + m (row-major).
struct ArrayScene {
  std::size_t rows = 1;
  std::size_t cols = 1;
  double spacing = kSpeedOfLight / kDefaultCarrierHz / 2.0;  // m
  Vec3 feed_pos{0.0, 0.0, 1.0};                              // m
  double carrier_freq = kDefaultCarrierHz;                   // Hz
  Incidence incidence = Incidence::spherical;
  // Plane mode: direction from the array towards the source.
  double plane_theta = 0.0;
  double plane_phi = 0.0;
  UnitModel unit;

  void validate() const;
  std::size_t unit_count() const { return rows * cols; }
  double omega() const { return 2.0 * kPi * carrier_freq; }
  Vec3 position(std::size_t k) const;
};

struct Codebook {
  std::vector<std::uint8_t> bits;  // 1 = ON

  std::size_t size() const { return bits.size(); }
  std::size_t on_count() const;
};

// input_of_unit[k] is the 0-based DAC index feeding unit k.
struct Wiring {
  std::vector<std::size_t> input_of_unit;
  std::size_t num_inputs = 1;

  void validate(std::size_t units) const;
  static Wiring single(std::size_t units);
};

Vec3 direction(double theta, double phi);

// exp(j w_c tau_i) per unit: |r_k - r0| / c in spherical mode, -u . r_k / c
// for a plane wave arriving from u. Throws GeometryError when the feed sits
// on a unit.
std::vector<std::complex<double>> steering_incident(const ArrayScene& scene);

// exp(j w_c a(theta, phi) . r_k / c). Requires 0 <= theta <= pi/2.
std::vector<std::complex<double>> steering_outgoing(const ArrayScene& scene, double theta,
                                                    double phi);

// 1 / |r_k - r0| (spherical) or 1 (plane).
std::vector<double> incident_amplitude(const ArrayScene& scene);

// psi_k = phi_on for ON units (plus jitter(v_bias) when a bias is given),
// phi_off otherwise.
std::vector<double> beamforming_phases(const Codebook& codebook, const UnitModel& unit,
                                       std::optional<double> on_bias = std::nullopt);

// exp(j psi_k).
std::vector<std::complex<double>> beamforming_factor(const Codebook& codebook,
                                                     const UnitModel& unit,
                                                     std::optional<double> on_bias = std::nullopt);

std::vector<std::complex<double>> pack_phases(std::span<const double> phases);

// Per-unit magnitude traces A_k(t), row-major units x samples.
struct WaveformFactor {
  std::size_t units = 0;
  std::size_t samples = 0;
  double sample_rate = 1.0;
  std::vector<double> values;

  std::span<const double> unit(std::size_t k) const {
    return {values.data() + k * samples, samples};
  }
  std::span<double> unit(std::size_t k) { return {values.data() + k * samples, samples}; }
};

// A_k = L{(h_cc * x_wiring(k))(t)} on ON units, alpha on OFF units. Throws
// ModulationUnderflowError when a driving input dips below v_forward.
WaveformFactor waveform_factor(const Codebook& codebook, const Wiring& wiring,
                               const UnitModel& unit, std::span<const ControlCircuitModel> cc,
                               std::span<const SampledSignal> inputs, double omega);

WaveformFactor waveform_factor(const Codebook& codebook, const Wiring& wiring,
                               const UnitModel& unit, const ControlCircuitModel& cc,
                               std::span<const SampledSignal> inputs, double omega);

// Constant-alpha factor for an input-free (all-OFF) run of `samples` samples.
WaveformFactor off_waveform_factor(const Codebook& codebook, const UnitModel& unit,
                                   std::size_t samples, double sample_rate);

struct AngleGrid {
  std::vector<double> theta;  // rad
  std::vector<double> phi;    // rad
  double d_theta = 1.0;
  double d_phi = 1.0;

  std::size_t size() const { return theta.size() * phi.size(); }

  // theta in [0, 90] deg inclusive, phi in [0, 360) deg.
  static AngleGrid hemisphere(double step_deg = 1.0);
  // theta in [0, 90] deg at one phi; d_phi = 1 so the grid integral is a
  // plain theta integral.
  static AngleGrid theta_cut(double phi, double step_deg = 1.0);
};

enum class PatternForm {
  coherent,    // |sum_k E_k|^2
  incoherent,  // sum_k |E_k|^2, the literal E^H E reading; direction independent
};

struct BeamPattern {
  AngleGrid grid;
  std::vector<double> values;  // theta-major: values[it * phi.size() + ip]
  bool normalized = false;

  double at(std::size_t it, std::size_t ip) const { return values[it * grid.phi.size() + ip]; }
  std::size_t argmax() const;
  double integral() const;
};

// Pattern from an explicit packed beamforming factor (one exp(j psi) per
// unit). Normalised so the rectangle-rule grid integral is 1 unless the
// pattern is identically zero.
BeamPattern beam_pattern(const ArrayScene& scene, std::span<const std::complex<double>> psi,
                         const AngleGrid& grid, PatternForm form = PatternForm::coherent);

struct PatternOptions {
  std::optional<double> on_bias;  // evaluate ON phases at this diode voltage
  PatternForm form = PatternForm::coherent;
};

BeamPattern beam_pattern(const ArrayScene& scene, const Codebook& codebook, const AngleGrid& grid,
                         const PatternOptions& options = {});

// 1-bit codebook steering towards (theta, phi): each unit picks the state
// whose phase is closest to the ideal compensating phase, ties going ON.
Codebook design_codebook(const ArrayScene& scene, double theta, double phi);

// (1/r) e^T(k) Psi A(t) e(r0) E_i(t), sampled per time step.
ComplexSignal scattered_field(const ArrayScene& scene, const Codebook& codebook,
                              const WaveformFactor& factor, double theta, double phi,
                              double range_r, const ComplexSignal& incident,
                              Warnings* warnings = nullptr);

ComplexSignal scattered_field(const ArrayScene& scene, const Codebook& codebook,
                              const Wiring& wiring, std::span<const ControlCircuitModel> cc,
                              std::span<const SampledSignal> inputs, double theta, double phi,
                              double range_r, const ComplexSignal& incident,
                              Warnings* warnings = nullptr);

// Unit-amplitude monochromatic carrier envelope.
ComplexSignal constant_incident(std::size_t samples, double sample_rate);

}  // namespace awg
