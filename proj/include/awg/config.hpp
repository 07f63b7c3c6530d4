#pragma once

// Scenario configuration: a JSON document describing the surface, codebook,
// wiring, link, control circuit, drive inputs and an optional synthesis
// task. Angles are given in degrees in JSON and held in radians here.
// Relative file paths resolve against the config file's directory.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "awg/array_scattering.hpp"
#include "awg/link_model.hpp"
#include "awg/waveforms.hpp"

namespace awg {

using Json = nlohmann::ordered_json;

enum class CircuitKind { identity, rlc, taps };

struct CircuitSpec {
  CircuitKind kind = CircuitKind::identity;
  double cutoff_hz = 200e3;
  double damping = 0.7;
  std::filesystem::path taps_path;
  double passband_lo_hz = 0.0;
  double passband_hi_hz = 0.0;  // 0 = up to Nyquist
};

enum class GridKind { theta_cut, hemisphere };

struct PatternSpec {
  GridKind grid = GridKind::theta_cut;
  double step_deg = 1.0;
  double phi = 0.0;  // rad, theta_cut only
  std::optional<double> on_bias;
  PatternForm form = PatternForm::coherent;
};

enum class ReceiverModel { link, field };

// `link` sums unit magnitudes (y = G_b sum A_k + n); `field` coherently
// detects the scattered envelope at an observer, keeping geometry effects.
struct ReceiverSpec {
  ReceiverModel model = ReceiverModel::link;
  double theta = 0.0;  // rad
  double phi = 0.0;    // rad
  double range_m = 10.0;
};

enum class SynthesisTask { none, single, multi, image };

struct SynthesisSpec {
  SynthesisTask task = SynthesisTask::none;
  WaveformSpec target;
  std::vector<std::vector<std::size_t>> bands;
  std::size_t dft_len = 256;
  std::size_t hop = 128;
  std::filesystem::path image_path;
  double margin = 0.01;
  double reg_eps = 1e-6;
  bool check_bandwidth = true;
};

struct UnitRcSweep {
  double v_min = 0.0;
  double v_max = 0.0;  // 0 = unit v_ref
  std::size_t points = 241;
};

struct Scenario {
  std::string name = "scenario";
  ArrayScene scene;
  std::optional<Codebook> codebook;
  std::optional<std::pair<double, double>> target_direction;  // (theta, phi) rad
  Wiring wiring;
  LinkConfig link;
  CircuitSpec circuit;
  double sample_rate = 1e6;
  std::size_t samples = 2000;
  std::vector<WaveformSpec> inputs;
  PatternSpec pattern;
  ReceiverSpec receiver;
  SynthesisSpec synthesis;
  UnitRcSweep sweep;
  Json variants = Json::object();

  // Exactly one of codebook / target_direction is set.
  Codebook resolved_codebook() const;
};

const char* task_name(SynthesisTask task);

// Throws ConfigError whose field() is the dotted JSON path of the offender.
Scenario scenario_from_json(const Json& doc, const std::filesystem::path& base_dir);
// Defaults-resolved form; file paths are written absolute.
Json scenario_to_json(const Scenario& s);

// Reads and parses a config file. ConfigError messages are prefixed with
// the file path.
Json read_json_file(const std::filesystem::path& path);
Scenario load_scenario(const std::filesystem::path& path);

// RFC 7386 merge patch.
Json merge_patch(const Json& target, const Json& patch);

ControlCircuitModel build_circuit(const CircuitSpec& spec, double sample_rate);

}  // namespace awg
