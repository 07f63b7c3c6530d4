#include "awg/scenario.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include "awg/errors.hpp"
#include "awg/io.hpp"
#include "awg/waveform_synthesis.hpp"

namespace awg {

namespace fs = std::filesystem;

namespace {

// Collects written files so the manifest can hash them afterwards.
class ArtifactSet {
 public:
  explicit ArtifactSet(fs::path root) : root_(std::move(root)) { fs::create_directories(root_); }

  fs::path add(const std::string& rel) {
    names_.push_back(rel);
    return root_ / rel;
  }

  std::vector<Artifact> finish() const {
    std::vector<Artifact> out;
    for (const auto& n : names_) {
      const fs::path p = root_ / n;
      out.push_back({n, sha256_hex(p), fs::file_size(p)});
    }
    std::sort(out.begin(), out.end(),
              [](const Artifact& a, const Artifact& b) { return a.path < b.path; });
    return out;
  }

  const fs::path& root() const { return root_; }

 private:
  fs::path root_;
  std::vector<std::string> names_;
};

void write_json(const fs::path& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

void write_manifest(const fs::path& dir, const std::vector<Artifact>& files) {
  Json list = Json::array();
  for (const auto& a : files) {
    list.push_back({{"path", a.path}, {"sha256", a.sha256}, {"bytes", a.bytes}});
  }
  write_json(dir / "manifest.json", Json{{"files", list}});
}

AngleGrid make_grid(const PatternSpec& p) {
  return p.grid == GridKind::hemisphere ? AngleGrid::hemisphere(p.step_deg)
                                        : AngleGrid::theta_cut(p.phi, p.step_deg);
}

std::string control_name(std::size_t j) { return "control_" + std::to_string(j) + ".csv"; }

void add_noise(std::vector<double>& y, const LinkConfig& link) {
  if (link.noise_std <= 0.0) return;
  std::mt19937_64 rng(link.seed);
  std::normal_distribution<double> noise(0.0, link.noise_std);
  for (double& v : y) v += noise(rng);
}

Json peaks_json(const Spectrum& spec, double min_db) {
  Json peaks = Json::array();
  for (auto k : spectral_peaks(spec, min_db)) {
    peaks.push_back({{"freq_hz", spec.freq_hz[k]}, {"magnitude_db", spec.magnitude_db(k)}});
  }
  return peaks;
}

void write_unit_rc(const Scenario& s, ArtifactSet& art, Json& summary) {
  const UnitModel& u = s.scene.unit;
  const double omega = s.scene.omega();
  const fs::path path = art.add("unit_rc.csv");
  std::ofstream out(path, std::ios::binary);
  out << "voltage_v,magnitude,phase_deg,state_magnitude,state_phase_deg\n";
  double min_mag = 1e300;
  double min_v = 0.0;
  for (std::size_t i = 0; i < s.sweep.points; ++i) {
    const double v = s.sweep.v_min + (s.sweep.v_max - s.sweep.v_min) * static_cast<double>(i) /
                                         static_cast<double>(s.sweep.points - 1);
    const auto g = reflection_coefficient(u, v, omega);
    const RcState st = rc_state(u, v, omega);
    out << format_number(v) << ',' << format_number(std::abs(g)) << ','
        << format_number(rad2deg(std::arg(g))) << ',' << format_number(st.magnitude) << ','
        << format_number(rad2deg(st.phase)) << '\n';
    if (v >= u.diode.v_forward && st.magnitude < min_mag) {
      min_mag = st.magnitude;
      min_v = v;
    }
  }
  const MagnitudeRange range = magnitude_range(u, omega);
  summary["magnitude_range"] = {range.lo, range.hi};
  if (min_mag < 1e300) summary["min_on_magnitude"] = {{"voltage_v", min_v}, {"magnitude", min_mag}};
}

}  // namespace

const char* command_name(Command c) {
  switch (c) {
    case Command::unit_rc: return "unit-rc";
    case Command::beam_pattern: return "beam-pattern";
    case Command::simulate: return "simulate";
    case Command::synth_single: return "synth-single";
    case Command::synth_multi: return "synth-multi";
    case Command::synth_image: return "synth-image";
    case Command::run: return "run";
  }
  return "run";
}

std::string sha256_hex(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error("cannot read " + file.string());
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    EVP_DigestUpdate(ctx, buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  }
  return hex.str();
}

RunResult run_resolved(const Scenario& in_scenario, Command command, const fs::path& out_dir) {
  Scenario s = in_scenario;
  switch (command) {
    case Command::synth_single: s.synthesis.task = SynthesisTask::single; break;
    case Command::synth_multi: s.synthesis.task = SynthesisTask::multi; break;
    case Command::synth_image: s.synthesis.task = SynthesisTask::image; break;
    case Command::simulate: s.synthesis.task = SynthesisTask::none; break;
    default: break;
  }
  if (s.synthesis.task == SynthesisTask::image && s.synthesis.image_path.empty()) {
    throw ConfigError("image synthesis needs an image", "synthesis.image");
  }
  if (s.synthesis.task == SynthesisTask::multi && s.synthesis.bands.size() != s.wiring.num_inputs) {
    throw ConfigError("need one band per wired input", "synthesis.bands");
  }

  ArtifactSet art(out_dir);
  RunResult result;
  Json summary;
  summary["name"] = s.name;
  summary["command"] = command_name(command);
  write_json(art.add("effective_config.json"), scenario_to_json(s));

  if (command == Command::unit_rc) {
    write_unit_rc(s, art, summary);
  } else {
    const double omega = s.scene.omega();
    const double fs_hz = s.sample_rate;
    const UnitModel& unit = s.scene.unit;
    const Codebook codebook = s.resolved_codebook();
    summary["on_units"] = codebook.on_count();

    const BeamPattern pattern =
        beam_pattern(s.scene, codebook, make_grid(s.pattern), {s.pattern.on_bias, s.pattern.form});
    write_pattern_csv(art.add("pattern.csv"), pattern);
    const std::size_t best = pattern.argmax();
    const std::size_t nphi = pattern.grid.phi.size();
    summary["pattern_peak"] = {{"theta_deg", rad2deg(pattern.grid.theta[best / nphi])},
                               {"phi_deg", rad2deg(pattern.grid.phi[best % nphi])},
                               {"value", pattern.values[best]}};

    if (command != Command::beam_pattern) {
      const ControlCircuitModel cc = build_circuit(s.circuit, fs_hz);
      SingleInputOptions opts;
      opts.margin = s.synthesis.margin;
      opts.reg_eps = s.synthesis.reg_eps;
      opts.check_bandwidth = s.synthesis.check_bandwidth;

      std::vector<SampledSignal> inputs;
      SampledSignal target;
      std::optional<ImageDesign> image_design;
      std::size_t samples = s.samples;

      switch (s.synthesis.task) {
        case SynthesisTask::none:
          for (const auto& w : s.inputs) inputs.push_back(generate_waveform(w, samples, fs_hz));
          break;
        case SynthesisTask::single: {
          target = generate_waveform(s.synthesis.target, samples, fs_hz, SignalUnit::dimensionless);
          auto d = design_single_input(target, unit, cc, omega, opts);
          write_signal_csv(art.add("magnitude_0.csv"), d.magnitude);
          summary["design"] = Json::array({{{"scale", d.scale}, {"offset", d.offset}}});
          inputs.push_back(std::move(d.control));
          break;
        }
        case SynthesisTask::multi: {
          target = generate_waveform(s.synthesis.target, samples, fs_hz, SignalUnit::dimensionless);
          BandAssignment bands{s.synthesis.bands};
          const auto plan = StftPlan::hamming(s.synthesis.dft_len, s.synthesis.hop, fs_hz);
          auto d = design_multi_input(target, bands, plan, unit, std::span(&cc, 1), omega, opts);
          Json designs = Json::array();
          for (std::size_t j = 0; j < d.inputs.size(); ++j) {
            write_signal_csv(art.add("component_" + std::to_string(j) + ".csv"), d.components[j]);
            designs.push_back({{"scale", d.inputs[j].scale}, {"offset", d.inputs[j].offset}});
            inputs.push_back(std::move(d.inputs[j].control));
          }
          summary["design"] = designs;
          break;
        }
        case SynthesisTask::image: {
          const RealMatrix img = read_pgm(s.synthesis.image_path);
          const auto plan = StftPlan::hamming(s.synthesis.dft_len, s.synthesis.hop, fs_hz);
          image_design = image_to_control(img, plan, unit, cc, omega, &result.warnings, opts);
          write_pgm(art.add("target.pgm"), image_design->image);
          target = image_design->waveform;
          summary["design"] = Json::array(
              {{{"scale", image_design->design.scale}, {"offset", image_design->design.offset}}});
          inputs.push_back(image_design->design.control);
          break;
        }
      }
      if (!inputs.empty()) samples = inputs.front().size();
      for (std::size_t j = 0; j < inputs.size(); ++j) write_signal_csv(art.add(control_name(j)), inputs[j]);

      WaveformFactor factor;
      if (codebook.on_count() == 0) {
        factor = off_waveform_factor(codebook, unit, samples, fs_hz);
      } else {
        factor = waveform_factor(codebook, s.wiring, unit, cc, inputs, omega);
      }

      SampledSignal received;
      if (s.receiver.model == ReceiverModel::link) {
        received = received_signal(factor, codebook, s.link, s.scene.carrier_freq, &result.warnings);
      } else {
        const ComplexSignal field =
            scattered_field(s.scene, codebook, factor, s.receiver.theta, s.receiver.phi,
                            s.receiver.range_m, constant_incident(samples, fs_hz), &result.warnings);
        received = coherent_detect(field);
        for (double& v : received.samples) v *= s.link.beam_gain;
        add_noise(received.samples, s.link);
      }
      write_signal_csv(art.add("received.csv"), received);

      const Spectrum spec = amplitude_spectrum(received);
      write_spectrum_csv(art.add("spectrum.csv"), spec);
      summary["spectral_peaks"] = peaks_json(spec, 30.0);
      summary["modulation_efficiency"] = modulation_efficiency(factor, codebook);
      summary["samples"] = samples;

      if (s.synthesis.task != SynthesisTask::none) {
        summary["target_correlation"] = normalized_correlation(received.samples, target.samples);
      }
      if (image_design && s.receiver.model == ReceiverModel::link) {
        // Undo the link gain, the OFF-unit floor and the affine design map,
        // then re-analyse.
        const double n_on = static_cast<double>(codebook.on_count());
        const double off_floor =
            static_cast<double>(codebook.size() - codebook.on_count()) * unit.alpha;
        SampledSignal w = received;
        for (double& v : w.samples) {
          v = ((v / s.link.beam_gain - off_floor) / n_on - image_design->design.offset) /
              image_design->design.scale;
        }
        RealMatrix re = spectrogram_image(stft(w, image_design->target.plan));
        const double peak = *std::max_element(re.data.begin(), re.data.end());
        if (peak > 0.0) {
          for (double& v : re.data) v /= peak;
        }
        write_pgm(art.add("reanalysis.pgm"), re);
        const std::size_t cols = std::min(re.cols, image_design->image.cols);
        std::vector<double> a;
        std::vector<double> b;
        for (std::size_t r = 0; r < re.rows; ++r) {
          for (std::size_t c = 0; c < cols; ++c) {
            a.push_back(re(r, c));
            b.push_back(image_design->image(r, c));
          }
        }
        summary["image_correlation"] = normalized_correlation(a, b);
      }
    }
  }

  summary["warnings"] = result.warnings;
  result.summary = summary;
  write_json(art.add("summary.json"), summary);
  result.files = art.finish();
  write_manifest(out_dir, result.files);
  return result;
}

RunResult run_scenario(const fs::path& config, Command command, const fs::path& out_dir,
                       std::optional<std::uint64_t> seed) {
  Json doc = read_json_file(config);
  const fs::path base = fs::absolute(config).parent_path();
  if (seed) doc["seed"] = *seed;

  auto resolve = [&](const Json& d) {
    try {
      return scenario_from_json(d, base);
    } catch (const ConfigError& e) {
      throw ConfigError::in_context(config.string(), e);
    }
  };

  Json variants = Json::object();
  if (doc.is_object() && doc.contains("variants")) {
    variants = doc["variants"];
    resolve(doc);  // validates the variant table too
    doc.erase("variants");
  }
  if (!variants.is_object() || variants.empty()) return run_resolved(resolve(doc), command, out_dir);

  RunResult all;
  Json summaries = Json::object();
  for (auto it = variants.begin(); it != variants.end(); ++it) {
    const Json merged = merge_patch(doc, it.value());
    Scenario sc;
    try {
      sc = resolve(merged);
    } catch (const ConfigError& e) {
      throw ConfigError::in_context("variants." + it.key(), e);
    }
    RunResult r = run_resolved(sc, command, out_dir / it.key());
    for (auto& a : r.files) {
      a.path = it.key() + "/" + a.path;
      all.files.push_back(a);
    }
    // Each variant's own manifest is part of the artifact set as well.
    const fs::path sub_manifest = out_dir / it.key() / "manifest.json";
    all.files.push_back({it.key() + "/manifest.json", sha256_hex(sub_manifest),
                         fs::file_size(sub_manifest)});
    for (auto& w : r.warnings) all.warnings.push_back(it.key() + ": " + w);
    summaries[it.key()] = r.summary;
  }
  std::sort(all.files.begin(), all.files.end(),
            [](const Artifact& a, const Artifact& b) { return a.path < b.path; });
  all.summary = Json{{"variants", summaries}};
  write_manifest(out_dir, all.files);
  return all;
}

RunResult run_spectrum(const fs::path& input_csv, double min_db, const fs::path& out_dir) {
  ArtifactSet art(out_dir);
  RunResult result;
  const SampledSignal y = read_signal_csv(input_csv);
  if (y.size() < 2) throw ConfigError("need at least two samples", input_csv.string());
  const Spectrum spec = amplitude_spectrum(y);
  write_spectrum_csv(art.add("spectrum.csv"), spec);
  result.summary = Json{{"command", "spectrum"},
                        {"samples", y.size()},
                        {"sample_rate_hz", y.sample_rate},
                        {"spectral_peaks", peaks_json(spec, min_db)}};
  write_json(art.add("summary.json"), result.summary);
  result.files = art.finish();
  write_manifest(out_dir, result.files);
  return result;
}

}  // namespace awg
