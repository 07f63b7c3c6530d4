#pragma once

// Scenario orchestration behind the command-line tool: forward simulation,
// control-signal design and artifact writing with a hashed manifest.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "awg/config.hpp"

namespace awg {

enum class Command {
  unit_rc,
  beam_pattern,
  simulate,
  synth_single,
  synth_multi,
  synth_image,
  run,
};

const char* command_name(Command c);

struct Artifact {
  std::string path;  // relative to the output directory, '/' separated
  std::string sha256;
  std::uintmax_t bytes = 0;
};

struct RunResult {
  std::vector<Artifact> files;  // sorted by path, manifest excluded
  Json summary;
  Warnings warnings;
};

std::string sha256_hex(const std::filesystem::path& file);

// Runs one resolved scenario (variants ignored) and writes its artifacts,
// effective_config.json, summary.json and manifest.json into out_dir.
RunResult run_resolved(const Scenario& scenario, Command command,
                       const std::filesystem::path& out_dir);

// Loads a config file, applies an optional seed override and runs it. With
// variants, each one (the base config merge-patched) runs in out_dir/<name>
// and the top-level manifest lists every file of every variant.
RunResult run_scenario(const std::filesystem::path& config, Command command,
                       const std::filesystem::path& out_dir,
                       std::optional<std::uint64_t> seed = std::nullopt);

// Writes spectrum.csv for a signal CSV and reports peaks at least min_db
// above the median floor.
RunResult run_spectrum(const std::filesystem::path& input_csv, double min_db,
                       const std::filesystem::path& out_dir);

}  // namespace awg
