// Command-line front end: bias sweeps, beam patterns, forward simulation,
// control-signal synthesis and spectra. Exit codes: 0 success, 1 runtime or
// configuration error, 2 usage error.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "awg/config.hpp"
#include "awg/errors.hpp"
#include "awg/scenario.hpp"

namespace {

struct CommonFlags {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
};

CLI::App* add_command(CLI::App& app, const std::string& name, const std::string& help,
                      CommonFlags& flags, bool config_required = true) {
  CLI::App* sub = app.add_subcommand(name, help);
  auto* cfg = sub->add_option("--config", flags.config, "Scenario JSON file");
  if (config_required) cfg->required()->check(CLI::ExistingFile);
  sub->add_option("--out", flags.out, "Output directory")->required();
  sub->add_option("--seed", flags.seed, "Noise seed (overrides the config's seed)");
  return sub;
}

void print_summary(const awg::RunResult& r) {
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
  std::cout << r.summary.dump(2) << '\n';
  std::cout << r.files.size() << " files written\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reconfigurable-surface arbitrary waveform generation: simulation and control design"};
  app.require_subcommand(1);

  CommonFlags flags;
  struct Entry {
    CLI::App* app;
    awg::Command command;
  };
  const Entry entries[] = {
      {add_command(app, "unit-rc", "Sweep the unit's bias voltage; writes unit_rc.csv", flags),
       awg::Command::unit_rc},
      {add_command(app, "beam-pattern", "Compute the beam pattern; writes pattern.csv", flags),
       awg::Command::beam_pattern},
      {add_command(app, "simulate", "Forward-simulate the configured inputs", flags),
       awg::Command::simulate},
      {add_command(app, "synth-single", "Design one control signal for a target waveform", flags),
       awg::Command::synth_single},
      {add_command(app, "synth-multi", "Design per-band control signals (one per input)", flags),
       awg::Command::synth_multi},
      {add_command(app, "synth-image", "Design a control signal whose spectrogram draws a PGM image",
                   flags),
       awg::Command::synth_image},
      {add_command(app, "run", "Run the scenario's own task, including all variants", flags),
       awg::Command::run},
  };

  std::string spectrum_input;
  double min_db = 30.0;
  CLI::App* spectrum =
      add_command(app, "spectrum", "Amplitude spectrum of a signal CSV (time_s,value)", flags,
                  false);
  spectrum->add_option("--input", spectrum_input, "Signal CSV")->check(CLI::ExistingFile);
  spectrum->add_option("--min-db", min_db, "Peak threshold above the noise floor (dB)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (spectrum->parsed()) {
      std::string input = spectrum_input;
      if (!flags.config.empty()) {
        const auto doc = awg::read_json_file(flags.config);
        const auto base = std::filesystem::absolute(flags.config).parent_path();
        if (input.empty() && doc.contains("input")) input = (base / doc["input"].get<std::string>()).string();
        if (doc.contains("min_db")) min_db = doc["min_db"].get<double>();
      }
      if (input.empty()) {
        std::cerr << "spectrum: --input (or an 'input' entry in --config) is required\n";
        return 2;
      }
      print_summary(awg::run_spectrum(input, min_db, flags.out));
      return 0;
    }
    for (const auto& e : entries) {
      if (e.app->parsed()) {
        print_summary(awg::run_scenario(flags.config, e.command, flags.out, flags.seed));
        return 0;
      }
    }
  } catch (const awg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
