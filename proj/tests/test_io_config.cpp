#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "doctest.h"

#include "awg/config.hpp"
#include "awg/errors.hpp"
#include "awg/io.hpp"

using namespace awg;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "awg_test_io_config";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json minimal() {
  return Json::parse(R"({"scene": {"rows": 1, "cols": 4}, "codebook": [1, 0, 1, 1]})");
}

std::string field_of(const Json& doc) {
  try {
    scenario_from_json(doc, fs::temp_directory_path());
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<no error>";
}

}  // namespace

TEST_CASE("number format") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(-2.5e-7) == "-2.4999999999999999e-07");
  for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, -1e-300, 5e-324}) {
    CHECK(std::strtod(format_number(v).c_str(), nullptr) == v);
  }
}

TEST_CASE("signal csv round trip is exact") {
  SampledSignal s;
  s.sample_rate = 1e6;
  for (int i = 0; i < 100; ++i) s.samples.push_back(std::sin(0.37 * i) / 3.0);
  const auto p = scratch("sig.csv");
  write_signal_csv(p, s);
  const std::string text = slurp(p);
  CHECK(text.rfind("time_s,value\n", 0) == 0);
  CHECK(text.find('\r') == std::string::npos);
  const auto back = read_signal_csv(p);
  CHECK(back.samples == s.samples);
  CHECK(back.sample_rate == doctest::Approx(1e6).epsilon(1e-9));

  const auto q = scratch("sig2.csv");
  write_signal_csv(q, back);
  CHECK(slurp(q) == text);
}

TEST_CASE("taps csv round trip") {
  const std::vector<double> taps{0.25, -1.0 / 7.0, 3e-12, 1.0};
  const auto p = scratch("taps.csv");
  write_taps_csv(p, taps);
  CHECK(read_taps_csv(p) == taps);
}

TEST_CASE("pgm round trip") {
  RealMatrix img(3, 4, 0.0);
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 4; ++c) img(r, c) = static_cast<double>(r * 4 + c) * 20.0 / 255.0;
  }
  img(0, 0) = 2.0;  // clamps
  for (bool binary : {false, true}) {
    const auto p = scratch(binary ? "img5.pgm" : "img2.pgm");
    write_pgm(p, img, binary);
    const auto back = read_pgm(p);
    REQUIRE(back.rows == 3);
    REQUIRE(back.cols == 4);
    CHECK(back(0, 0) == 1.0);
    for (std::size_t i = 1; i < 12; ++i) CHECK(back(i / 4, i % 4) == doctest::Approx(img(i / 4, i % 4)));
  }
  const auto bad = scratch("bad.pgm");
  std::ofstream(bad) << "P3\n1 1\n255\n0 0 0\n";
  CHECK_THROWS_AS(read_pgm(bad), ConfigError);
}

TEST_CASE("merge patch") {
  const Json a = Json::parse(R"({"a": 1, "b": {"c": 2, "d": 3}, "e": [1, 2]})");
  const Json p = Json::parse(R"({"a": null, "b": {"c": 5}, "e": [9], "f": "x"})");
  CHECK(merge_patch(a, p) == Json::parse(R"({"b": {"c": 5, "d": 3}, "e": [9], "f": "x"})"));
  CHECK(merge_patch(a, Json::object()) == a);
  CHECK(merge_patch(a, Json(7)) == Json(7));
}

TEST_CASE("scenario defaults and parsing") {
  const auto s = scenario_from_json(minimal(), fs::temp_directory_path());
  CHECK(s.scene.rows == 1);
  CHECK(s.scene.cols == 4);
  CHECK(s.resolved_codebook().on_count() == 3);
  CHECK(s.wiring.num_inputs == 1);
  CHECK(s.sample_rate == 1e6);
  CHECK(s.synthesis.task == SynthesisTask::none);

  Json d = minimal();
  d.erase("codebook");
  d["target_direction"] = {{"theta_deg", 30.0}, {"phi_deg", 0.0}};
  const auto t = scenario_from_json(d, fs::temp_directory_path());
  CHECK(t.resolved_codebook().size() == 4);

  Json inf = minimal();
  inf["unit"] = {{"c_rf", nullptr}};
  CHECK(std::isinf(scenario_from_json(inf, fs::temp_directory_path()).scene.unit.c_rf));
}

TEST_CASE("config errors name the field") {
  Json d = minimal();
  d["scene"]["colz"] = 4;
  CHECK(field_of(d) == "scene.colz");

  d = minimal();
  d["link"] = {{"noise_std", -1.0}};
  CHECK(field_of(d) == "link.noise_std");

  d = minimal();
  d["target_direction"] = {{"theta_deg", 10.0}};
  CHECK(field_of(d) == "codebook");

  d = minimal();
  d.erase("codebook");
  CHECK(field_of(d) == "codebook");

  d = minimal();
  d["codebook"] = {1, 0};
  CHECK(field_of(d) == "codebook");

  d = minimal();
  d["inputs"] = Json::array({{{"kind", "warble"}}});
  CHECK(field_of(d) == "inputs[0].kind");

  d = minimal();
  d["inputs"] = Json::array({{{"kind", "file"}, {"path", "does_not_exist.csv"}}});
  CHECK(field_of(d) == "inputs[0].path");

  d = minimal();
  d["wiring"] = {{"input_of_unit", {0, 1, 0, 1}}};
  d["inputs"] = Json::array({{{"kind", "sine"}}});
  CHECK(field_of(d) == "inputs");

  d = minimal();
  d["synthesis"] = {{"task", "multi"}};
  CHECK(field_of(d) == "synthesis.bands");

  d = minimal();
  d["scene"]["rows"] = "two";
  CHECK(field_of(d) == "scene.rows");

  d = minimal();
  d["variants"] = {{"../up", Json::object()}};
  CHECK(field_of(d) == "variants.../up");
}

TEST_CASE("config files") {
  const auto p = scratch("cfg.json");
  std::ofstream(p) << "// comment\n" << minimal().dump(2) << "\n";
  CHECK(load_scenario(p).scene.cols == 4);

  const auto broken = scratch("broken.json");
  std::ofstream(broken) << "{\"scene\": ";
  CHECK_THROWS_AS(load_scenario(broken), ConfigError);

  const auto bad_field = scratch("bad_field.json");
  std::ofstream(bad_field) << R"({"scene": {"rows": 1, "cols": 4}, "codebook": [1,0,1,1], "nope": 1})";
  try {
    load_scenario(bad_field);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "nope");
    CHECK(std::string(e.what()).find(bad_field.string()) != std::string::npos);
  }
  CHECK_THROWS_AS(load_scenario(scratch("missing.json")), ConfigError);
}

TEST_CASE("effective config round trip") {
  Json d = minimal();
  d["link"] = {{"noise_std", 0.01}};
  d["seed"] = 42;
  d["inputs"] = Json::array({{{"kind", "square"}, {"frequency_hz", 1e4}, {"phase_deg", 45.0}}});
  d["control_circuit"] = {{"type", "rlc"}, {"cutoff_hz", 1e5}};
  d["unit"] = {{"c_rf", nullptr}, {"phase_jitter_deg", 10.0}};
  d["pattern"] = {{"on_bias_v", 0.8}};
  const auto s = scenario_from_json(d, fs::temp_directory_path());
  const Json once = scenario_to_json(s);
  const Json twice = scenario_to_json(scenario_from_json(once, fs::temp_directory_path()));
  CHECK(once == twice);
  CHECK(once.dump() == twice.dump());
}

TEST_CASE("circuit construction") {
  CircuitSpec id;
  const auto a = build_circuit(id, 1e6);
  CHECK(a.taps == std::vector<double>{1.0});
  CHECK(a.passband_hi == 5e5);

  CircuitSpec taps;
  taps.kind = CircuitKind::taps;
  taps.taps_path = scratch("cc_taps.csv");
  write_taps_csv(taps.taps_path, std::vector<double>{0.5, 0.5});
  taps.passband_hi_hz = 1e5;
  CHECK(build_circuit(taps, 1e6).taps == std::vector<double>{0.5, 0.5});
}
