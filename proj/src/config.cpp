#include "awg/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "awg/errors.hpp"
#include "awg/io.hpp"

namespace awg {

namespace fs = std::filesystem;

namespace {

// Typed access to one JSON object that remembers which keys were read, so
// leftovers (typos) can be reported with their full path.
class Reader {
 public:
  Reader(const Json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw ConfigError("expected an object", path_.empty() ? "$" : path_);
  }

  std::string field(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  bool has(const std::string& key) const { return obj_.contains(key); }

  const Json& raw(const std::string& key) {
    used_.insert(key);
    return obj_.at(key);
  }

  double number(const std::string& key, double fallback) {
    if (!has(key)) return fallback;
    const Json& v = raw(key);
    if (v.is_null()) return std::numeric_limits<double>::infinity();
    if (!v.is_number()) throw ConfigError("expected a number", field(key));
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError("must be finite", field(key));
    return d;
  }

  std::optional<double> optional_number(const std::string& key) {
    if (!has(key) || obj_.at(key).is_null()) {
      if (has(key)) used_.insert(key);
      return std::nullopt;
    }
    return number(key, 0.0);
  }

  std::size_t count(const std::string& key, std::size_t fallback) {
    if (!has(key)) return fallback;
    const Json& v = raw(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
      throw ConfigError("expected a non-negative integer", field(key));
    }
    return v.get<std::size_t>();
  }

  bool boolean(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const Json& v = raw(key);
    if (!v.is_boolean()) throw ConfigError("expected true or false", field(key));
    return v.get<bool>();
  }

  std::string text(const std::string& key, const std::string& fallback) {
    if (!has(key)) return fallback;
    const Json& v = raw(key);
    if (!v.is_string()) throw ConfigError("expected a string", field(key));
    return v.get<std::string>();
  }

  std::vector<std::size_t> index_list(const std::string& key) {
    const Json& v = raw(key);
    if (!v.is_array()) throw ConfigError("expected an array", field(key));
    std::vector<std::size_t> out;
    for (const auto& e : v) {
      if (!e.is_number_integer() || e.get<long long>() < 0) {
        throw ConfigError("expected non-negative integers", field(key));
      }
      out.push_back(e.get<std::size_t>());
    }
    return out;
  }

  void finish() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      if (!used_.count(it.key())) throw ConfigError("unknown key", field(it.key()));
    }
  }

 private:
  const Json& obj_;
  std::string path_;
  std::set<std::string> used_;
};

fs::path resolve(const fs::path& base, const std::string& p, const std::string& field) {
  if (p.empty()) throw ConfigError("path is empty", field);
  fs::path out = fs::path(p).is_absolute() ? fs::path(p) : base / p;
  out = out.lexically_normal();
  if (!fs::exists(out)) throw ConfigError("file not found: " + out.string(), field);
  return out;
}

WaveformSpec read_waveform(const Json& j, const std::string& path, const fs::path& base) {
  Reader r(j, path);
  WaveformSpec w;
  const std::string kind = r.text("kind", "constant");
  try {
    w.kind = parse_waveform_kind(kind);
  } catch (const ConfigError&) {
    throw ConfigError("unknown waveform kind '" + kind + "'", r.field("kind"));
  }
  w.amplitude = r.number("amplitude", w.amplitude);
  w.offset = r.number("offset", w.offset);
  w.frequency = r.number("frequency_hz", w.frequency);
  w.phase = deg2rad(r.number("phase_deg", rad2deg(w.phase)));
  w.width = r.number("width_s", w.width);
  w.f_start = r.number("f_start_hz", w.f_start);
  w.f_stop = r.number("f_stop_hz", w.f_stop);
  if (r.has("path")) w.path = resolve(base, r.text("path", ""), r.field("path")).string();
  if (w.kind == WaveformKind::file && w.path.empty()) {
    throw ConfigError("file waveforms need a path", r.field("path"));
  }
  r.finish();
  return w;
}

Json waveform_json(const WaveformSpec& w) {
  Json j;
  j["kind"] = waveform_kind_name(w.kind);
  j["amplitude"] = w.amplitude;
  j["offset"] = w.offset;
  j["frequency_hz"] = w.frequency;
  j["phase_deg"] = rad2deg(w.phase);
  j["width_s"] = w.width;
  j["f_start_hz"] = w.f_start;
  j["f_stop_hz"] = w.f_stop;
  if (!w.path.empty()) j["path"] = w.path;
  return j;
}

// null stands in for an infinite value (JSON has no inf).
Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

void read_unit(Reader& r, UnitModel& u) {
  u.r_rf = r.number("r_rf", u.r_rf);
  u.l_rf = r.number("l_rf", u.l_rf);
  u.c_rf = r.number("c_rf", u.c_rf);
  u.z0 = r.number("z0", u.z0);
  u.phi_on = deg2rad(r.number("phi_on_deg", rad2deg(u.phi_on)));
  u.phi_off = deg2rad(r.number("phi_off_deg", rad2deg(u.phi_off)));
  u.alpha = r.number("alpha", u.alpha);
  u.phase_jitter = deg2rad(r.number("phase_jitter_deg", rad2deg(u.phase_jitter)));
  if (r.has("diode")) {
    Reader d(r.raw("diode"), r.field("diode"));
    DiodeModel& m = u.diode;
    m.r_on_ref = d.number("r_on_ref", m.r_on_ref);
    m.v_forward = d.number("v_forward", m.v_forward);
    m.v_ref = d.number("v_ref", m.v_ref);
    m.v_soft = d.number("v_soft", m.v_soft);
    m.slope = d.number("slope", m.slope);
    m.l_p = d.number("l_p", m.l_p);
    m.c_p = d.number("c_p", m.c_p);
    m.r_p0 = d.number("r_p0", m.r_p0);
    d.finish();
  }
}

Json unit_json(const UnitModel& u) {
  Json d;
  d["r_on_ref"] = u.diode.r_on_ref;
  d["v_forward"] = u.diode.v_forward;
  d["v_ref"] = u.diode.v_ref;
  d["v_soft"] = u.diode.v_soft;
  d["slope"] = u.diode.slope;
  d["l_p"] = u.diode.l_p;
  d["c_p"] = u.diode.c_p;
  d["r_p0"] = u.diode.r_p0;
  Json j;
  j["r_rf"] = u.r_rf;
  j["l_rf"] = u.l_rf;
  j["c_rf"] = number_or_null(u.c_rf);
  j["z0"] = u.z0;
  j["phi_on_deg"] = rad2deg(u.phi_on);
  j["phi_off_deg"] = rad2deg(u.phi_off);
  j["alpha"] = u.alpha;
  j["phase_jitter_deg"] = rad2deg(u.phase_jitter);
  j["diode"] = d;
  return j;
}

template <typename E>
E pick(const std::string& value, std::initializer_list<std::pair<const char*, E>> options,
       const std::string& field) {
  std::string allowed;
  for (const auto& [name, e] : options) {
    if (value == name) return e;
    allowed += (allowed.empty() ? "" : ", ") + std::string(name);
  }
  throw ConfigError("unknown value '" + value + "' (expected " + allowed + ")", field);
}

const char* circuit_name(CircuitKind k) {
  switch (k) {
    case CircuitKind::identity: return "identity";
    case CircuitKind::rlc: return "rlc";
    case CircuitKind::taps: return "taps";
  }
  return "identity";
}

}  // namespace

const char* task_name(SynthesisTask task) {
  switch (task) {
    case SynthesisTask::none: return "none";
    case SynthesisTask::single: return "single";
    case SynthesisTask::multi: return "multi";
    case SynthesisTask::image: return "image";
  }
  return "none";
}

Codebook Scenario::resolved_codebook() const {
  if (codebook) return *codebook;
  if (target_direction) {
    return design_codebook(scene, target_direction->first, target_direction->second);
  }
  throw ConfigError("one of codebook / target_direction is required", "codebook");
}

Scenario scenario_from_json(const Json& doc, const fs::path& base_dir) {
  Reader top(doc, "");
  Scenario s;
  s.name = top.text("name", s.name);
  s.link.seed = top.count("seed", 0);
  s.sample_rate = top.number("sample_rate_hz", s.sample_rate);
  s.samples = top.count("samples", s.samples);
  if (!(s.sample_rate > 0.0)) throw ConfigError("must be > 0", "sample_rate_hz");
  if (s.samples < 1) throw ConfigError("must be >= 1", "samples");

  if (top.has("scene")) {
    Reader r(top.raw("scene"), "scene");
    ArrayScene& sc = s.scene;
    sc.rows = r.count("rows", sc.rows);
    sc.cols = r.count("cols", sc.cols);
    sc.carrier_freq = r.number("carrier_hz", sc.carrier_freq);
    sc.spacing = r.number("spacing_m", kSpeedOfLight / sc.carrier_freq / 2.0);
    sc.incidence = pick<Incidence>(r.text("incidence", "spherical"),
                                   {{"spherical", Incidence::spherical}, {"plane", Incidence::plane}},
                                   r.field("incidence"));
    if (r.has("feed_pos_m")) {
      const Json& p = r.raw("feed_pos_m");
      if (!p.is_array() || p.size() != 3 || !p[0].is_number() || !p[1].is_number() ||
          !p[2].is_number()) {
        throw ConfigError("expected [x, y, z]", r.field("feed_pos_m"));
      }
      sc.feed_pos = {p[0].get<double>(), p[1].get<double>(), p[2].get<double>()};
    }
    sc.plane_theta = deg2rad(r.number("plane_theta_deg", 0.0));
    sc.plane_phi = deg2rad(r.number("plane_phi_deg", 0.0));
    r.finish();
  }
  if (top.has("unit")) {
    Reader r(top.raw("unit"), "unit");
    read_unit(r, s.scene.unit);
    r.finish();
  }
  s.scene.validate();
  const std::size_t units = s.scene.unit_count();

  if (top.has("codebook") && top.has("target_direction")) {
    throw ConfigError("give either codebook or target_direction, not both", "codebook");
  }
  if (top.has("codebook")) {
    const Json& cb = top.raw("codebook");
    if (!cb.is_array() || cb.size() != units) {
      throw ConfigError("expected an array of " + std::to_string(units) + " bits", "codebook");
    }
    Codebook c;
    for (const auto& b : cb) {
      if (!b.is_number_integer() || (b.get<int>() != 0 && b.get<int>() != 1)) {
        throw ConfigError("entries must be 0 or 1", "codebook");
      }
      c.bits.push_back(static_cast<std::uint8_t>(b.get<int>()));
    }
    s.codebook = c;
  } else if (top.has("target_direction")) {
    Reader r(top.raw("target_direction"), "target_direction");
    const double th = r.number("theta_deg", 0.0);
    const double ph = r.number("phi_deg", 0.0);
    if (th < 0.0 || th > 90.0) throw ConfigError("must lie in [0, 90]", r.field("theta_deg"));
    s.target_direction = {{deg2rad(th), deg2rad(ph)}};
    r.finish();
  } else {
    throw ConfigError("one of codebook / target_direction is required", "codebook");
  }

  if (top.has("wiring")) {
    Reader r(top.raw("wiring"), "wiring");
    if (r.has("input_of_unit") && r.has("by_column")) {
      throw ConfigError("give input_of_unit or by_column, not both", "wiring");
    }
    std::vector<std::size_t> map;
    if (r.has("input_of_unit")) {
      map = r.index_list("input_of_unit");
    } else if (r.has("by_column")) {
      const auto cols = r.index_list("by_column");
      if (cols.size() != s.scene.cols) {
        throw ConfigError("expected one entry per column", r.field("by_column"));
      }
      for (std::size_t k = 0; k < units; ++k) map.push_back(cols[k % s.scene.cols]);
    } else {
      map.assign(units, 0);
    }
    std::size_t max_in = 0;
    for (auto j : map) max_in = std::max(max_in, j);
    s.wiring.input_of_unit = map;
    s.wiring.num_inputs = r.count("num_inputs", max_in + 1);
    r.finish();
  } else {
    s.wiring = Wiring::single(units);
  }
  s.wiring.validate(units);

  if (top.has("link")) {
    Reader r(top.raw("link"), "link");
    s.link.beam_gain = r.number("beam_gain", s.link.beam_gain);
    s.link.mod_attenuation = r.number("mod_attenuation", s.link.mod_attenuation);
    s.link.noise_std = r.number("noise_std", s.link.noise_std);
    s.link.dc_window = r.number("dc_window_s", s.link.dc_window);
    r.finish();
  }
  s.link.validate();

  if (top.has("control_circuit")) {
    Reader r(top.raw("control_circuit"), "control_circuit");
    CircuitSpec& c = s.circuit;
    c.kind = pick<CircuitKind>(r.text("type", "identity"),
                               {{"identity", CircuitKind::identity},
                                {"rlc", CircuitKind::rlc},
                                {"taps", CircuitKind::taps}},
                               r.field("type"));
    c.cutoff_hz = r.number("cutoff_hz", c.cutoff_hz);
    c.damping = r.number("damping", c.damping);
    if (r.has("taps_path")) c.taps_path = resolve(base_dir, r.text("taps_path", ""), r.field("taps_path"));
    if (c.kind == CircuitKind::taps && c.taps_path.empty()) {
      throw ConfigError("taps circuits need taps_path", r.field("taps_path"));
    }
    c.passband_lo_hz = r.number("passband_lo_hz", c.passband_lo_hz);
    c.passband_hi_hz = r.number("passband_hi_hz", c.passband_hi_hz);
    r.finish();
  }

  if (top.has("inputs")) {
    const Json& arr = top.raw("inputs");
    if (!arr.is_array()) throw ConfigError("expected an array", "inputs");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      s.inputs.push_back(read_waveform(arr[i], "inputs[" + std::to_string(i) + "]", base_dir));
    }
  }

  if (top.has("pattern")) {
    Reader r(top.raw("pattern"), "pattern");
    PatternSpec& p = s.pattern;
    p.grid = pick<GridKind>(r.text("grid", "theta_cut"),
                            {{"theta_cut", GridKind::theta_cut}, {"hemisphere", GridKind::hemisphere}},
                            r.field("grid"));
    p.step_deg = r.number("step_deg", p.step_deg);
    if (!(p.step_deg > 0.0)) throw ConfigError("must be > 0", r.field("step_deg"));
    p.phi = deg2rad(r.number("phi_deg", 0.0));
    p.on_bias = r.optional_number("on_bias_v");
    p.form = pick<PatternForm>(r.text("form", "coherent"),
                               {{"coherent", PatternForm::coherent},
                                {"incoherent", PatternForm::incoherent}},
                               r.field("form"));
    r.finish();
  }

  if (top.has("receiver")) {
    Reader r(top.raw("receiver"), "receiver");
    ReceiverSpec& rc = s.receiver;
    rc.model = pick<ReceiverModel>(r.text("model", "link"),
                                   {{"link", ReceiverModel::link}, {"field", ReceiverModel::field}},
                                   r.field("model"));
    rc.theta = deg2rad(r.number("theta_deg", 0.0));
    rc.phi = deg2rad(r.number("phi_deg", 0.0));
    rc.range_m = r.number("range_m", rc.range_m);
    if (!(rc.range_m > 0.0)) throw ConfigError("must be > 0", r.field("range_m"));
    r.finish();
  }

  if (top.has("synthesis")) {
    Reader r(top.raw("synthesis"), "synthesis");
    SynthesisSpec& sy = s.synthesis;
    sy.task = pick<SynthesisTask>(r.text("task", "none"),
                                  {{"none", SynthesisTask::none},
                                   {"single", SynthesisTask::single},
                                   {"multi", SynthesisTask::multi},
                                   {"image", SynthesisTask::image}},
                                  r.field("task"));
    if (r.has("target")) sy.target = read_waveform(r.raw("target"), r.field("target"), base_dir);
    if (r.has("bands")) {
      const Json& b = r.raw("bands");
      if (!b.is_array()) throw ConfigError("expected an array of bin lists", r.field("bands"));
      for (const auto& set : b) {
        if (!set.is_array()) throw ConfigError("expected an array of bin lists", r.field("bands"));
        std::vector<std::size_t> bins;
        for (const auto& e : set) {
          if (!e.is_number_integer() || e.get<long long>() < 0) {
            throw ConfigError("bins must be non-negative integers", r.field("bands"));
          }
          bins.push_back(e.get<std::size_t>());
        }
        sy.bands.push_back(bins);
      }
    }
    sy.dft_len = r.count("dft_len", sy.dft_len);
    sy.hop = r.count("hop", sy.hop);
    if (r.has("image")) sy.image_path = resolve(base_dir, r.text("image", ""), r.field("image"));
    sy.margin = r.number("margin", sy.margin);
    sy.reg_eps = r.number("reg_eps", sy.reg_eps);
    sy.check_bandwidth = r.boolean("check_bandwidth", sy.check_bandwidth);
    r.finish();
    if (sy.task == SynthesisTask::image && sy.image_path.empty()) {
      throw ConfigError("image synthesis needs an image", "synthesis.image");
    }
    if (sy.task == SynthesisTask::multi && sy.bands.empty()) {
      throw ConfigError("multi-input synthesis needs bands", "synthesis.bands");
    }
    if (sy.task == SynthesisTask::multi && sy.bands.size() != s.wiring.num_inputs) {
      throw ConfigError("need one band per wired input", "synthesis.bands");
    }
    if ((sy.task == SynthesisTask::single || sy.task == SynthesisTask::image) &&
        s.wiring.num_inputs != 1) {
      throw ConfigError("single-input synthesis needs num_inputs = 1", "wiring.num_inputs");
    }
  }

  if (!s.inputs.empty() && s.inputs.size() != s.wiring.num_inputs) {
    throw ConfigError("expected " + std::to_string(s.wiring.num_inputs) + " inputs (one per DAC)",
                      "inputs");
  }

  if (top.has("unit_rc")) {
    Reader r(top.raw("unit_rc"), "unit_rc");
    s.sweep.v_min = r.number("v_min", s.sweep.v_min);
    s.sweep.v_max = r.number("v_max", s.scene.unit.diode.v_ref);
    s.sweep.points = r.count("points", s.sweep.points);
    if (s.sweep.points < 2) throw ConfigError("must be >= 2", r.field("points"));
    if (!(s.sweep.v_max > s.sweep.v_min)) throw ConfigError("must exceed v_min", r.field("v_max"));
    r.finish();
  } else {
    s.sweep.v_max = s.scene.unit.diode.v_ref;
  }

  if (top.has("variants")) {
    const Json& v = top.raw("variants");
    if (!v.is_object()) throw ConfigError("expected an object of patches", "variants");
    for (auto it = v.begin(); it != v.end(); ++it) {
      const std::string& key = it.key();
      if (key.empty() || key.find_first_of("/\\") != std::string::npos || key == "." ||
          key == "..") {
        throw ConfigError("variant names must be plain directory names", "variants." + key);
      }
      if (!it.value().is_object()) throw ConfigError("expected a patch object", "variants." + key);
    }
    s.variants = v;
  }

  top.finish();
  return s;
}

Json scenario_to_json(const Scenario& s) {
  Json j;
  j["name"] = s.name;
  j["seed"] = s.link.seed;
  j["sample_rate_hz"] = s.sample_rate;
  j["samples"] = s.samples;

  const ArrayScene& sc = s.scene;
  Json scene;
  scene["rows"] = sc.rows;
  scene["cols"] = sc.cols;
  scene["carrier_hz"] = sc.carrier_freq;
  scene["spacing_m"] = sc.spacing;
  scene["incidence"] = sc.incidence == Incidence::plane ? "plane" : "spherical";
  scene["feed_pos_m"] = {sc.feed_pos[0], sc.feed_pos[1], sc.feed_pos[2]};
  scene["plane_theta_deg"] = rad2deg(sc.plane_theta);
  scene["plane_phi_deg"] = rad2deg(sc.plane_phi);
  j["scene"] = scene;
  j["unit"] = unit_json(sc.unit);

  if (s.codebook) {
    Json cb = Json::array();
    for (auto b : s.codebook->bits) cb.push_back(static_cast<int>(b));
    j["codebook"] = cb;
  } else if (s.target_direction) {
    j["target_direction"] = {{"theta_deg", rad2deg(s.target_direction->first)},
                             {"phi_deg", rad2deg(s.target_direction->second)}};
  }
  j["wiring"] = {{"num_inputs", s.wiring.num_inputs}, {"input_of_unit", s.wiring.input_of_unit}};
  j["link"] = {{"beam_gain", s.link.beam_gain},
               {"mod_attenuation", s.link.mod_attenuation},
               {"noise_std", s.link.noise_std},
               {"dc_window_s", s.link.dc_window}};

  Json cc;
  cc["type"] = circuit_name(s.circuit.kind);
  cc["cutoff_hz"] = s.circuit.cutoff_hz;
  cc["damping"] = s.circuit.damping;
  if (!s.circuit.taps_path.empty()) cc["taps_path"] = s.circuit.taps_path.string();
  cc["passband_lo_hz"] = s.circuit.passband_lo_hz;
  cc["passband_hi_hz"] = s.circuit.passband_hi_hz;
  j["control_circuit"] = cc;

  Json inputs = Json::array();
  for (const auto& w : s.inputs) inputs.push_back(waveform_json(w));
  j["inputs"] = inputs;

  Json pat;
  pat["grid"] = s.pattern.grid == GridKind::hemisphere ? "hemisphere" : "theta_cut";
  pat["step_deg"] = s.pattern.step_deg;
  pat["phi_deg"] = rad2deg(s.pattern.phi);
  pat["on_bias_v"] = s.pattern.on_bias ? Json(*s.pattern.on_bias) : Json(nullptr);
  pat["form"] = s.pattern.form == PatternForm::incoherent ? "incoherent" : "coherent";
  j["pattern"] = pat;

  j["receiver"] = {{"model", s.receiver.model == ReceiverModel::field ? "field" : "link"},
                   {"theta_deg", rad2deg(s.receiver.theta)},
                   {"phi_deg", rad2deg(s.receiver.phi)},
                   {"range_m", s.receiver.range_m}};

  const SynthesisSpec& sy = s.synthesis;
  Json syn;
  syn["task"] = task_name(sy.task);
  syn["target"] = waveform_json(sy.target);
  syn["bands"] = sy.bands;
  syn["dft_len"] = sy.dft_len;
  syn["hop"] = sy.hop;
  if (!sy.image_path.empty()) syn["image"] = sy.image_path.string();
  syn["margin"] = sy.margin;
  syn["reg_eps"] = sy.reg_eps;
  syn["check_bandwidth"] = sy.check_bandwidth;
  j["synthesis"] = syn;

  j["unit_rc"] = {{"v_min", s.sweep.v_min}, {"v_max", s.sweep.v_max}, {"points", s.sweep.points}};
  return j;
}

Json read_json_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config", path.string());
  try {
    return Json::parse(in, nullptr, true, true);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("parse error: ") + e.what(), path.string());
  }
}

Scenario load_scenario(const fs::path& path) {
  const Json doc = read_json_file(path);
  try {
    return scenario_from_json(doc, fs::absolute(path).parent_path());
  } catch (const ConfigError& e) {
    throw ConfigError::in_context(path.string(), e);
  }
}

Json merge_patch(const Json& target, const Json& patch) {
  if (!patch.is_object()) return patch;
  Json out = target.is_object() ? target : Json::object();
  for (auto it = patch.begin(); it != patch.end(); ++it) {
    if (it.value().is_null()) {
      out.erase(it.key());
    } else {
      out[it.key()] = merge_patch(out.contains(it.key()) ? out[it.key()] : Json(), it.value());
    }
  }
  return out;
}

ControlCircuitModel build_circuit(const CircuitSpec& spec, double sample_rate) {
  const double hi = spec.passband_hi_hz > 0.0 ? spec.passband_hi_hz : 0.5 * sample_rate;
  ControlCircuitModel cc;
  switch (spec.kind) {
    case CircuitKind::identity:
      cc = identity_circuit(sample_rate, spec.passband_lo_hz, hi);
      break;
    case CircuitKind::rlc:
      cc = rlc_lowpass(sample_rate, spec.cutoff_hz, spec.damping, spec.passband_lo_hz, hi);
      break;
    case CircuitKind::taps:
      cc.taps = read_taps_csv(spec.taps_path);
      cc.sample_rate = sample_rate;
      cc.passband_lo = spec.passband_lo_hz;
      cc.passband_hi = hi;
      break;
  }
  cc.validate();
  return cc;
}

}  // namespace awg
