#include "headnav/config_io.hpp"

#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "config_json.hpp"

namespace headnav {

namespace detail {

namespace {

void decode(const json& v, const std::string& path, double& out);
void decode(const json& v, const std::string& path, int& out);
void decode(const json& v, const std::string& path, std::uint64_t& out);
void decode(const json& v, const std::string& path, std::string& out);
void decode(const json& v, const std::string& path, std::optional<double>& out);
void decode(const json& v, const std::string& path, Technique& out);
void decode(const json& v, const std::string& path, Side& out);
void decode(const json& v, const std::string& path, ClockStart& out);
void decode(const json& v, const std::string& path, OperatorStrategy& out);
void decode(const json& v, const std::string& path, FrictionModel& out);
void decode(const json& v, const std::string& path, SweepDesign& out);
void decode(const json& v, const std::string& path, RateParams& out);
void decode(const json& v, const std::string& path, ZoneThresholds& out);
void decode(const json& v, const std::string& path, DragFlickParams& out);
void decode(const json& v, const std::string& path, TechniqueParams& out);
void decode(const json& v, const std::string& path, OperatorParams& out);
void decode(const json& v, const std::string& path, DisplayGeometry& out);
void decode(const json& v, const std::string& path, ClusterScenario& out);
template <typename T>
void decode(const json& v, const std::string& path, std::vector<T>& out);

/// Strict view over one JSON object: tracks which keys were consumed so
/// leftovers can be reported as unknown.
class Fields {
 public:
  Fields(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_, "expected an object");
  }

  [[nodiscard]] std::string child(const std::string& key) const { return path_ + "." + key; }
  [[nodiscard]] const std::string& path() const { return path_; }

  const json* find(const char* key) {
    seen_.insert(key);
    const auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  template <typename T>
  void get(const char* key, T& out) {
    if (const json* v = find(key)) decode(*v, child(key), out);
  }

  template <typename T>
  void require(const char* key, T& out) {
    const json* v = find(key);
    if (v == nullptr) throw ConfigError(child(key), "missing required field");
    decode(*v, child(key), out);
  }

  void finish() const {
    for (const auto& item : j_.items()) {
      if (seen_.count(item.key()) == 0) throw ConfigError(child(item.key()), "unknown field");
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string, std::less<>> seen_;
};

template <typename Fn>
void validated(const std::string& path, Fn&& fn) {
  try {
    fn();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, e.what());
  }
}

void decode(const json& v, const std::string& path, double& out) {
  if (!v.is_number()) throw ConfigError(path, "expected a number");
  out = v.get<double>();
}

void decode(const json& v, const std::string& path, int& out) {
  if (!v.is_number_integer()) throw ConfigError(path, "expected an integer");
  const auto i = v.get<std::int64_t>();
  if (v.is_number_unsigned() && v.get<std::uint64_t>() >
                                    static_cast<std::uint64_t>(std::numeric_limits<int>::max())) {
    throw ConfigError(path, "integer out of range");
  }
  if (i < std::numeric_limits<int>::min() || i > std::numeric_limits<int>::max()) {
    throw ConfigError(path, "integer out of range");
  }
  out = static_cast<int>(i);
}

void decode(const json& v, const std::string& path, std::uint64_t& out) {
  if (v.is_number_unsigned()) {
    out = v.get<std::uint64_t>();
  } else if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
    out = static_cast<std::uint64_t>(v.get<std::int64_t>());
  } else {
    throw ConfigError(path, "expected a non-negative integer");
  }
}

void decode(const json& v, const std::string& path, std::string& out) {
  if (!v.is_string()) throw ConfigError(path, "expected a string");
  out = v.get<std::string>();
}

void decode(const json& v, const std::string& path, std::optional<double>& out) {
  if (v.is_null()) {
    out.reset();
    return;
  }
  double d = 0.0;
  decode(v, path, d);
  out = d;
}

template <typename Enum, typename Parse>
Enum decode_enum(const json& v, const std::string& path, Parse parse, const char* choices) {
  std::string id;
  decode(v, path, id);
  const std::optional<Enum> e = parse(id);
  if (!e) throw ConfigError(path, "unknown value '" + id + "', expected one of: " + choices);
  return *e;
}

void decode(const json& v, const std::string& path, Technique& out) {
  out = decode_enum<Technique>(v, path, parse_technique, technique_id_list().c_str());
}

std::optional<Side> parse_side(std::string_view s) {
  if (s == "left") return Side::Left;
  if (s == "right") return Side::Right;
  return std::nullopt;
}

void decode(const json& v, const std::string& path, Side& out) {
  out = decode_enum<Side>(v, path, parse_side, "left, right");
}

std::optional<ClockStart> parse_clock(std::string_view s) {
  if (s == "press") return ClockStart::Press;
  if (s == "movement_onset") return ClockStart::MovementOnset;
  return std::nullopt;
}

void decode(const json& v, const std::string& path, ClockStart& out) {
  out = decode_enum<ClockStart>(v, path, parse_clock, "press, movement_onset");
}

void decode(const json& v, const std::string& path, OperatorStrategy& out) {
  out = decode_enum<OperatorStrategy>(v, path, parse_strategy,
                                      "greedy_saturate, proportional");
}

std::string_view friction_model_id(FrictionModel m) {
  return m == FrictionModel::ClosedForm ? "closed_form" : "compounding";
}

std::optional<FrictionModel> parse_friction_model(std::string_view s) {
  if (s == "closed_form") return FrictionModel::ClosedForm;
  if (s == "compounding") return FrictionModel::Compounding;
  return std::nullopt;
}

void decode(const json& v, const std::string& path, FrictionModel& out) {
  out = decode_enum<FrictionModel>(v, path, parse_friction_model, "closed_form, compounding");
}

std::string_view design_id(SweepDesign d) {
  return d == SweepDesign::SingleTarget ? "single_target" : "clusters";
}

std::optional<SweepDesign> parse_design(std::string_view s) {
  if (s == "single_target") return SweepDesign::SingleTarget;
  if (s == "clusters") return SweepDesign::Clusters;
  return std::nullopt;
}

void decode(const json& v, const std::string& path, SweepDesign& out) {
  out = decode_enum<SweepDesign>(v, path, parse_design, "single_target, clusters");
}

template <typename T>
void decode(const json& v, const std::string& path, std::vector<T>& out) {
  if (!v.is_array()) throw ConfigError(path, "expected an array");
  out.clear();
  for (std::size_t i = 0; i < v.size(); ++i) {
    T item{};
    decode(v[i], path + "[" + std::to_string(i) + "]", item);
    out.push_back(std::move(item));
  }
}

void decode(const json& v, const std::string& path, RateParams& out) {
  Fields f(v, path);
  f.get("dead_zone", out.dead_zone);
  f.get("p", out.p);
  f.get("offset", out.offset);
  f.get("b", out.b);
  f.finish();
}

void decode(const json& v, const std::string& path, ZoneThresholds& out) {
  Fields f(v, path);
  f.get("stop_edge", out.stop_edge);
  f.get("constant_edge", out.constant_edge);
  f.get("flick_edge", out.flick_edge);
  f.get("constant_speed", out.constant_speed);
  f.get("max_time", out.max_time);
  f.get("mu", out.mu);
  f.get("friction_model", out.friction_model);
  f.finish();
}

void decode(const json& v, const std::string& path, DragFlickParams& out) {
  Fields f(v, path);
  f.get("gain", out.gain);
  f.get("flick_multiplier", out.flick_multiplier);
  f.get("damping", out.damping);
  f.finish();
}

void decode(const json& v, const std::string& path, TechniqueParams& out) {
  Fields f(v, path);
  f.get("rate", out.rate);
  f.get("zone", out.zone);
  f.get("drag_flick", out.drag_flick);
  f.get("yaw_half_range_deg", out.yaw_half_range_deg);
  f.get("controller_full_scale_deg_s", out.controller_full_scale_deg_s);
  f.finish();
  validated(path, [&] { out.validate(); });
}

void decode(const json& v, const std::string& path, OperatorParams& out) {
  Fields f(v, path);
  f.get("reaction_delay_s", out.reaction_delay_s);
  f.get("max_head_rate_deg_s", out.max_head_rate_deg_s);
  f.get("yaw_noise_sd_deg", out.yaw_noise_sd_deg);
  f.get("aim_tolerance_deg", out.aim_tolerance_deg);
  f.get("strategy", out.strategy);
  f.get("seed", out.seed);
  f.get("press_duration_s", out.press_duration_s);
  f.get("joystick_rate_per_s", out.joystick_rate_per_s);
  f.get("hand_rate_deg_s", out.hand_rate_deg_s);
  f.get("precise_hand_rate_deg_s", out.precise_hand_rate_deg_s);
  f.get("stroke_range_deg", out.stroke_range_deg);
  f.get("proportional_gain_per_s", out.proportional_gain_per_s);
  f.get("zone_fine_threshold_deg", out.zone_fine_threshold_deg);
  f.get("flick_speed_request", out.flick_speed_request);
  f.finish();
  validated(path, [&] { out.validate(); });
}

void decode(const json& v, const std::string& path, DisplayGeometry& out) {
  Fields f(v, path);
  f.get("radius_cm", out.radius_cm);
  f.get("viewing_angle_deg", out.viewing_angle_deg);
  f.get("max_workspace_speed_deg_s", out.max_workspace_speed_deg_s);
  f.finish();
}

/// Reads trial fields from `f`. With `template_only` the per-trial fields
/// (technique, window, target, seed) are not accepted.
void decode_trial_fields(Fields& f, TrialConfig& out, bool template_only) {
  if (!template_only) {
    f.require("technique", out.technique);
    f.get("window_cm", out.display.window_arc_cm);
    f.get("target_distance_cm", out.target_distance_cm);
    f.get("side", out.side);
    f.get("markers_deg", out.markers_deg);
    f.get("seed", out.seed);
  }
  if (const json* d = f.find("display")) {
    const double window = out.display.window_arc_cm;
    decode(*d, f.child("display"), out.display);
    out.display.window_arc_cm = window;
  }
  f.get("target_width_cm", out.target_width_cm);
  f.get("frame_width_cm", out.frame_width_cm);
  f.get("long_press_ms", out.long_press_ms);
  f.get("tick_hz", out.tick_hz);
  f.get("max_trial_s", out.max_trial_s);
  f.get("clock_start", out.clock_start);
}

void decode(const json& v, const std::string& path, ClusterScenario& out) {
  Fields f(v, path);
  f.require("name", out.name);
  f.require("separations_deg", out.separations_deg);
  f.get("rotation_deg", out.rotation_deg);
  f.finish();
  validated(path, [&] { out.validate(); });
}

void check_schema(Fields& f) {
  int version = kSchemaVersion;
  f.require("schema_version", version);
  if (version != kSchemaVersion) {
    throw ConfigError(f.child("schema_version"),
                      "unsupported version " + std::to_string(version) + ", expected " +
                          std::to_string(kSchemaVersion));
  }
}

json encode_display(const DisplayGeometry& d) {
  return {{"radius_cm", d.radius_cm},
          {"viewing_angle_deg", d.viewing_angle_deg},
          {"max_workspace_speed_deg_s", d.max_workspace_speed_deg_s}};
}

json encode_trial_template(const TrialConfig& c) {
  return {{"display", encode_display(c.display)},
          {"target_width_cm", c.target_width_cm},
          {"frame_width_cm", c.frame_width_cm},
          {"long_press_ms", c.long_press_ms},
          {"tick_hz", c.tick_hz},
          {"max_trial_s", c.max_trial_s},
          {"clock_start", to_string(c.clock_start)}};
}

}  // namespace

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("$", std::string("invalid JSON: ") + e.what());
  }
}

json encode(const TrialConfig& c) {
  json j = encode_trial_template(c);
  j["technique"] = to_string(c.technique);
  j["window_cm"] = c.display.window_arc_cm;
  j["target_distance_cm"] = c.target_distance_cm;
  j["side"] = to_string(c.side);
  j["markers_deg"] = c.markers_deg;
  j["seed"] = c.seed;
  return j;
}

json encode(const TechniqueParams& p) {
  return {{"rate",
           {{"dead_zone", p.rate.dead_zone},
            {"p", p.rate.p},
            {"offset", p.rate.offset},
            {"b", p.rate.b}}},
          {"zone",
           {{"stop_edge", p.zone.stop_edge},
            {"constant_edge", p.zone.constant_edge},
            {"flick_edge", p.zone.flick_edge},
            {"constant_speed", p.zone.constant_speed},
            {"max_time", p.zone.max_time},
            {"mu", p.zone.mu},
            {"friction_model", friction_model_id(p.zone.friction_model)}}},
          {"drag_flick",
           {{"gain", p.drag_flick.gain},
            {"flick_multiplier", p.drag_flick.flick_multiplier},
            {"damping", p.drag_flick.damping}}},
          {"yaw_half_range_deg", p.yaw_half_range_deg},
          {"controller_full_scale_deg_s", p.controller_full_scale_deg_s}};
}

json encode(const OperatorParams& p) {
  json j = {{"reaction_delay_s", p.reaction_delay_s},
            {"max_head_rate_deg_s", p.max_head_rate_deg_s},
            {"yaw_noise_sd_deg", p.yaw_noise_sd_deg},
            {"strategy", to_string(p.strategy)},
            {"seed", p.seed},
            {"press_duration_s", p.press_duration_s},
            {"joystick_rate_per_s", p.joystick_rate_per_s},
            {"hand_rate_deg_s", p.hand_rate_deg_s},
            {"precise_hand_rate_deg_s", p.precise_hand_rate_deg_s},
            {"stroke_range_deg", p.stroke_range_deg},
            {"proportional_gain_per_s", p.proportional_gain_per_s},
            {"zone_fine_threshold_deg", p.zone_fine_threshold_deg}};
  j["aim_tolerance_deg"] = p.aim_tolerance_deg ? json(*p.aim_tolerance_deg) : json(nullptr);
  j["flick_speed_request"] =
      p.flick_speed_request ? json(*p.flick_speed_request) : json(nullptr);
  return j;
}

json encode(const SweepSpec& s) {
  json techniques = json::array();
  for (Technique t : s.techniques) techniques.push_back(to_string(t));
  json clusters = json::array();
  for (const ClusterScenario& c : s.clusters) {
    clusters.push_back(
        {{"name", c.name}, {"separations_deg", c.separations_deg}, {"rotation_deg", c.rotation_deg}});
  }
  return {{"schema_version", s.schema_version},
          {"design", design_id(s.design)},
          {"techniques", techniques},
          {"windows_cm", s.windows_cm},
          {"distances_cm", s.distances_cm},
          {"repetitions", s.repetitions},
          {"clusters", clusters},
          {"permutations", s.permutations},
          {"base_seed", s.base_seed},
          {"trial", encode_trial_template(s.trial)},
          {"technique_params", encode(s.technique_params)},
          {"operator", encode(s.op)}};
}

SweepSpec decode_sweep_spec(const json& j, const std::string& path) {
  SweepSpec s;
  Fields f(j, path);
  check_schema(f);
  f.get("design", s.design);
  f.require("techniques", s.techniques);
  f.require("windows_cm", s.windows_cm);
  f.get("distances_cm", s.distances_cm);
  f.get("repetitions", s.repetitions);
  f.get("clusters", s.clusters);
  f.get("permutations", s.permutations);
  f.get("base_seed", s.base_seed);
  if (const json* t = f.find("trial")) {
    Fields tf(*t, f.child("trial"));
    decode_trial_fields(tf, s.trial, true);
    tf.finish();
  }
  f.get("technique_params", s.technique_params);
  f.get("operator", s.op);
  f.finish();
  validated(path, [&] { s.validate(); });
  return s;
}

}  // namespace detail

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string(), "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <typename Fn>
auto with_file_context(const std::filesystem::path& path, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.path(),
                      std::string(e.what()).substr(e.path().empty() ? 0 : e.path().size() + 2));
  }
}

}  // namespace

SimulationConfig parse_simulation_config(std::string_view json_text) {
  using namespace detail;
  const json j = parse_json(json_text);
  SimulationConfig cfg;
  Fields f(j, "$");
  check_schema(f);
  decode_trial_fields(f, cfg.trial, false);
  f.get("technique_params", cfg.technique_params);
  f.get("operator", cfg.op);
  f.finish();
  validated("$", [&] { cfg.trial.validate(); });
  return cfg;
}

SimulationConfig load_simulation_config(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  return with_file_context(path, [&] { return parse_simulation_config(text); });
}

std::string dump_simulation_config(const SimulationConfig& cfg) {
  using namespace detail;
  json j = encode(cfg.trial);
  j["schema_version"] = kSchemaVersion;
  j["technique_params"] = encode(cfg.technique_params);
  j["operator"] = encode(cfg.op);
  return j.dump(2) + "\n";
}

SweepSpec parse_sweep_spec(std::string_view json_text) {
  return detail::decode_sweep_spec(detail::parse_json(json_text), "$");
}

SweepSpec load_sweep_spec(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  return with_file_context(path, [&] { return parse_sweep_spec(text); });
}

std::string dump_sweep_spec(const SweepSpec& spec) {
  return detail::encode(spec).dump(2) + "\n";
}

TechniqueParams parse_technique_params(std::string_view json_text) {
  TechniqueParams p;
  detail::decode(detail::parse_json(json_text), "$", p);
  return p;
}

}  // namespace headnav
