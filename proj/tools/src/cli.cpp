#include "headnav/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "headnav/config_io.hpp"
#include "headnav/harness.hpp"
#include "headnav/trace_io.hpp"
#include "headnav/user_model.hpp"

namespace headnav::cli {

namespace {

using nlohmann::json;

constexpr const char* kOutDirEnv = "HEADNAV_OUT_DIR";

/// Usage problem detected after CLI11 parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string sig6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v + 0.0);
  return buf;
}

double round6(double v) { return std::strtod(sig6(v).c_str(), nullptr); }

Technique technique_or_throw(const std::string& id) {
  const auto t = parse_technique(id);
  if (!t) {
    throw UsageError("unknown technique '" + id + "'; expected one of: " + technique_id_list());
  }
  return *t;
}

json result_json(const TrialConfig& cfg, const TrialResult& r) {
  return {{"technique", to_string(cfg.technique)},
          {"seed", cfg.seed},
          {"success", r.success},
          {"trial_time_s", round6(r.trial_time_s)},
          {"total_head_rotation_deg", round6(r.total_head_rotation_deg)},
          {"crossings", r.crossings},
          {"additional_attempts", r.additional_attempts},
          {"targets_completed", r.targets_completed},
          {"ticks", r.ticks},
          {"final_workspace_deg", round6(r.final_workspace_deg)},
          {"final_velocity", round6(r.final_velocity)},
          {"failure_reason", r.failure_reason}};
}

// eval-fn -------------------------------------------------------------------

struct EvalArgs {
  std::string technique;
  int grid = 0;
  std::vector<std::string> params;
};

std::map<std::string, double> parse_params(const std::vector<std::string>& raw) {
  std::map<std::string, double> out;
  for (const std::string& kv : raw) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw UsageError("--param expects key=value, got '" + kv + "'");
    }
    const std::string key = kv.substr(0, eq);
    try {
      out[key] = parse_double(std::string_view(kv).substr(eq + 1));
    } catch (const std::invalid_argument& e) {
      throw UsageError("--param " + key + ": " + e.what());
    }
  }
  return out;
}

/// Consumes recognised keys from `params` into the matching fields.
class ParamBinder {
 public:
  explicit ParamBinder(std::map<std::string, double>& params) : params_(params) {}

  void bind(const char* key, double& field) {
    const auto it = params_.find(key);
    if (it == params_.end()) return;
    field = it->second;
    params_.erase(it);
  }

  void finish(Technique t) const {
    if (params_.empty()) return;
    throw UsageError("unknown parameter '" + params_.begin()->first + "' for technique " +
                     std::string(to_string(t)));
  }

 private:
  std::map<std::string, double>& params_;
};

int eval_fn(const EvalArgs& args, std::ostream& out) {
  const Technique technique = technique_or_throw(args.technique);
  auto params = parse_params(args.params);
  ParamBinder bind(params);

  TechniqueParams tp;
  double t = 0.0;
  double t2 = 0.0;
  double y_current = 0.0;
  double t_f = -1.0;
  switch (family_of(technique)) {
    case TechniqueFamily::Rate:
    case TechniqueFamily::PushRelease:
      bind.bind("dead_zone", tp.rate.dead_zone);
      bind.bind("p", tp.rate.p);
      bind.bind("offset", tp.rate.offset);
      bind.bind("b", tp.rate.b);
      break;
    case TechniqueFamily::Zone:
      bind.bind("stop_edge", tp.zone.stop_edge);
      bind.bind("constant_edge", tp.zone.constant_edge);
      bind.bind("flick_edge", tp.zone.flick_edge);
      bind.bind("constant_speed", tp.zone.constant_speed);
      bind.bind("max_time", tp.zone.max_time);
      bind.bind("mu", tp.zone.mu);
      bind.bind("t", t);
      bind.bind("t2", t2);
      bind.bind("y_current", y_current);
      break;
    case TechniqueFamily::DragFlick:
      bind.bind("gain", tp.drag_flick.gain);
      bind.bind("flick_multiplier", tp.drag_flick.flick_multiplier);
      bind.bind("damping", tp.drag_flick.damping);
      bind.bind("t_f", t_f);
      break;
  }
  bind.finish(technique);
  tp.validate();

  const auto eval = [&](double x) {
    switch (family_of(technique)) {
      case TechniqueFamily::Rate:
        return rate_function(technique, x, tp.rate);
      case TechniqueFamily::PushRelease:
        return push_release(x, tp.rate);
      case TechniqueFamily::Zone:
        return zone_law(variant_of(technique), x, t, t2, y_current, tp.zone);
      case TechniqueFamily::DragFlick:
        if (t_f >= 0.0) return flick_velocity(x, t_f, tp.drag_flick);
        return std::clamp(tp.drag_flick.gain * x, -1.0, 1.0);
    }
    return 0.0;
  };

  for (int i = 0; i <= args.grid; ++i) {
    const double x = (2.0 * i - args.grid) / args.grid;
    out << sig6(x) << ',' << sig6(eval(x)) << '\n';
  }
  return kOk;
}

// simulate / replay ---------------------------------------------------------

void write_trace(const std::string& path, const TrialResult& r) {
  if (path.empty()) return;
  write_tick_log(std::filesystem::path(path), r.tick_log);
}

int simulate(const std::string& config, const std::string& trace_out, std::ostream& out) {
  const SimulationConfig cfg = load_simulation_config(config);
  RunOptions opts;
  opts.record_ticks = !trace_out.empty();
  const TrialResult r = run_trial(cfg.trial, cfg.op, cfg.technique_params, opts);
  write_trace(trace_out, r);
  out << result_json(cfg.trial, r).dump(2) << '\n';
  return kOk;
}

int replay(const std::string& trace, const std::string& technique_id,
           const std::string& config, const std::string& trace_out, std::ostream& out) {
  const Technique technique = technique_or_throw(technique_id);
  SimulationConfig cfg;
  if (!config.empty()) cfg = load_simulation_config(config);
  cfg.trial.technique = technique;
  cfg.trial.validate();

  TraceSource source(read_input_trace(std::filesystem::path(trace)));
  RunOptions opts;
  opts.record_ticks = !trace_out.empty();
  const TrialResult r = run_trial(cfg.trial, source, cfg.technique_params, opts);
  write_trace(trace_out, r);
  out << result_json(cfg.trial, r).dump(2) << '\n';
  return kOk;
}

// sweep ---------------------------------------------------------------------

int sweep(const std::string& spec_path, std::string out_dir, unsigned jobs, bool verbose,
          std::ostream& out) {
  if (out_dir.empty()) {
    if (const char* env = std::getenv(kOutDirEnv); env != nullptr && *env != '\0') {
      out_dir = env;
    } else {
      throw UsageError(std::string("--out is required when ") + kOutDirEnv + " is not set");
    }
  }
  const SweepSpec spec = load_sweep_spec(spec_path);
  const SweepResults results = run_sweep(spec, jobs);
  write_results(out_dir, spec, results);

  std::size_t ok = 0;
  for (const TrialRecord& r : results.trials) ok += r.success ? 1 : 0;
  out << "trials: " << results.trials.size() << ", succeeded: " << ok << ", out: " << out_dir
      << '\n';
  if (verbose) {
    out << "technique,window_cm,distance_cm,group,n,mean_time_s,ci_low,ci_high\n";
    for (const SummaryRow& s : results.summary) {
      out << to_string(s.technique) << ',' << sig6(s.window_cm) << ',' << sig6(s.distance_cm)
          << ',' << s.group << ',' << s.n << ',' << sig6(s.trial_time_s.mean) << ','
          << sig6(s.trial_time_s.ci_low) << ',' << sig6(s.trial_time_s.ci_high) << '\n';
    }
  }
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Head-based 360-degree workspace navigation simulator"};
  app.name("headnav");
  app.require_subcommand(1);
  app.footer("Technique ids: " + technique_id_list());
  const std::string technique_help = "Technique id: " + technique_id_list();

  EvalArgs eval_args;
  auto* eval_cmd = app.add_subcommand("eval-fn", "Tabulate a transfer function over [-1, 1]");
  eval_cmd->add_option("--technique", eval_args.technique, technique_help)->required();
  eval_cmd->add_option("--grid", eval_args.grid, "Number of intervals (n+1 rows)")
      ->required()
      ->check(CLI::PositiveNumber);
  eval_cmd->add_option("--param", eval_args.params,
                       "Override a constant, key=value (repeatable). Zone techniques "
                       "also take t, t2 and y_current; drag_flick takes t_f to "
                       "tabulate the flick branch");

  std::string sim_config;
  std::string sim_trace_out;
  auto* sim_cmd = app.add_subcommand("simulate", "Run one trial with the synthetic operator");
  sim_cmd->add_option("--config", sim_config, "Trial config JSON")->required();
  sim_cmd->add_option("--trace-out", sim_trace_out, "Write the tick log CSV here");

  std::string sweep_spec;
  std::string sweep_out;
  unsigned sweep_jobs = 1;
  bool verbose = false;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run an experiment sweep");
  sweep_cmd->add_option("--spec", sweep_spec, "Sweep spec JSON")->required();
  sweep_cmd->add_option("--out", sweep_out,
                        std::string("Output directory (default: $") + kOutDirEnv + ")");
  sweep_cmd->add_option("--jobs", sweep_jobs, "Worker threads, 0 = all cores");
  sweep_cmd->add_flag("-v,--verbose", verbose, "Print the summary table");

  std::string replay_trace;
  std::string replay_technique;
  std::string replay_config;
  std::string replay_trace_out;
  auto* replay_cmd = app.add_subcommand("replay", "Run one trial from a recorded input trace");
  replay_cmd->add_option("--trace", replay_trace, "Input trace or tick log CSV")->required();
  replay_cmd->add_option("--technique", replay_technique, technique_help)->required();
  replay_cmd->add_option("--config", replay_config,
                         "Trial config JSON; its technique is replaced by --technique");
  replay_cmd->add_option("--trace-out", replay_trace_out, "Write the tick log CSV here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (*eval_cmd) return eval_fn(eval_args, out);
    if (*sim_cmd) return simulate(sim_config, sim_trace_out, out);
    if (*sweep_cmd) return sweep(sweep_spec, sweep_out, sweep_jobs, verbose, out);
    if (*replay_cmd) {
      return replay(replay_trace, replay_technique, replay_config, replay_trace_out, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const TraceError& e) {
    err << "trace error: " << e.what() << '\n';
    return kConfig;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntime;
  }
  return kUsage;
}

}  // namespace headnav::cli
