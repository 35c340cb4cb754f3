#include "headnav/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include <boost/math/distributions/students_t.hpp>

#include "config_json.hpp"
#include "headnav/trace_io.hpp"

namespace headnav {

namespace {

using detail::json;

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void ClusterScenario::validate() const {
  if (name.empty()) throw std::invalid_argument("cluster name must not be empty");
  if (name.find_first_of(",#\n") != std::string::npos) {
    throw std::invalid_argument("cluster name must not contain ',', '#' or newlines");
  }
  if (separations_deg.empty()) throw std::invalid_argument("separations_deg must not be empty");
  double total = 0.0;
  for (double s : separations_deg) {
    if (!positive_finite(s)) throw std::invalid_argument("separations_deg must be > 0");
    total += s;
  }
  if (total >= 360.0) throw std::invalid_argument("separations_deg must sum to < 360");
  if (!std::isfinite(rotation_deg)) throw std::invalid_argument("rotation_deg must be finite");
}

std::vector<double> ClusterScenario::marker_angles_deg() const {
  const double span = std::accumulate(separations_deg.begin(), separations_deg.end(), 0.0);
  std::vector<double> angles;
  double at = rotation_deg - span / 2.0;
  angles.push_back(at);
  for (double s : separations_deg) {
    at += s;
    angles.push_back(at);
  }
  return angles;
}

void SweepSpec::validate() const {
  if (schema_version != 1) throw std::invalid_argument("schema_version must be 1");
  if (techniques.empty()) throw std::invalid_argument("techniques must not be empty");
  if (windows_cm.empty()) throw std::invalid_argument("windows_cm must not be empty");
  for (double w : windows_cm) {
    if (!positive_finite(w)) throw std::invalid_argument("windows_cm entries must be > 0");
  }
  TrialConfig probe = trial;
  probe.technique = techniques.front();
  probe.display.window_arc_cm = windows_cm.front();
  if (design == SweepDesign::SingleTarget) {
    if (distances_cm.empty()) throw std::invalid_argument("distances_cm must not be empty");
    for (double d : distances_cm) {
      if (!positive_finite(d)) throw std::invalid_argument("distances_cm entries must be > 0");
    }
    if (repetitions < 2 || repetitions % 2 != 0) {
      throw std::invalid_argument("repetitions must be even and >= 2 to balance sides");
    }
    probe.target_distance_cm = distances_cm.front();
  } else {
    if (clusters.empty()) throw std::invalid_argument("clusters must not be empty");
    if (permutations < 1) throw std::invalid_argument("permutations must be >= 1");
    for (const ClusterScenario& c : clusters) c.validate();
    probe.markers_deg = clusters.front().marker_angles_deg();
  }
  probe.validate();
  technique_params.validate();
  op.validate();
}

std::vector<TrialSpec> expand(const SweepSpec& spec) {
  spec.validate();
  std::vector<TrialSpec> out;
  const auto add = [&](TrialConfig cfg, std::string label, double distance, std::string group) {
    TrialSpec t;
    t.trial_id = out.size();
    cfg.seed = derive_seed(spec.base_seed, t.trial_id);
    t.config = std::move(cfg);
    t.side_label = std::move(label);
    t.distance_cm = distance;
    t.group = std::move(group);
    out.push_back(std::move(t));
  };

  for (Technique technique : spec.techniques) {
    for (double window : spec.windows_cm) {
      TrialConfig base = spec.trial;
      base.technique = technique;
      base.display.window_arc_cm = window;
      base.markers_deg.clear();
      if (spec.design == SweepDesign::SingleTarget) {
        for (double distance : spec.distances_cm) {
          for (int rep = 0; rep < spec.repetitions; ++rep) {
            TrialConfig cfg = base;
            cfg.target_distance_cm = distance;
            cfg.side = rep % 2 == 0 ? Side::Left : Side::Right;
            std::string label(to_string(cfg.side));
            add(std::move(cfg), std::move(label), distance, "");
          }
        }
      } else {
        for (const ClusterScenario& cluster : spec.clusters) {
          const std::vector<double> markers = cluster.marker_angles_deg();
          std::vector<std::size_t> order(markers.size());
          std::iota(order.begin(), order.end(), std::size_t{0});
          for (int k = 0; k < spec.permutations; ++k) {
            TrialConfig cfg = base;
            for (std::size_t i : order) cfg.markers_deg.push_back(markers[i]);
            add(std::move(cfg), cluster.name + "#" + std::to_string(k), 0.0, cluster.name);
            if (!std::next_permutation(order.begin(), order.end())) {
              std::iota(order.begin(), order.end(), std::size_t{0});
            }
          }
        }
      }
    }
  }
  return out;
}

Stat describe(const std::vector<double>& values) {
  Stat s;
  const std::size_t n = values.size();
  if (n == 0) return s;
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
  if (n < 2) {
    s.ci_low = s.ci_high = s.mean;
    return s;
  }
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.sd = std::sqrt(ss / static_cast<double>(n - 1));
  const boost::math::students_t dist(static_cast<double>(n - 1));
  const double t = boost::math::quantile(boost::math::complement(dist, 0.025));
  const double half = t * s.sd / std::sqrt(static_cast<double>(n));
  s.ci_low = s.mean - half;
  s.ci_high = s.mean + half;
  return s;
}

std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& trials,
                                  const std::vector<TrialSpec>& specs) {
  struct Group {
    SummaryRow row;
    std::vector<double> time, rotation, crossings, attempts;
  };
  std::vector<Group> groups;
  for (std::size_t i = 0; i < trials.size(); ++i) {
    const TrialRecord& r = trials[i];
    const std::string group = i < specs.size() ? specs[i].group : std::string{};
    auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& g) {
      return g.row.technique == r.technique && g.row.window_cm == r.window_cm &&
             g.row.distance_cm == r.distance_cm && g.row.group == group;
    });
    if (it == groups.end()) {
      Group g;
      g.row.technique = r.technique;
      g.row.window_cm = r.window_cm;
      g.row.distance_cm = r.distance_cm;
      g.row.group = group;
      groups.push_back(std::move(g));
      it = std::prev(groups.end());
    }
    ++it->row.n_total;
    if (!r.success) continue;
    ++it->row.n;
    it->time.push_back(r.trial_time_s);
    it->rotation.push_back(r.head_rotation_deg);
    it->crossings.push_back(r.crossings);
    it->attempts.push_back(r.additional_attempts);
  }
  std::vector<SummaryRow> rows;
  rows.reserve(groups.size());
  for (Group& g : groups) {
    g.row.trial_time_s = describe(g.time);
    g.row.head_rotation_deg = describe(g.rotation);
    g.row.crossings = describe(g.crossings);
    g.row.additional_attempts = describe(g.attempts);
    rows.push_back(std::move(g.row));
  }
  return rows;
}

SweepResults run_sweep(const SweepSpec& spec, unsigned jobs) {
  const std::vector<TrialSpec> specs = expand(spec);
  SweepResults results;
  results.trials.resize(specs.size());

  const auto run_one = [&](std::size_t i) {
    const TrialSpec& t = specs[i];
    TrialRecord& rec = results.trials[i];
    rec.trial_id = t.trial_id;
    rec.technique = t.config.technique;
    rec.window_cm = t.config.display.window_arc_cm;
    rec.distance_cm = t.distance_cm;
    rec.side = t.side_label;
    rec.seed = t.config.seed;
    try {
      const TrialResult r = run_trial(t.config, spec.op, spec.technique_params);
      rec.trial_time_s = r.trial_time_s;
      rec.head_rotation_deg = r.total_head_rotation_deg;
      rec.crossings = r.crossings;
      rec.additional_attempts = r.additional_attempts;
      rec.success = r.success;
    } catch (const std::exception&) {
      rec.success = false;
    }
  };

  if (jobs == 0) jobs = std::max(1U, std::thread::hardware_concurrency());
  const std::size_t workers = std::min<std::size_t>(jobs, specs.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < specs.size(); ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < specs.size(); i = next++) run_one(i);
      });
    }
  }

  results.summary = summarize(results.trials, specs);
  return results;
}

void write_trials_csv(std::ostream& out, const std::vector<TrialRecord>& trials) {
  out << kTrialsHeader << '\n';
  for (const TrialRecord& r : trials) {
    out << r.trial_id << ',' << to_string(r.technique) << ',' << format_double(r.window_cm)
        << ',' << format_double(r.distance_cm) << ',' << r.side << ',' << r.seed << ','
        << format_double(r.trial_time_s) << ',' << format_double(r.head_rotation_deg) << ','
        << r.crossings << ',' << r.additional_attempts << ',' << (r.success ? 1 : 0) << '\n';
  }
}

std::vector<TrialRecord> read_trials_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  const auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  };
  if (!next_line() || line != kTrialsHeader) throw TraceError("missing trials.csv header", line_no);

  const auto to_u64 = [](std::string_view s) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
      throw std::invalid_argument("expected an unsigned integer, got '" + std::string(s) + "'");
    }
    return v;
  };

  std::vector<TrialRecord> trials;
  while (next_line()) {
    try {
      const auto f = split_csv(line);
      if (f.size() != 11) {
        throw std::invalid_argument("expected 11 fields, got " + std::to_string(f.size()));
      }
      TrialRecord r;
      r.trial_id = to_u64(f[0]);
      const auto technique = parse_technique(f[1]);
      if (!technique) throw std::invalid_argument("unknown technique '" + std::string(f[1]) + "'");
      r.technique = *technique;
      r.window_cm = parse_double(f[2]);
      r.distance_cm = parse_double(f[3]);
      r.side = std::string(f[4]);
      r.seed = to_u64(f[5]);
      r.trial_time_s = parse_double(f[6]);
      r.head_rotation_deg = parse_double(f[7]);
      r.crossings = static_cast<int>(to_u64(f[8]));
      r.additional_attempts = static_cast<int>(to_u64(f[9]));
      if (f[10] != "0" && f[10] != "1") throw std::invalid_argument("success must be 0 or 1");
      r.success = f[10] == "1";
      trials.push_back(std::move(r));
    } catch (const std::invalid_argument& e) {
      throw TraceError("line " + std::to_string(line_no) + ": " + e.what(), line_no);
    }
  }
  return trials;
}

namespace {

json encode_stat(const Stat& s) {
  return {{"mean", s.mean}, {"sd", s.sd}, {"ci95", {s.ci_low, s.ci_high}}};
}

Stat decode_stat(const json& j) {
  Stat s;
  s.mean = j.at("mean").get<double>();
  s.sd = j.at("sd").get<double>();
  s.ci_low = j.at("ci95").at(0).get<double>();
  s.ci_high = j.at("ci95").at(1).get<double>();
  return s;
}

}  // namespace

void write_results(const std::filesystem::path& dir, const SweepSpec& spec,
                   const SweepResults& results) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create '" + dir.string() + "': " + ec.message());

  const auto open = [](const std::filesystem::path& p) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + p.string() + "' for writing");
    return out;
  };

  {
    const auto path = dir / "trials.csv";
    std::ofstream out = open(path);
    write_trials_csv(out, results.trials);
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
  }

  json rows = json::array();
  for (const SummaryRow& r : results.summary) {
    rows.push_back({{"technique", to_string(r.technique)},
                    {"window_cm", r.window_cm},
                    {"distance_cm", r.distance_cm},
                    {"group", r.group},
                    {"n", r.n},
                    {"n_total", r.n_total},
                    {"trial_time_s", encode_stat(r.trial_time_s)},
                    {"head_rotation_deg", encode_stat(r.head_rotation_deg)},
                    {"crossings", encode_stat(r.crossings)},
                    {"additional_attempts", encode_stat(r.additional_attempts)}});
  }
  const json doc = {{"schema_version", 1},
                    {"trial_count", results.trials.size()},
                    {"config", detail::encode(spec)},
                    {"summary", rows}};
  const auto path = dir / "summary.json";
  std::ofstream out = open(path);
  out << doc.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

StoredResults read_results(const std::filesystem::path& dir) {
  StoredResults stored;
  {
    const auto path = dir / "trials.csv";
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
    try {
      stored.results.trials = read_trials_csv(in);
    } catch (const TraceError& e) {
      throw TraceError(path.string() + ": " + e.what(), e.line());
    }
  }

  const auto path = dir / "summary.json";
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  try {
    const json doc = detail::parse_json(text.str());
    stored.spec = detail::decode_sweep_spec(doc.at("config"), "$.config");
    for (const json& r : doc.at("summary")) {
      SummaryRow row;
      const auto technique = parse_technique(r.at("technique").get<std::string>());
      if (!technique) throw ConfigError("$.summary", "unknown technique");
      row.technique = *technique;
      row.window_cm = r.at("window_cm").get<double>();
      row.distance_cm = r.at("distance_cm").get<double>();
      row.group = r.at("group").get<std::string>();
      row.n = r.at("n").get<std::size_t>();
      row.n_total = r.at("n_total").get<std::size_t>();
      row.trial_time_s = decode_stat(r.at("trial_time_s"));
      row.head_rotation_deg = decode_stat(r.at("head_rotation_deg"));
      row.crossings = decode_stat(r.at("crossings"));
      row.additional_attempts = decode_stat(r.at("additional_attempts"));
      stored.results.summary.push_back(std::move(row));
    }
  } catch (const json::exception& e) {
    throw ConfigError(path.string(), e.what());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.path(), e.what());
  }
  return stored;
}

}  // namespace headnav
