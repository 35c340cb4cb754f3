#pragma once

// Sweep expansion, parallel execution, aggregation and result files.
//
// Expansion order is lexicographic: technique, window, distance, repetition
// for the single-target design; technique, cluster, permutation for the
// cluster design. Trial i is seeded with derive_seed(base_seed, i), so
// results do not depend on the number of workers.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "headnav/engine.hpp"
#include "headnav/user_model.hpp"

namespace headnav {

enum class SweepDesign : std::uint8_t { SingleTarget, Clusters };

struct ClusterScenario {
  std::string name;
  /// Gaps between consecutive markers, degrees.
  std::vector<double> separations_deg;
  /// Workspace angle of the cluster centre relative to the start view.
  double rotation_deg = 180.0;

  void validate() const;
  /// Marker workspace angles, cluster centred on rotation_deg.
  [[nodiscard]] std::vector<double> marker_angles_deg() const;

  friend bool operator==(const ClusterScenario&, const ClusterScenario&) = default;
};

struct SweepSpec {
  int schema_version = 1;
  SweepDesign design = SweepDesign::SingleTarget;
  std::vector<Technique> techniques;
  std::vector<double> windows_cm;
  /// Single-target design only.
  std::vector<double> distances_cm;
  /// Single-target design: even, alternating left (even index) and right.
  int repetitions = 8;
  /// Cluster design only.
  std::vector<ClusterScenario> clusters;
  /// Cluster design: visiting orders per cluster, cycling through all
  /// permutations of the markers in lexicographic order.
  int permutations = 24;
  std::uint64_t base_seed = 0;
  /// Template for every trial; technique, window, target and seed are
  /// overwritten during expansion.
  TrialConfig trial{};
  TechniqueParams technique_params{};
  OperatorParams op{};

  /// Throws std::invalid_argument describing the first problem.
  void validate() const;

  friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

struct TrialSpec {
  std::size_t trial_id = 0;
  TrialConfig config;
  /// Left/right for single targets, "<cluster>#<permutation>" for clusters.
  std::string side_label;
  double distance_cm = 0.0;
  /// Cluster name, empty for single targets.
  std::string group;
};

[[nodiscard]] std::vector<TrialSpec> expand(const SweepSpec& spec);

struct TrialRecord {
  std::size_t trial_id = 0;
  Technique technique = Technique::Polynomial;
  double window_cm = 0.0;
  double distance_cm = 0.0;
  std::string side;
  std::uint64_t seed = 0;
  double trial_time_s = 0.0;
  double head_rotation_deg = 0.0;
  int crossings = 0;
  int additional_attempts = 0;
  bool success = false;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

struct Stat {
  double mean = 0.0;
  double sd = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;

  friend bool operator==(const Stat&, const Stat&) = default;
};

/// 95% t-interval; half-width 0 when fewer than two values. Empty input
/// yields all zeros.
[[nodiscard]] Stat describe(const std::vector<double>& values);

struct SummaryRow {
  Technique technique = Technique::Polynomial;
  double window_cm = 0.0;
  double distance_cm = 0.0;
  /// Cluster name for the cluster design, empty otherwise.
  std::string group;
  /// Successful trials the statistics are computed over.
  std::size_t n = 0;
  std::size_t n_total = 0;
  Stat trial_time_s;
  Stat head_rotation_deg;
  Stat crossings;
  Stat additional_attempts;

  friend bool operator==(const SummaryRow&, const SummaryRow&) = default;
};

struct SweepResults {
  std::vector<TrialRecord> trials;
  std::vector<SummaryRow> summary;
};

/// Runs every expanded trial on `jobs` workers (0 = hardware concurrency).
/// Trials that throw are recorded as failures.
[[nodiscard]] SweepResults run_sweep(const SweepSpec& spec, unsigned jobs = 1);

/// Groups by (technique, window, distance, group) in first-seen order.
[[nodiscard]] std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& trials,
                                                const std::vector<TrialSpec>& specs);

inline constexpr std::string_view kTrialsHeader =
    "trial_id,technique,window_cm,distance_cm,side,seed,trial_time_s,head_rotation_deg,"
    "crossings,additional_attempts,success";

void write_trials_csv(std::ostream& out, const std::vector<TrialRecord>& trials);
[[nodiscard]] std::vector<TrialRecord> read_trials_csv(std::istream& in);

/// Writes `trials.csv` and `summary.json` (summary plus full spec echo) into
/// `dir`, creating it when needed.
void write_results(const std::filesystem::path& dir, const SweepSpec& spec,
                   const SweepResults& results);

struct StoredResults {
  SweepSpec spec;
  SweepResults results;
};

[[nodiscard]] StoredResults read_results(const std::filesystem::path& dir);

}  // namespace headnav
