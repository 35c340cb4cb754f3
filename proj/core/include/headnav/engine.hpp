#pragma once

// Fixed-timestep closed-loop trial simulation.
//
// Sign convention: a target's display angle is its workspace angle minus the
// workspace rotation, wrapped to (-180, 180]. Positive normalized velocity
// rotates the workspace so that targets on the right move toward the centre,
// i.e. turning the head toward a target brings it in.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "headnav/geometry.hpp"
#include "headnav/technique.hpp"

namespace headnav {

enum class Side : std::uint8_t { Left, Right };
enum class ClockStart : std::uint8_t { Press, MovementOnset };
enum class Containment : std::uint8_t { Outside, Partial, Contained };

[[nodiscard]] std::string_view to_string(Side side);
[[nodiscard]] std::string_view to_string(ClockStart clock);
[[nodiscard]] std::string_view to_string(Containment c);

struct TrialConfig {
  Technique technique = Technique::Polynomial;
  /// display.window_arc_cm is the visible display window.
  DisplayGeometry display{};
  double target_distance_cm = 500.0;
  Side side = Side::Right;
  /// Optional multi-target sequence: workspace angles (deg, relative to the
  /// display centre at trial start) visited in order. When non-empty it
  /// replaces target_distance_cm/side.
  std::vector<double> markers_deg;
  double target_width_cm = 30.0;
  double frame_width_cm = 70.0;
  int long_press_ms = 300;
  int tick_hz = 120;
  /// Non-convergence guard, simulated seconds.
  double max_trial_s = 120.0;
  ClockStart clock_start = ClockStart::Press;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
  /// Target workspace angles in visiting order.
  [[nodiscard]] std::vector<double> target_angles_deg() const;

  friend bool operator==(const TrialConfig&, const TrialConfig&) = default;
};

/// Angular tolerances derived from frame and target widths.
struct FrameGeometry {
  double target_deg = 0.0;
  double frame_deg = 0.0;
  /// Max centre distance that still counts as fully contained.
  double contained_deg = 0.0;
  /// Centre distance below which target and frame overlap.
  double overlap_deg = 0.0;
};

[[nodiscard]] FrameGeometry frame_geometry(const TrialConfig& cfg);

[[nodiscard]] Containment containment(double target_center_deg,
                                      double frame_center_deg,
                                      const FrameGeometry& frame);

/// Crossings count entries into Contained from any other state.
[[nodiscard]] constexpr int count_crossing(Containment prev, Containment now) {
  return (now == Containment::Contained && prev != Containment::Contained) ? 1 : 0;
}

/// Explicit Euler step of the workspace rotation.
[[nodiscard]] WorkspaceAngle integrate(WorkspaceAngle workspace, double velocity,
                                       const DisplayGeometry& geom, double dt);

struct InputSample {
  double yaw_deg = 0.0;
  /// Normalized controller angular velocity in [-1, 1].
  double controller_velocity = 0.0;
  double joystick = 0.0;
  bool button = false;

  friend bool operator==(const InputSample&, const InputSample&) = default;
};

/// Trial state visible to an input source before it produces tick `tick`.
struct Observation {
  std::int64_t tick = 0;
  double dt = 0.0;
  Technique technique = Technique::Polynomial;
  /// Signed display angle of the current target; positive is right of centre.
  double error_deg = 0.0;
  bool target_visible = false;
  Containment containment = Containment::Outside;
  int contained_ticks = 0;
  std::size_t target_index = 0;
  std::size_t target_count = 1;
  int additional_attempts = 0;
  bool button_held = false;
  /// Ticks since the current press began; 0 when the button is up.
  std::int64_t press_ticks = 0;
  /// Mapping state after the previous tick.
  TechniqueMapper mapper{};
  double max_workspace_speed_deg_s = 100.0;
  double contained_deg = 0.0;
  bool finished = false;
};

class InputSource {
 public:
  virtual ~InputSource() = default;
  virtual InputSample next(const Observation& obs) = 0;
};

/// Whether the mapping may move the workspace this tick.
[[nodiscard]] bool movement_enabled(Technique technique, bool button_held,
                                    std::int64_t press_ticks, int long_press_ms,
                                    int tick_hz);

/// Long press: held strictly longer than long_press_ms.
[[nodiscard]] bool is_long_press(std::int64_t press_ticks, int long_press_ms, int tick_hz);
/// Short press: released strictly before long_press_ms.
[[nodiscard]] bool is_short_press(std::int64_t press_ticks, int long_press_ms, int tick_hz);

struct TickRow {
  std::int64_t tick = 0;
  double time_s = 0.0;
  double yaw_deg = 0.0;
  double x_norm = 0.0;
  std::string zone_or_phase;
  double y_norm = 0.0;
  double workspace_deg = 0.0;
  Containment containment = Containment::Outside;
  bool button = false;
  /// '|'-joined event names, empty when nothing happened.
  std::string event;

  friend bool operator==(const TickRow&, const TickRow&) = default;
};

struct TrialResult {
  bool success = false;
  double trial_time_s = 0.0;
  double total_head_rotation_deg = 0.0;
  int crossings = 0;
  int additional_attempts = 0;
  int targets_completed = 0;
  std::int64_t ticks = 0;
  double final_workspace_deg = 0.0;
  double final_velocity = 0.0;
  std::string failure_reason;
  std::vector<TickRow> tick_log;

  friend bool operator==(const TrialResult&, const TrialResult&) = default;
};

struct RunOptions {
  bool record_ticks = false;
};

[[nodiscard]] TrialResult run_trial(const TrialConfig& cfg, InputSource& source,
                                    const TechniqueParams& params,
                                    const RunOptions& options = {});

}  // namespace headnav
