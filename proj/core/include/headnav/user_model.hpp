#pragma once

// Synthetic operator that closes the loop in place of a human participant.
//
// The operator perceives trial observations after a reaction delay and
// predicts the present by replaying its own inputs through a copy of the
// technique mapping. Every movement decision compares where the workspace
// would come to rest if the operator advanced, held, or returned to neutral
// now, and takes the first option that does not overshoot.
//
// Button policy: head techniques long-press at the start of each target and
// hold until the target is settled; every technique selects with a short
// press once the target has been seen contained for two ticks.

#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <string_view>

#include "headnav/engine.hpp"

namespace headnav {

enum class OperatorStrategy : std::uint8_t { GreedySaturate, Proportional };

[[nodiscard]] std::string_view to_string(OperatorStrategy s);
[[nodiscard]] std::optional<OperatorStrategy> parse_strategy(std::string_view id);

struct OperatorParams {
  double reaction_delay_s = 0.2;
  double max_head_rate_deg_s = 120.0;
  double yaw_noise_sd_deg = 0.5;
  /// Error considered close enough to stop; defaults to half the slack
  /// between frame and target.
  std::optional<double> aim_tolerance_deg;
  OperatorStrategy strategy = OperatorStrategy::GreedySaturate;
  std::uint64_t seed = 0;

  /// Duration of the confirming short press.
  double press_duration_s = 0.1;
  /// Joystick slew limit, full deflections per second.
  double joystick_rate_per_s = 8.0;
  /// Hand (controller) angular speed during drag strokes.
  double hand_rate_deg_s = 150.0;
  /// Hand speed cap for precise drags; keep below the controller full scale.
  double precise_hand_rate_deg_s = 80.0;
  /// Comfortable hand swing for one drag stroke.
  double stroke_range_deg = 60.0;
  /// Proportional strategy: desired workspace speed per degree of error.
  double proportional_gain_per_s = 2.0;
  /// Zone techniques flick when the error exceeds this, otherwise creep in
  /// the Constant zone.
  double zone_fine_threshold_deg = 20.0;
  /// Forces every zone flick to request this speed.
  std::optional<double> flick_speed_request;

  void validate() const;

  friend bool operator==(const OperatorParams&, const OperatorParams&) = default;
};

/// Dynamic-zone dwell that yields `speed`: max_time * (1 - speed).
[[nodiscard]] double dwell_for_flick_speed(double speed, const ZoneThresholds& th);

class SyntheticOperator final : public InputSource {
 public:
  SyntheticOperator(const TrialConfig& cfg, const TechniqueParams& technique_params,
                    const OperatorParams& params);

  InputSample next(const Observation& obs) override;

  /// Speed requested by the most recent zone flick gesture.
  [[nodiscard]] double last_requested_flick_speed() const { return requested_flick_; }
  [[nodiscard]] double aim_tolerance_deg() const { return tolerance_; }

 private:
  enum class Mode : std::uint8_t {
    Start,
    Navigate,
    SelectRelease,
    SelectPress,
    AwaitOutcome,
  };
  enum class ZoneMode : std::uint8_t { Idle, Gesture, Ride, Creep, Retreat };
  enum class DragMode : std::uint8_t { Idle, Stroke, Precise };

  struct PastInput {
    double x = 0.0;
    bool button = false;
    bool enabled = false;
  };

  struct Belief {
    bool perceived = false;
    bool known = false;  // target visible, exact error available
    double error_deg = 0.0;
    TechniqueMapper mapper{};
    std::size_t target_index = 0;
    int additional_attempts = 0;
    int contained_ticks = 0;
  };

  Belief perceive(const Observation& obs);

  double plan_axis_rate(const Belief& b);
  double plan_axis_zone(const Belief& b);
  void plan_drag(const Belief& b);

  [[nodiscard]] bool enabled_after(std::int64_t extra_ticks) const;
  /// Signed workspace travel (deg) from applying `first` for one tick and
  /// then returning the axis to neutral at full rate.
  [[nodiscard]] double travel_if_return(TechniqueMapper model, double first) const;
  [[nodiscard]] bool at_rest(const TechniqueMapper& m, double axis) const;
  [[nodiscard]] double axis_step() const;
  [[nodiscard]] double rate_axis_goal(double error_deg, bool known) const;
  [[nodiscard]] bool ready_to_select(const Belief& b) const;

  double gaussian();
  InputSample emit(double axis_goal);

  TrialConfig cfg_;
  TechniqueParams tp_;
  OperatorParams op_;
  TechniqueFamily family_;
  double dt_;
  int delay_ticks_;
  double tolerance_;
  int short_press_ticks_;

  std::mt19937_64 rng_;
  std::deque<Observation> observations_;
  std::deque<PastInput> inputs_;

  Mode mode_ = Mode::Start;
  ZoneMode zone_mode_ = ZoneMode::Idle;
  DragMode drag_mode_ = DragMode::Idle;

  std::int64_t tick_ = 0;
  double axis_ = 0.0;       // emitted normalized input (head x or joystick)
  double yaw_deg_ = 0.0;    // emitted yaw
  double hand_deg_ = 0.0;   // controller cursor angle for drag
  double hand_x_ = 0.0;     // emitted normalized controller velocity
  bool button_ = false;
  std::int64_t press_start_ = 0;
  int select_ticks_ = 0;

  std::size_t target_index_ = 0;
  int attempts_seen_ = 0;

  // Zone gesture bookkeeping.
  int gesture_side_ = 0;
  int gesture_dwell_goal_ = 0;
  int gesture_dynamic_ticks_ = 0;
  double requested_flick_ = 0.0;
  int creep_side_ = 0;
};

/// Runs one trial with a SyntheticOperator seeded from cfg.seed and params.seed.
[[nodiscard]] TrialResult run_trial(const TrialConfig& cfg, const OperatorParams& op,
                                    const TechniqueParams& params,
                                    const RunOptions& options = {});

/// splitmix64 finalizer; the documented per-trial seed mixer.
[[nodiscard]] std::uint64_t splitmix64(std::uint64_t x);
/// Seed of trial `index` under sweep seed `base`.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

}  // namespace headnav
