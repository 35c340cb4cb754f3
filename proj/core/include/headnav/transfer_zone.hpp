#pragma once

// Zone-control transfer functions.
//
// The normalized yaw range is split symmetrically into four zones:
//
//   Stop      |x| <= stop_edge                    output 0, state cleared
//   Constant  stop_edge < |x| <= constant_edge    output sign(x) * c
//   Dynamic   constant_edge < |x| <= flick_edge   variant-specific
//   Flick     |x| > flick_edge                    flick on entry, then hold
//
// A flick fires on the tick the head moves from Dynamic into Flick. Its speed
// falls linearly with the dwell time t spent in Dynamic beforehand, reaching
// zero at max_time. Entering Flick without passing through Dynamic fires a
// zero-speed flick.

#include <cstdint>
#include <string_view>

namespace headnav {

enum class ZoneKind : std::uint8_t { Stop, Constant, Dynamic, Flick };

struct Zone {
  ZoneKind kind = ZoneKind::Stop;
  /// -1 left, +1 right, 0 for Stop.
  int side = 0;

  friend bool operator==(const Zone&, const Zone&) = default;
};

enum class ZoneVariant : std::uint8_t { Continuous, Friction, Additive, Interrupted };

/// How friction decays the held velocity inside the Dynamic zone.
enum class FrictionModel : std::uint8_t {
  /// y = sign(y0) * max(0, |y0| - mu * t2), y0 the velocity at Dynamic entry.
  ClosedForm,
  /// y <- y - sign(y) * mu * t2 every tick, clamped at zero. Tick-rate dependent.
  Compounding,
};

struct ZoneThresholds {
  double stop_edge = 0.11;
  double constant_edge = 0.22;
  double flick_edge = 0.44;
  /// Constant-zone speed c.
  double constant_speed = 0.10;
  /// Dwell at which the flick speed reaches zero, seconds.
  double max_time = 2.0;
  /// Friction coefficient, normalized velocity per second.
  double mu = 0.03;
  FrictionModel friction_model = FrictionModel::ClosedForm;

  void validate() const;

  friend bool operator==(const ZoneThresholds&, const ZoneThresholds&) = default;
};

struct ZoneState {
  ZoneVariant variant = ZoneVariant::Continuous;
  Zone zone{};
  /// t: seconds since the last Dynamic entry.
  double dwell_s = 0.0;
  /// t2: seconds spent in Dynamic since the last flick.
  double since_flick_s = 0.0;
  // Tick counters behind the two clocks; n * dt avoids drift from summing dt.
  std::uint64_t dwell_ticks = 0;
  std::uint64_t since_flick_ticks = 0;
  double held_velocity = 0.0;
  /// y0 for closed-form friction.
  double friction_base = 0.0;
  /// A flick fired and Dynamic has not been re-entered since.
  bool flick_unsettled = false;
  std::uint32_t flick_count = 0;

  friend bool operator==(const ZoneState&, const ZoneState&) = default;
};

struct ZoneStep {
  ZoneState state;
  double velocity = 0.0;
  /// True on the tick a flick fired.
  bool flicked = false;
};

[[nodiscard]] Zone classify(double x, const ZoneThresholds& th = {});

/// max(0, max_time - t) / max_time.
[[nodiscard]] double flick_speed(double dwell_s, const ZoneThresholds& th = {});

[[nodiscard]] ZoneStep step_zone(const ZoneState& state, double x, double dt,
                                 const ZoneThresholds& th = {});

/// Stateless zone law at input x. In Dynamic, `y_current` is the held
/// velocity (the friction y0) and `t2` the time since the flick; in Flick,
/// `t` is the Dynamic dwell that preceded it and `y_current` the velocity
/// the additive variant accumulates onto.
[[nodiscard]] double zone_law(ZoneVariant variant, double x, double t, double t2,
                              double y_current, const ZoneThresholds& th = {});

[[nodiscard]] std::string_view to_string(ZoneKind kind);
[[nodiscard]] std::string_view to_string(ZoneVariant variant);

}  // namespace headnav
