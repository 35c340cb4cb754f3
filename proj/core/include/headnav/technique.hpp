#pragma once

// The nine navigation techniques behind one per-tick stepping interface.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "headnav/controller_input.hpp"
#include "headnav/transfer_rate.hpp"
#include "headnav/transfer_zone.hpp"

namespace headnav {

enum class Technique : std::uint8_t {
  Linear,
  Sigmoid,
  Polynomial,
  Continuous,
  Friction,
  Additive,
  Interrupted,
  DragFlick,
  PushRelease,
};

inline constexpr std::array<Technique, 9> kAllTechniques{
    Technique::Linear,     Technique::Sigmoid,  Technique::Polynomial,
    Technique::Continuous, Technique::Friction, Technique::Additive,
    Technique::Interrupted, Technique::DragFlick, Technique::PushRelease};

enum class TechniqueFamily : std::uint8_t { Rate, Zone, DragFlick, PushRelease };

[[nodiscard]] TechniqueFamily family_of(Technique t);

/// Head techniques gate workspace movement behind a long press.
[[nodiscard]] inline bool is_head_technique(Technique t) {
  const auto f = family_of(t);
  return f == TechniqueFamily::Rate || f == TechniqueFamily::Zone;
}

/// Zone variant of a zone technique; Continuous for any other technique.
[[nodiscard]] ZoneVariant variant_of(Technique t);

[[nodiscard]] std::string_view to_string(Technique t);
[[nodiscard]] std::optional<Technique> parse_technique(std::string_view id);
/// "linear, sigmoid, ..., push_release".
[[nodiscard]] std::string technique_id_list();

struct TechniqueParams {
  RateParams rate;
  ZoneThresholds zone;
  DragFlickParams drag_flick;
  double yaw_half_range_deg = 90.0;
  double controller_full_scale_deg_s = 100.0;

  void validate() const;

  friend bool operator==(const TechniqueParams&, const TechniqueParams&) = default;
};

/// Stateless rate function for rate-family techniques and push_release.
[[nodiscard]] double rate_function(Technique t, double x, const RateParams& params);

/// Value-semantic per-trial mapping state. `x` is the technique's normalized
/// input: yaw for head techniques, controller velocity for drag_flick,
/// joystick deflection for push_release.
class TechniqueMapper {
 public:
  TechniqueMapper() = default;
  TechniqueMapper(Technique technique, const TechniqueParams& params);

  /// One fixed-timestep update. For head techniques `enabled` false forces
  /// zero output and resets the zone state; drag_flick reads `button_down`;
  /// push_release ignores both.
  double step(double x, bool button_down, bool enabled, double dt);

  [[nodiscard]] Technique technique() const { return technique_; }
  [[nodiscard]] const TechniqueParams& params() const { return params_; }
  [[nodiscard]] const ZoneState& zone_state() const { return zone_; }
  [[nodiscard]] const DragFlickState& drag_state() const { return drag_; }
  [[nodiscard]] double last_velocity() const { return velocity_; }
  [[nodiscard]] bool flicked() const { return flicked_; }
  /// Short label for logs: zone or phase name.
  [[nodiscard]] std::string_view label() const;

 private:
  Technique technique_ = Technique::Polynomial;
  TechniqueParams params_{};
  ZoneState zone_{};
  DragFlickState drag_{};
  double velocity_ = 0.0;
  double last_x_ = 0.0;
  bool enabled_ = true;
  bool flicked_ = false;
};

}  // namespace headnav
