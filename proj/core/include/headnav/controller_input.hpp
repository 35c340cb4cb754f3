#pragma once

// Controller baselines.
//
// Drag-&-Flick: while the button is held the workspace follows the
// controller's normalized angular velocity (y = G * x, clamped to [-1, 1]).
// Releasing the button while the controller moves starts a flick whose speed
// |M_f * x_f| decays linearly at D_f per second. Pressing again cancels it.
//
// Push-&-Release: the joystick deflection goes through the polynomial rate
// function, stop zone included.

#include <cstdint>
#include <string_view>
#include <utility>

#include "headnav/transfer_rate.hpp"

namespace headnav {

struct DragFlickParams {
  double gain = 1.0;
  double flick_multiplier = 2.0;
  double damping = 1.5;

  void validate() const;

  friend bool operator==(const DragFlickParams&, const DragFlickParams&) = default;
};

enum class DragPhase : std::uint8_t { Idle, Dragging, Flicking };

struct DragFlickState {
  DragPhase phase = DragPhase::Idle;
  /// x_f, normalized controller velocity sampled on the release tick.
  double release_velocity = 0.0;
  /// t_f, seconds since release.
  double since_release_s = 0.0;

  friend bool operator==(const DragFlickState&, const DragFlickState&) = default;
};

struct DragFlickStep {
  DragFlickState state;
  double velocity = 0.0;
};

/// Raw controller angular velocity (deg/s) to [-1, 1] by full-scale division.
[[nodiscard]] double normalize_controller_velocity(double deg_s,
                                                   double full_scale_deg_s = 100.0);

/// sign(x_f) * min(1, max(0, |M_f * x_f| - D_f * t_f)).
[[nodiscard]] double flick_velocity(double release_velocity, double since_release_s,
                                    const DragFlickParams& params = {});

[[nodiscard]] DragFlickStep drag_flick_step(const DragFlickState& state,
                                            double controller_velocity,
                                            bool button_down, double dt,
                                            const DragFlickParams& params = {});

/// Identical to polynomial(j, params).
[[nodiscard]] double push_release(double joystick, const RateParams& params = {});

[[nodiscard]] std::string_view to_string(DragPhase phase);

}  // namespace headnav
