#include "headnav/controller_input.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace headnav {

void DragFlickParams::validate() const {
  if (!(std::isfinite(gain) && gain > 0.0)) {
    throw std::invalid_argument("drag_flick.gain must be > 0");
  }
  if (!(std::isfinite(flick_multiplier) && flick_multiplier > 0.0)) {
    throw std::invalid_argument("drag_flick.flick_multiplier must be > 0");
  }
  if (!(std::isfinite(damping) && damping > 0.0)) {
    throw std::invalid_argument("drag_flick.damping must be > 0");
  }
}

double normalize_controller_velocity(double deg_s, double full_scale_deg_s) {
  if (!std::isfinite(deg_s)) {
    throw std::invalid_argument("controller velocity must be finite");
  }
  if (!(full_scale_deg_s > 0.0)) {
    throw std::invalid_argument("controller full scale must be > 0");
  }
  return std::clamp(deg_s / full_scale_deg_s, -1.0, 1.0);
}

double flick_velocity(double release_velocity, double since_release_s,
                      const DragFlickParams& params) {
  const double mag =
      std::max(0.0, std::abs(params.flick_multiplier * release_velocity) -
                        params.damping * since_release_s);
  return std::copysign(std::min(1.0, mag), release_velocity);
}

DragFlickStep drag_flick_step(const DragFlickState& state, double controller_velocity,
                              bool button_down, double dt,
                              const DragFlickParams& params) {
  require_normalized(controller_velocity, "controller velocity");
  if (!(std::isfinite(dt) && dt > 0.0)) {
    throw std::invalid_argument("dt must be > 0");
  }

  DragFlickStep out{state, 0.0};
  DragFlickState& s = out.state;

  if (button_down) {
    s = DragFlickState{DragPhase::Dragging, 0.0, 0.0};
    out.velocity = std::clamp(params.gain * controller_velocity, -1.0, 1.0);
    return out;
  }

  switch (state.phase) {
    case DragPhase::Dragging:
      // Release tick.
      if (controller_velocity != 0.0) {
        s = DragFlickState{DragPhase::Flicking, controller_velocity, 0.0};
        out.velocity = flick_velocity(s.release_velocity, 0.0, params);
      } else {
        s = DragFlickState{};
      }
      break;
    case DragPhase::Flicking:
      s.since_release_s += dt;
      out.velocity = flick_velocity(s.release_velocity, s.since_release_s, params);
      if (out.velocity == 0.0) s.phase = DragPhase::Idle;
      break;
    case DragPhase::Idle:
      break;
  }
  return out;
}

double push_release(double joystick, const RateParams& params) {
  return polynomial(joystick, params);
}

std::string_view to_string(DragPhase phase) {
  switch (phase) {
    case DragPhase::Idle: return "idle";
    case DragPhase::Dragging: return "drag";
    case DragPhase::Flicking: return "flick";
  }
  return "?";
}

}  // namespace headnav
