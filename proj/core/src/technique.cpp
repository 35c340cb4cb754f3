#include "headnav/technique.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace headnav {

TechniqueFamily family_of(Technique t) {
  switch (t) {
    case Technique::Linear:
    case Technique::Sigmoid:
    case Technique::Polynomial:
      return TechniqueFamily::Rate;
    case Technique::Continuous:
    case Technique::Friction:
    case Technique::Additive:
    case Technique::Interrupted:
      return TechniqueFamily::Zone;
    case Technique::DragFlick:
      return TechniqueFamily::DragFlick;
    case Technique::PushRelease:
      return TechniqueFamily::PushRelease;
  }
  throw std::logic_error("unknown technique");
}

std::string_view to_string(Technique t) {
  switch (t) {
    case Technique::Linear: return "linear";
    case Technique::Sigmoid: return "sigmoid";
    case Technique::Polynomial: return "polynomial";
    case Technique::Continuous: return "continuous";
    case Technique::Friction: return "friction";
    case Technique::Additive: return "additive";
    case Technique::Interrupted: return "interrupted";
    case Technique::DragFlick: return "drag_flick";
    case Technique::PushRelease: return "push_release";
  }
  return "?";
}

std::optional<Technique> parse_technique(std::string_view id) {
  for (Technique t : kAllTechniques) {
    if (to_string(t) == id) return t;
  }
  return std::nullopt;
}

std::string technique_id_list() {
  std::string out;
  for (Technique t : kAllTechniques) {
    if (!out.empty()) out += ", ";
    out += to_string(t);
  }
  return out;
}

void TechniqueParams::validate() const {
  rate.validate();
  zone.validate();
  drag_flick.validate();
  if (!(std::isfinite(yaw_half_range_deg) && yaw_half_range_deg > 0.0)) {
    throw std::invalid_argument("yaw_half_range_deg must be > 0");
  }
  if (!(std::isfinite(controller_full_scale_deg_s) &&
        controller_full_scale_deg_s > 0.0)) {
    throw std::invalid_argument("controller_full_scale_deg_s must be > 0");
  }
}

double rate_function(Technique t, double x, const RateParams& params) {
  switch (t) {
    case Technique::Linear: return linear(x, params);
    case Technique::Sigmoid: return sigmoid(x, params);
    case Technique::Polynomial: return polynomial(x, params);
    case Technique::PushRelease: return push_release(x, params);
    default: break;
  }
  throw std::invalid_argument(std::string(to_string(t)) + " is not a rate technique");
}

ZoneVariant variant_of(Technique t) {
  switch (t) {
    case Technique::Friction: return ZoneVariant::Friction;
    case Technique::Additive: return ZoneVariant::Additive;
    case Technique::Interrupted: return ZoneVariant::Interrupted;
    default: return ZoneVariant::Continuous;
  }
}

TechniqueMapper::TechniqueMapper(Technique technique, const TechniqueParams& params)
    : technique_(technique), params_(params) {
  zone_.variant = variant_of(technique);
}

double TechniqueMapper::step(double x, bool button_down, bool enabled, double dt) {
  flicked_ = false;
  last_x_ = x;
  enabled_ = enabled;
  switch (family_of(technique_)) {
    case TechniqueFamily::Rate:
      require_normalized(x, "x");
      velocity_ = enabled ? rate_function(technique_, x, params_.rate) : 0.0;
      break;
    case TechniqueFamily::Zone:
      if (enabled) {
        const ZoneStep step = step_zone(zone_, x, dt, params_.zone);
        zone_ = step.state;
        velocity_ = step.velocity;
        flicked_ = step.flicked;
      } else {
        require_normalized(x, "x");
        const std::uint32_t flicks = zone_.flick_count;
        zone_ = ZoneState{};
        zone_.variant = variant_of(technique_);
        zone_.flick_count = flicks;
        velocity_ = 0.0;
      }
      break;
    case TechniqueFamily::DragFlick: {
      const DragFlickStep step =
          drag_flick_step(drag_, x, button_down, dt, params_.drag_flick);
      flicked_ = drag_.phase != DragPhase::Flicking &&
                 step.state.phase == DragPhase::Flicking;
      drag_ = step.state;
      velocity_ = step.velocity;
      break;
    }
    case TechniqueFamily::PushRelease:
      velocity_ = push_release(x, params_.rate);
      break;
  }
  return velocity_;
}

std::string_view TechniqueMapper::label() const {
  switch (family_of(technique_)) {
    case TechniqueFamily::Rate:
      if (!enabled_) return "off";
      return std::abs(last_x_) > params_.rate.dead_zone ? "rate" : "stop";
    case TechniqueFamily::Zone:
      if (!enabled_) return "off";
      return to_string(zone_.zone.kind);
    case TechniqueFamily::DragFlick:
      return to_string(drag_.phase);
    case TechniqueFamily::PushRelease:
      return std::abs(last_x_) > params_.rate.dead_zone ? "rate" : "stop";
  }
  return "?";
}

}  // namespace headnav
