#include "headnav/transfer_zone.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "headnav/transfer_rate.hpp"

namespace headnav {

void ZoneThresholds::validate() const {
  if (!(0.0 < stop_edge && stop_edge < constant_edge &&
        constant_edge < flick_edge && flick_edge < 1.0)) {
    throw std::invalid_argument(
        "zone edges must satisfy 0 < stop_edge < constant_edge < flick_edge < 1");
  }
  if (!(constant_speed > 0.0 && constant_speed <= 1.0)) {
    throw std::invalid_argument("zone.constant_speed must be in (0, 1]");
  }
  if (!(std::isfinite(max_time) && max_time > 0.0)) {
    throw std::invalid_argument("zone.max_time must be > 0");
  }
  if (!(std::isfinite(mu) && mu >= 0.0)) {
    throw std::invalid_argument("zone.mu must be >= 0");
  }
}

Zone classify(double x, const ZoneThresholds& th) {
  require_normalized(x, "x");
  const double mag = std::abs(x);
  const int side = x < 0.0 ? -1 : 1;
  if (mag <= th.stop_edge) return {ZoneKind::Stop, 0};
  if (mag <= th.constant_edge) return {ZoneKind::Constant, side};
  if (mag <= th.flick_edge) return {ZoneKind::Dynamic, side};
  return {ZoneKind::Flick, side};
}

double flick_speed(double dwell_s, const ZoneThresholds& th) {
  if (!(dwell_s >= 0.0)) {
    throw std::invalid_argument("flick dwell time must be >= 0");
  }
  return std::max(0.0, th.max_time - dwell_s) / th.max_time;
}

ZoneStep step_zone(const ZoneState& state, double x, double dt,
                   const ZoneThresholds& th) {
  if (!(std::isfinite(dt) && dt > 0.0)) {
    throw std::invalid_argument("dt must be > 0");
  }
  const Zone zone = classify(x, th);
  const Zone previous = state.zone;
  const bool entered = zone != previous;

  ZoneStep out{state, 0.0, false};
  ZoneState& s = out.state;
  s.zone = zone;
  const double side = static_cast<double>(zone.side);

  switch (zone.kind) {
    case ZoneKind::Stop: {
      s = ZoneState{};
      s.variant = state.variant;
      s.flick_count = state.flick_count;
      out.velocity = 0.0;
      break;
    }
    case ZoneKind::Constant: {
      out.velocity = side * th.constant_speed;
      break;
    }
    case ZoneKind::Dynamic: {
      if (entered) {
        s.dwell_ticks = 0;
        if (s.flick_unsettled) {
          s.since_flick_ticks = 0;
          s.friction_base = s.held_velocity;
          s.flick_unsettled = false;
        }
      }
      s.dwell_s = static_cast<double>(++s.dwell_ticks) * dt;
      s.since_flick_s = static_cast<double>(++s.since_flick_ticks) * dt;
      switch (s.variant) {
        case ZoneVariant::Continuous:
        case ZoneVariant::Additive:
          break;
        case ZoneVariant::Friction:
          if (th.friction_model == FrictionModel::ClosedForm) {
            const double mag =
                std::max(0.0, std::abs(s.friction_base) - th.mu * s.since_flick_s);
            s.held_velocity = std::copysign(mag, s.friction_base);
          } else {
            const double mag =
                std::max(0.0, std::abs(s.held_velocity) - th.mu * s.since_flick_s);
            s.held_velocity = std::copysign(mag, s.held_velocity);
          }
          break;
        case ZoneVariant::Interrupted:
          s.held_velocity = 0.0;
          break;
      }
      out.velocity = s.held_velocity;
      break;
    }
    case ZoneKind::Flick: {
      if (entered) {
        const double dwell =
            previous.kind == ZoneKind::Dynamic ? state.dwell_s : th.max_time;
        const double speed = flick_speed(dwell, th);
        if (s.variant == ZoneVariant::Additive) {
          s.held_velocity =
              side * std::min(1.0, std::abs(s.held_velocity + side * speed));
        } else {
          s.held_velocity = side * speed;
        }
        s.flick_unsettled = true;
        ++s.flick_count;
        out.flicked = true;
      }
      out.velocity = s.held_velocity;
      break;
    }
  }
  return out;
}

double zone_law(ZoneVariant variant, double x, double t, double t2, double y_current,
                const ZoneThresholds& th) {
  const Zone zone = classify(x, th);
  const double side = static_cast<double>(zone.side);
  switch (zone.kind) {
    case ZoneKind::Stop:
      return 0.0;
    case ZoneKind::Constant:
      return side * th.constant_speed;
    case ZoneKind::Dynamic:
      switch (variant) {
        case ZoneVariant::Continuous:
        case ZoneVariant::Additive:
          return y_current;
        case ZoneVariant::Friction:
          return std::copysign(std::max(0.0, std::abs(y_current) - th.mu * t2), y_current);
        case ZoneVariant::Interrupted:
          return 0.0;
      }
      break;
    case ZoneKind::Flick: {
      const double speed = flick_speed(t, th);
      if (variant == ZoneVariant::Additive) {
        return side * std::min(1.0, std::abs(y_current + side * speed));
      }
      return side * speed;
    }
  }
  return 0.0;
}

std::string_view to_string(ZoneKind kind) {
  switch (kind) {
    case ZoneKind::Stop: return "stop";
    case ZoneKind::Constant: return "constant";
    case ZoneKind::Dynamic: return "dynamic";
    case ZoneKind::Flick: return "flick";
  }
  return "?";
}

std::string_view to_string(ZoneVariant variant) {
  switch (variant) {
    case ZoneVariant::Continuous: return "continuous";
    case ZoneVariant::Friction: return "friction";
    case ZoneVariant::Additive: return "additive";
    case ZoneVariant::Interrupted: return "interrupted";
  }
  return "?";
}

}  // namespace headnav
