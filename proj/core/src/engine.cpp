#include "headnav/engine.hpp"

#include <cmath>
#include <stdexcept>

namespace headnav {

std::string_view to_string(Side side) {
  return side == Side::Left ? "left" : "right";
}

std::string_view to_string(ClockStart clock) {
  return clock == ClockStart::Press ? "press" : "movement_onset";
}

std::string_view to_string(Containment c) {
  switch (c) {
    case Containment::Outside: return "outside";
    case Containment::Partial: return "partial";
    case Containment::Contained: return "contained";
  }
  return "?";
}

void TrialConfig::validate() const {
  display.validate();
  const auto positive = [](double v, const char* field) {
    if (!(std::isfinite(v) && v > 0.0)) {
      throw std::invalid_argument(std::string(field) + " must be > 0");
    }
  };
  positive(target_distance_cm, "target_distance_cm");
  positive(target_width_cm, "target_width_cm");
  positive(frame_width_cm, "frame_width_cm");
  positive(max_trial_s, "max_trial_s");
  if (frame_width_cm < target_width_cm) {
    throw std::invalid_argument("frame_width_cm must be >= target_width_cm");
  }
  if (long_press_ms <= 0) throw std::invalid_argument("long_press_ms must be > 0");
  if (tick_hz <= 0) throw std::invalid_argument("tick_hz must be > 0");
  for (double m : markers_deg) {
    if (!std::isfinite(m)) throw std::invalid_argument("markers_deg must be finite");
  }
}

std::vector<double> TrialConfig::target_angles_deg() const {
  if (!markers_deg.empty()) return markers_deg;
  const double angle = arc_to_angle(target_distance_cm, display);
  return {side == Side::Right ? angle : -angle};
}

FrameGeometry frame_geometry(const TrialConfig& cfg) {
  FrameGeometry f;
  f.target_deg = arc_to_angle(cfg.target_width_cm, cfg.display);
  f.frame_deg = arc_to_angle(cfg.frame_width_cm, cfg.display);
  f.contained_deg = arc_to_angle((cfg.frame_width_cm - cfg.target_width_cm) / 2.0,
                                 cfg.display);
  f.overlap_deg = arc_to_angle((cfg.frame_width_cm + cfg.target_width_cm) / 2.0,
                               cfg.display);
  return f;
}

Containment containment(double target_center_deg, double frame_center_deg,
                        const FrameGeometry& frame) {
  const double distance = std::abs(circular_delta(frame_center_deg, target_center_deg));
  if (distance <= frame.contained_deg) return Containment::Contained;
  if (distance < frame.overlap_deg) return Containment::Partial;
  return Containment::Outside;
}

WorkspaceAngle integrate(WorkspaceAngle workspace, double velocity,
                         const DisplayGeometry& geom, double dt) {
  return wrap_workspace(workspace.degrees() +
                        velocity * geom.max_workspace_speed_deg_s * dt);
}

bool is_long_press(std::int64_t press_ticks, int long_press_ms, int tick_hz) {
  // press_ticks / tick_hz s > long_press_ms ms, in integers.
  return press_ticks * 1000 > static_cast<std::int64_t>(long_press_ms) * tick_hz;
}

bool is_short_press(std::int64_t press_ticks, int long_press_ms, int tick_hz) {
  return press_ticks * 1000 < static_cast<std::int64_t>(long_press_ms) * tick_hz;
}

bool movement_enabled(Technique technique, bool button_held, std::int64_t press_ticks,
                      int long_press_ms, int tick_hz) {
  if (!is_head_technique(technique)) return true;
  return button_held && is_long_press(press_ticks, long_press_ms, tick_hz);
}

namespace {

void add_event(std::string& events, std::string_view name) {
  if (!events.empty()) events += '|';
  events += name;
}

}  // namespace

TrialResult run_trial(const TrialConfig& cfg, InputSource& source,
                      const TechniqueParams& params, const RunOptions& options) {
  cfg.validate();
  params.validate();

  const std::vector<double> targets = cfg.target_angles_deg();
  const FrameGeometry frame = frame_geometry(cfg);
  const double dt = 1.0 / cfg.tick_hz;
  const double visible_half =
      arc_to_angle(cfg.display.window_arc_cm, cfg.display) / 2.0 + frame.target_deg / 2.0;
  const auto max_ticks =
      static_cast<std::int64_t>(std::ceil(cfg.max_trial_s * cfg.tick_hz));

  TrialResult result;
  TechniqueMapper mapper(cfg.technique, params);
  WorkspaceAngle workspace;
  std::size_t target = 0;

  const auto target_error = [&] {
    return circular_delta(0.0, targets[target] - workspace.degrees());
  };

  // The initial state counts as "outside" so a pre-contained target registers
  // its first crossing on tick 0.
  Containment prev_containment = Containment::Outside;
  int contained_ticks = 0;
  bool held = false;
  std::int64_t press_start = 0;
  std::int64_t clock_tick = -1;
  double prev_yaw = 0.0;
  double velocity = 0.0;
  Containment current = Containment::Outside;
  bool was_visible = std::abs(target_error()) < visible_half;

  std::int64_t tick = 0;
  for (;; ++tick) {
    Observation obs;
    obs.tick = tick;
    obs.dt = dt;
    obs.technique = cfg.technique;
    obs.error_deg = target_error();
    obs.target_visible = std::abs(obs.error_deg) < visible_half;
    obs.containment = current;
    obs.contained_ticks = contained_ticks;
    obs.target_index = target;
    obs.target_count = targets.size();
    obs.additional_attempts = result.additional_attempts;
    obs.button_held = held;
    obs.press_ticks = held ? tick - press_start : 0;
    obs.mapper = mapper;
    obs.max_workspace_speed_deg_s = cfg.display.max_workspace_speed_deg_s;
    obs.contained_deg = frame.contained_deg;

    const InputSample in = source.next(obs);
    std::string events;

    bool released = false;
    std::int64_t press_duration = 0;
    if (in.button && !held) {
      press_start = tick;
      add_event(events, "press");
      if (clock_tick < 0 && cfg.clock_start == ClockStart::Press) clock_tick = tick;
    } else if (!in.button && held) {
      released = true;
      press_duration = tick - press_start;
      add_event(events, "release");
    }
    held = in.button;
    const std::int64_t press_ticks = held ? tick - press_start : 0;

    const bool enabled = movement_enabled(cfg.technique, held, press_ticks,
                                          cfg.long_press_ms, cfg.tick_hz);
    if (held && press_ticks > 0 && is_head_technique(cfg.technique) &&
        !is_long_press(press_ticks - 1, cfg.long_press_ms, cfg.tick_hz) && enabled) {
      add_event(events, "long_press");
    }

    double x = 0.0;
    switch (family_of(cfg.technique)) {
      case TechniqueFamily::Rate:
      case TechniqueFamily::Zone:
        x = normalize_yaw(in.yaw_deg, params.yaw_half_range_deg);
        break;
      case TechniqueFamily::DragFlick:
        x = in.controller_velocity;
        break;
      case TechniqueFamily::PushRelease:
        x = in.joystick;
        if (clock_tick < 0 && cfg.clock_start == ClockStart::Press && x != 0.0) {
          clock_tick = tick;
        }
        break;
    }

    velocity = mapper.step(x, held, enabled, dt);
    if (mapper.flicked()) add_event(events, "flick");
    if (clock_tick < 0 && cfg.clock_start == ClockStart::MovementOnset) {
      const bool engaged =
          family_of(cfg.technique) == TechniqueFamily::DragFlick ? held
          : family_of(cfg.technique) == TechniqueFamily::PushRelease ? velocity != 0.0
                                                                      : enabled;
      if (engaged) clock_tick = tick;
    }
    if (clock_tick == tick) add_event(events, "clock_start");

    workspace = integrate(workspace, velocity, cfg.display, dt);

    const double error = target_error();
    current = containment(error, 0.0, frame);
    const int crossed = count_crossing(prev_containment, current);
    if (crossed) add_event(events, "enter_frame");
    result.crossings += crossed;
    contained_ticks = current == Containment::Contained ? contained_ticks + 1 : 0;
    const bool visible = std::abs(error) < visible_half;
    if (visible && !was_visible) add_event(events, "target_visible");
    was_visible = visible;
    prev_containment = current;

    if (clock_tick >= 0 && tick > clock_tick) {
      result.total_head_rotation_deg += std::abs(in.yaw_deg - prev_yaw);
    }
    prev_yaw = in.yaw_deg;

    bool done = false;
    if (released && is_short_press(press_duration, cfg.long_press_ms, cfg.tick_hz)) {
      if (current == Containment::Contained) {
        add_event(events, "select_ok");
        ++result.targets_completed;
        if (target + 1 == targets.size()) {
          result.success = true;
          done = true;
        } else {
          ++target;
          current = containment(target_error(), 0.0, frame);
          prev_containment = Containment::Outside;
          contained_ticks = 0;
          was_visible = std::abs(target_error()) < visible_half;
        }
      } else {
        add_event(events, "select_miss");
        ++result.additional_attempts;
      }
    }

    if (!done && tick + 1 >= max_ticks) {
      add_event(events, "timeout");
      result.failure_reason = "timeout";
      done = true;
    }

    if (options.record_ticks) {
      TickRow row;
      row.tick = tick;
      row.time_s = static_cast<double>(tick) / cfg.tick_hz;
      row.yaw_deg = in.yaw_deg;
      row.x_norm = x;
      row.zone_or_phase = std::string(mapper.label());
      row.y_norm = velocity;
      row.workspace_deg = workspace.degrees();
      row.containment = current;
      row.button = held;
      row.event = std::move(events);
      result.tick_log.push_back(std::move(row));
    }
    if (done) break;
  }

  result.ticks = tick + 1;
  result.trial_time_s =
      clock_tick < 0 ? 0.0 : static_cast<double>(tick - clock_tick) / cfg.tick_hz;
  result.final_workspace_deg = workspace.degrees();
  result.final_velocity = velocity;
  return result;
}

}  // namespace headnav
