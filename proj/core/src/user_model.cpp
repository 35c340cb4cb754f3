#include "headnav/user_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace headnav {

namespace {

constexpr int kPredictionCapTicks = 4000;

double move_toward(double from, double to, double max_step) {
  const double d = to - from;
  if (std::abs(d) <= max_step) return to;
  return d > 0.0 ? from + max_step : from - max_step;
}

double sign_of(double v) { return v < 0.0 ? -1.0 : 1.0; }

/// Smallest |x| in (dead_zone, 1] whose rate output reaches `speed`.
double invert_rate(Technique t, double speed, const RateParams& rp) {
  double lo = rp.dead_zone;
  double hi = 1.0;
  if (rate_function(t, hi, rp) <= speed) return hi;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (rate_function(t, mid, rp) >= speed) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace

std::string_view to_string(OperatorStrategy s) {
  return s == OperatorStrategy::GreedySaturate ? "greedy_saturate" : "proportional";
}

std::optional<OperatorStrategy> parse_strategy(std::string_view id) {
  if (id == "greedy_saturate") return OperatorStrategy::GreedySaturate;
  if (id == "proportional") return OperatorStrategy::Proportional;
  return std::nullopt;
}

void OperatorParams::validate() const {
  const auto non_negative = [](double v, const char* field) {
    if (!(std::isfinite(v) && v >= 0.0)) {
      throw std::invalid_argument(std::string("operator.") + field + " must be >= 0");
    }
  };
  const auto positive = [](double v, const char* field) {
    if (!(std::isfinite(v) && v > 0.0)) {
      throw std::invalid_argument(std::string("operator.") + field + " must be > 0");
    }
  };
  non_negative(reaction_delay_s, "reaction_delay_s");
  positive(max_head_rate_deg_s, "max_head_rate_deg_s");
  non_negative(yaw_noise_sd_deg, "yaw_noise_sd_deg");
  if (aim_tolerance_deg) non_negative(*aim_tolerance_deg, "aim_tolerance_deg");
  positive(press_duration_s, "press_duration_s");
  positive(joystick_rate_per_s, "joystick_rate_per_s");
  positive(hand_rate_deg_s, "hand_rate_deg_s");
  positive(precise_hand_rate_deg_s, "precise_hand_rate_deg_s");
  positive(stroke_range_deg, "stroke_range_deg");
  positive(proportional_gain_per_s, "proportional_gain_per_s");
  non_negative(zone_fine_threshold_deg, "zone_fine_threshold_deg");
  if (flick_speed_request && !(*flick_speed_request > 0.0 && *flick_speed_request <= 1.0)) {
    throw std::invalid_argument("operator.flick_speed_request must be in (0, 1]");
  }
}

double dwell_for_flick_speed(double speed, const ZoneThresholds& th) {
  return th.max_time * (1.0 - std::clamp(speed, 0.0, 1.0));
}

std::uint64_t splitmix64(std::uint64_t x) {
  std::uint64_t z = x + 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  return splitmix64(splitmix64(base) + index);
}

SyntheticOperator::SyntheticOperator(const TrialConfig& cfg,
                                     const TechniqueParams& technique_params,
                                     const OperatorParams& params)
    : cfg_(cfg),
      tp_(technique_params),
      op_(params),
      family_(family_of(cfg.technique)),
      dt_(1.0 / cfg.tick_hz) {
  op_.validate();
  delay_ticks_ = static_cast<int>(std::lround(op_.reaction_delay_s * cfg.tick_hz));
  tolerance_ = op_.aim_tolerance_deg.value_or(frame_geometry(cfg).contained_deg / 2.0);
  short_press_ticks_ =
      std::max(1, static_cast<int>(std::lround(op_.press_duration_s * cfg.tick_hz)));
  while (short_press_ticks_ > 1 &&
         !is_short_press(short_press_ticks_, cfg.long_press_ms, cfg.tick_hz)) {
    --short_press_ticks_;
  }
  rng_.seed(splitmix64(cfg.seed ^ splitmix64(op_.seed)));
}

double SyntheticOperator::gaussian() {
  // Box-Muller on raw engine output; std::normal_distribution is not
  // reproducible across standard libraries.
  constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
  const double u1 = 1.0 - static_cast<double>(rng_() >> 11) * kScale;
  const double u2 = static_cast<double>(rng_() >> 11) * kScale;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double SyntheticOperator::axis_step() const {
  if (family_ == TechniqueFamily::PushRelease) return op_.joystick_rate_per_s * dt_;
  return op_.max_head_rate_deg_s * dt_ / tp_.yaw_half_range_deg;
}

bool SyntheticOperator::enabled_after(std::int64_t extra_ticks) const {
  const std::int64_t press_ticks = button_ ? tick_ + extra_ticks - press_start_ : 0;
  return movement_enabled(cfg_.technique, button_, press_ticks, cfg_.long_press_ms,
                          cfg_.tick_hz);
}

bool SyntheticOperator::at_rest(const TechniqueMapper& m, double axis) const {
  if (m.last_velocity() != 0.0) return false;
  switch (family_) {
    case TechniqueFamily::Rate:
    case TechniqueFamily::PushRelease:
      return std::abs(axis) <= tp_.rate.dead_zone;
    case TechniqueFamily::Zone:
      return classify(axis, tp_.zone).kind == ZoneKind::Stop;
    case TechniqueFamily::DragFlick:
      return m.drag_state().phase != DragPhase::Flicking;
  }
  return true;
}

double SyntheticOperator::travel_if_return(TechniqueMapper model, double first) const {
  const double step = axis_step();
  const double scale = cfg_.display.max_workspace_speed_deg_s * dt_;
  double travel = 0.0;
  double a = first;
  for (int i = 0; i < kPredictionCapTicks; ++i) {
    travel += model.step(a, button_, enabled_after(i), dt_) * scale;
    if (at_rest(model, a)) break;
    a = move_toward(a, 0.0, step);
  }
  return travel;
}

double SyntheticOperator::rate_axis_goal(double error_deg, bool known) const {
  const double side = sign_of(error_deg);
  if (!known || op_.strategy == OperatorStrategy::GreedySaturate) return side;
  const double want = std::min(1.0, op_.proportional_gain_per_s * std::abs(error_deg) /
                                        cfg_.display.max_workspace_speed_deg_s);
  return side * invert_rate(cfg_.technique, want, tp_.rate);
}

SyntheticOperator::Belief SyntheticOperator::perceive(const Observation& obs) {
  observations_.push_back(obs);
  while (observations_.size() > static_cast<std::size_t>(delay_ticks_) + 1) {
    observations_.pop_front();
  }
  Belief b;
  if (obs.tick < delay_ticks_) return b;

  const Observation& seen = observations_.front();
  b.perceived = true;
  b.known = seen.target_visible;
  b.mapper = seen.mapper;
  b.target_index = seen.target_index;
  b.additional_attempts = seen.additional_attempts;
  b.contained_ticks = seen.contained_ticks;

  // Replay own inputs issued since the perceived tick.
  const double scale = seen.max_workspace_speed_deg_s * seen.dt;
  double error = seen.error_deg;
  for (const PastInput& in : inputs_) {
    const double v = b.mapper.step(in.x, in.button, in.enabled, seen.dt);
    error = circular_delta(0.0, error - v * scale);
  }
  b.error_deg = error;
  return b;
}

bool SyntheticOperator::ready_to_select(const Belief& b) const {
  if (!b.perceived || !b.known) return false;
  if (std::abs(b.error_deg) > tolerance_ || b.contained_ticks < 2) return false;
  if (family_ == TechniqueFamily::DragFlick) {
    return drag_mode_ == DragMode::Idle && !button_ &&
           b.mapper.last_velocity() == 0.0 &&
           b.mapper.drag_state().phase != DragPhase::Flicking;
  }
  if (family_ == TechniqueFamily::Zone && zone_mode_ != ZoneMode::Idle) return false;
  return at_rest(b.mapper, axis_);
}

double SyntheticOperator::plan_axis_rate(const Belief& b) {
  if (!b.perceived) return 0.0;
  const double e = b.error_deg;
  if (b.known && std::abs(e) <= tolerance_) return 0.0;

  const double goal = rate_axis_goal(e, b.known);
  if (!b.known) return goal;

  const double side = sign_of(e);
  const double advance = move_toward(axis_, goal, axis_step());
  if (side * (e - travel_if_return(b.mapper, advance)) >= 0.0) return advance;
  if (side * (e - travel_if_return(b.mapper, axis_)) >= 0.0) return axis_;
  return 0.0;
}

double SyntheticOperator::plan_axis_zone(const Belief& b) {
  if (!b.perceived || !enabled_after(0)) return 0.0;
  const ZoneThresholds& th = tp_.zone;
  const double e = b.error_deg;
  const double side = sign_of(e);
  const double step = axis_step();

  if (zone_mode_ == ZoneMode::Retreat) {
    if (!at_rest(b.mapper, axis_)) return 0.0;
    zone_mode_ = ZoneMode::Idle;
  }

  if (zone_mode_ == ZoneMode::Idle) {
    if (b.known && std::abs(e) <= tolerance_) return 0.0;
    if (!b.known || std::abs(e) > op_.zone_fine_threshold_deg) {
      double speed = 1.0;
      if (op_.flick_speed_request) {
        speed = *op_.flick_speed_request;
      } else if (op_.strategy == OperatorStrategy::Proportional && b.known) {
        speed = std::clamp(op_.proportional_gain_per_s * std::abs(e) /
                               cfg_.display.max_workspace_speed_deg_s,
                           0.1, 1.0);
      }
      requested_flick_ = speed;
      gesture_side_ = static_cast<int>(side);
      gesture_dwell_goal_ =
          static_cast<int>(std::lround(dwell_for_flick_speed(speed, th) / dt_));
      gesture_dynamic_ticks_ = 0;
      zone_mode_ = ZoneMode::Gesture;
    } else {
      creep_side_ = static_cast<int>(side);
      zone_mode_ = ZoneMode::Creep;
    }
  }

  switch (zone_mode_) {
    case ZoneMode::Gesture: {
      const double flick_point = gesture_side_ * std::min(1.0, th.flick_edge + 0.1);
      const double hold_point = gesture_side_ * 0.5 * (th.constant_edge + th.flick_edge);
      // Dynamic samples still to come if we head straight for the flick zone.
      int remaining = 0;
      double a = axis_;
      for (int i = 0; i < kPredictionCapTicks; ++i) {
        a = move_toward(a, flick_point, step);
        const ZoneKind k = classify(a, th).kind;
        if (k == ZoneKind::Flick) break;
        if (k == ZoneKind::Dynamic) ++remaining;
      }
      return gesture_dynamic_ticks_ + remaining >= gesture_dwell_goal_ ? flick_point
                                                                        : hold_point;
    }
    case ZoneMode::Ride: {
      if (!b.known) return axis_;
      const double v = b.mapper.last_velocity();
      if (side * v <= 0.0 || side * (e - travel_if_return(b.mapper, axis_)) < 0.0) {
        zone_mode_ = ZoneMode::Retreat;
        return 0.0;
      }
      return axis_;
    }
    case ZoneMode::Creep: {
      if (!b.known || static_cast<int>(side) != creep_side_ ||
          std::abs(e) <= tolerance_) {
        zone_mode_ = ZoneMode::Retreat;
        return 0.0;
      }
      const double goal = creep_side_ * 0.5 * (th.stop_edge + th.constant_edge);
      const double advance = move_toward(axis_, goal, step);
      if (side * (e - travel_if_return(b.mapper, advance)) >= 0.0) return advance;
      if (side * (e - travel_if_return(b.mapper, axis_)) >= 0.0) return axis_;
      zone_mode_ = ZoneMode::Retreat;
      return 0.0;
    }
    default:
      return 0.0;
  }
}

void SyntheticOperator::plan_drag(const Belief& b) {
  const double half = op_.stroke_range_deg / 2.0;
  const double full_scale = tp_.controller_full_scale_deg_s;
  const double gain = tp_.drag_flick.gain;
  const double per_tick = cfg_.display.max_workspace_speed_deg_s * dt_;
  double hand_v = 0.0;

  const auto press = [&] {
    if (!button_) {
      button_ = true;
      press_start_ = tick_;
    }
  };
  const auto commit = [&] {
    hand_x_ = normalize_controller_velocity(hand_v, full_scale);
  };

  if (!b.perceived) {
    commit();
    return;
  }
  const double e = b.error_deg;
  const double side = sign_of(e);
  const bool long_enough =
      button_ && is_long_press(tick_ - press_start_, cfg_.long_press_ms, cfg_.tick_hz);

  if (drag_mode_ == DragMode::Idle) {
    if (b.mapper.drag_state().phase == DragPhase::Flicking) {
      TechniqueMapper probe = b.mapper;
      const double coast = probe.step(0.0, false, true, dt_) * per_tick;
      if (b.known && std::abs(e - coast) >= std::abs(e)) {
        press();  // catch the flick with a still hand
        drag_mode_ = DragMode::Precise;
        commit();
        return;
      }
      hand_v = std::clamp((-side * half - hand_deg_) / dt_, -op_.hand_rate_deg_s,
                          op_.hand_rate_deg_s);
      commit();
      return;
    }
    if (b.known && std::abs(e) <= tolerance_) {
      commit();
      return;
    }
    if (b.known && std::abs(e) <= op_.stroke_range_deg * gain) {
      const double end = hand_deg_ + e / gain;
      if (std::abs(end) <= half + 1e-9) {
        press();
        drag_mode_ = DragMode::Precise;
      } else {
        hand_v = std::clamp((-side * half - hand_deg_) / dt_, -op_.hand_rate_deg_s,
                            op_.hand_rate_deg_s);
      }
      commit();
      return;
    }
    const double start = -side * half;
    if (std::abs(hand_deg_ - start) < 1e-9) {
      press();
      drag_mode_ = DragMode::Stroke;
      gesture_side_ = static_cast<int>(side);
      hand_v = side * op_.hand_rate_deg_s;
    } else {
      hand_v = std::clamp((start - hand_deg_) / dt_, -op_.hand_rate_deg_s,
                          op_.hand_rate_deg_s);
    }
    commit();
    return;
  }

  if (drag_mode_ == DragMode::Stroke) {
    const double stroke_side = gesture_side_;
    const double full_v = stroke_side * op_.hand_rate_deg_s;
    const double full_x = normalize_controller_velocity(full_v, full_scale);
    const double full_travel = std::clamp(gain * full_x, -1.0, 1.0) * per_tick;
    if (b.known && side != stroke_side) {
      drag_mode_ = DragMode::Precise;
      commit();
      return;
    }
    if (b.known && std::abs(e) <= std::abs(full_travel)) {
      hand_v = e / (gain * per_tick) * full_scale;
      drag_mode_ = DragMode::Precise;
      commit();
      return;
    }
    hand_v = full_v;
    if (stroke_side * (hand_deg_ + full_v * dt_) >= half && long_enough) {
      button_ = false;  // release while moving: flick
      drag_mode_ = DragMode::Idle;
    }
    commit();
    return;
  }

  // Precise drag: land the target exactly, then release with a still hand.
  if (b.known && std::abs(e) > 1e-9) {
    const double cap = op_.precise_hand_rate_deg_s / full_scale;
    const double x = std::clamp(e / (gain * per_tick), -cap, cap);
    hand_v = x * full_scale;
  }
  if (hand_v == 0.0 && long_enough) {
    button_ = false;
    drag_mode_ = DragMode::Idle;
  }
  commit();
}

InputSample SyntheticOperator::emit(double axis_goal) {
  const double noise = op_.yaw_noise_sd_deg > 0.0 ? op_.yaw_noise_sd_deg * gaussian() : 0.0;
  const double head_step = op_.max_head_rate_deg_s * dt_;
  const double half = tp_.yaw_half_range_deg;

  InputSample out;
  out.button = button_;
  switch (family_) {
    case TechniqueFamily::Rate:
    case TechniqueFamily::Zone:
      yaw_deg_ = move_toward(yaw_deg_, std::clamp(axis_goal, -1.0, 1.0) * half + noise,
                             head_step);
      axis_ = normalize_yaw(yaw_deg_, half);
      break;
    case TechniqueFamily::PushRelease:
      axis_ = move_toward(axis_, std::clamp(axis_goal, -1.0, 1.0), axis_step());
      yaw_deg_ = move_toward(yaw_deg_, noise, head_step);
      out.joystick = axis_;
      break;
    case TechniqueFamily::DragFlick:
      yaw_deg_ = move_toward(yaw_deg_, noise, head_step);
      hand_deg_ += hand_x_ * tp_.controller_full_scale_deg_s * dt_;
      out.controller_velocity = hand_x_;
      break;
  }
  out.yaw_deg = yaw_deg_;

  PastInput past;
  past.button = button_;
  past.enabled = enabled_after(0);
  past.x = family_ == TechniqueFamily::DragFlick ? hand_x_ : axis_;
  inputs_.push_back(past);
  while (inputs_.size() > static_cast<std::size_t>(delay_ticks_)) inputs_.pop_front();

  if (family_ == TechniqueFamily::Zone && zone_mode_ == ZoneMode::Gesture) {
    const ZoneKind k = classify(axis_, tp_.zone).kind;
    if (k == ZoneKind::Dynamic) ++gesture_dynamic_ticks_;
    if (k == ZoneKind::Flick) zone_mode_ = ZoneMode::Ride;
  }
  return out;
}

InputSample SyntheticOperator::next(const Observation& obs) {
  tick_ = obs.tick;
  const Belief b = perceive(obs);
  const bool head = is_head_technique(cfg_.technique);

  if (mode_ == Mode::AwaitOutcome && b.perceived) {
    if (b.target_index > target_index_) {
      target_index_ = b.target_index;
      mode_ = Mode::Start;
    } else if (b.additional_attempts > attempts_seen_) {
      attempts_seen_ = b.additional_attempts;
      mode_ = Mode::Start;
    } else if (++select_ticks_ > delay_ticks_ + 4 * short_press_ticks_ + 8) {
      mode_ = Mode::Start;
    }
  }

  if (mode_ == Mode::Start) {
    zone_mode_ = ZoneMode::Idle;
    drag_mode_ = DragMode::Idle;
    if (head && !button_) {
      button_ = true;
      press_start_ = tick_;
    }
    mode_ = Mode::Navigate;
  }

  if (mode_ == Mode::Navigate && ready_to_select(b)) {
    mode_ = Mode::SelectRelease;
  }

  double goal = 0.0;
  hand_x_ = 0.0;
  switch (mode_) {
    case Mode::Navigate:
      switch (family_) {
        case TechniqueFamily::Rate:
        case TechniqueFamily::PushRelease:
          goal = plan_axis_rate(b);
          break;
        case TechniqueFamily::Zone:
          goal = plan_axis_zone(b);
          break;
        case TechniqueFamily::DragFlick:
          plan_drag(b);
          break;
      }
      break;
    case Mode::SelectRelease:
      if (button_) {
        button_ = false;
      } else {
        button_ = true;
        press_start_ = tick_;
        select_ticks_ = 0;
        mode_ = Mode::SelectPress;
      }
      break;
    case Mode::SelectPress:
      if (++select_ticks_ >= short_press_ticks_) {
        button_ = false;
        select_ticks_ = 0;
        mode_ = Mode::AwaitOutcome;
      }
      break;
    case Mode::AwaitOutcome:
    case Mode::Start:
      break;
  }
  return emit(goal);
}

TrialResult run_trial(const TrialConfig& cfg, const OperatorParams& op,
                      const TechniqueParams& params, const RunOptions& options) {
  SyntheticOperator oper(cfg, params, op);
  return run_trial(cfg, oper, params, options);
}

}  // namespace headnav
