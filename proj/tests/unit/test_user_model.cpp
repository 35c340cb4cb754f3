#include <cmath>
#include <initializer_list>
#include <stdexcept>

#include <doctest.h>

#include "headnav/user_model.hpp"

using namespace headnav;

namespace {

TrialConfig config_for(Technique t, double distance = 750.0, Side side = Side::Right) {
  TrialConfig cfg;
  cfg.technique = t;
  cfg.target_distance_cm = distance;
  cfg.side = side;
  cfg.seed = 11;
  return cfg;
}

}  // namespace

TEST_SUITE("user_model") {

TEST_CASE("parameter validation") {
  OperatorParams op;
  CHECK_NOTHROW(op.validate());
  op.max_head_rate_deg_s = 0.0;
  CHECK_THROWS_AS(op.validate(), std::invalid_argument);
  op = {};
  op.reaction_delay_s = -0.1;
  CHECK_THROWS_AS(op.validate(), std::invalid_argument);
  op = {};
  op.flick_speed_request = 1.5;
  CHECK_THROWS_AS(op.validate(), std::invalid_argument);
}

TEST_CASE("strategy ids") {
  CHECK(parse_strategy("greedy_saturate") == OperatorStrategy::GreedySaturate);
  CHECK(parse_strategy("proportional") == OperatorStrategy::Proportional);
  CHECK_FALSE(parse_strategy("lazy").has_value());
}

TEST_CASE("dwell inverts the flick speed law") {
  const ZoneThresholds th;
  CHECK(dwell_for_flick_speed(1.0, th) == 0.0);
  CHECK(dwell_for_flick_speed(0.5, th) == 1.0);
  CHECK(dwell_for_flick_speed(0.0, th) == 2.0);
  for (double v = 0.05; v < 1.0; v += 0.05) {
    CHECK(flick_speed(dwell_for_flick_speed(v, th), th) == doctest::Approx(v));
  }
}

TEST_CASE("default aim tolerance is half the containment slack") {
  const TrialConfig cfg = config_for(Technique::Linear);
  const SyntheticOperator op(cfg, {}, {});
  CHECK(op.aim_tolerance_deg() == doctest::Approx(frame_geometry(cfg).contained_deg / 2));
}

TEST_CASE("seed mixing is stable") {
  CHECK(splitmix64(0) == 0xE220A8397B1DCDAFULL);
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 5) == derive_seed(1, 5));
}

TEST_CASE("every technique acquires targets on both sides with both strategies") {
  for (Technique t : kAllTechniques) {
    for (Side side : {Side::Left, Side::Right}) {
      for (OperatorStrategy s : {OperatorStrategy::GreedySaturate, OperatorStrategy::Proportional}) {
        OperatorParams op;
        op.strategy = s;
        const TrialResult r = run_trial(config_for(t, 1000.0, side), op, {});
        CAPTURE(to_string(t));
        CAPTURE(to_string(side));
        CAPTURE(to_string(s));
        CHECK(r.success);
        CHECK(r.additional_attempts == 0);
      }
    }
  }
}

TEST_CASE("large error with a head technique ramps yaw at the rate limit") {
  OperatorParams op;
  op.yaw_noise_sd_deg = 0.0;
  op.reaction_delay_s = 0.0;
  const TrialResult r = run_trial(config_for(Technique::Linear), op, {}, {.record_ticks = true});
  const double step = op.max_head_rate_deg_s / 120.0;
  REQUIRE(r.tick_log.size() > 40);
  CHECK(r.tick_log[0].yaw_deg == doctest::Approx(step));
  CHECK(r.tick_log[10].yaw_deg == doctest::Approx(11 * step));
}

TEST_CASE("the zone gesture hits the requested flick speed") {
  for (double want : {0.3, 0.5, 0.8}) {
    OperatorParams op;
    op.flick_speed_request = want;
    op.yaw_noise_sd_deg = 0.0;
    TrialConfig cfg = config_for(Technique::Continuous, 1000.0);
    const TrialResult r = run_trial(cfg, op, {}, {.record_ticks = true});
    bool seen = false;
    for (const TickRow& row : r.tick_log) {
      if (row.event.find("flick") == std::string::npos) continue;
      CAPTURE(want);
      CHECK(std::abs(std::abs(row.y_norm) - want) <= 1.0 / 120.0 / 2.0 + 1e-12);
      seen = true;
      break;
    }
    CHECK(seen);
  }
}

TEST_CASE("the operator ends with a short press while contained") {
  const TrialResult r =
      run_trial(config_for(Technique::Polynomial), OperatorParams{}, {}, {.record_ticks = true});
  REQUIRE(r.success);
  const TickRow& last = r.tick_log.back();
  CHECK(last.containment == Containment::Contained);
  CHECK(last.event.find("select_ok") != std::string::npos);
}

}  // TEST_SUITE
