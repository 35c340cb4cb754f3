#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "headnav/engine.hpp"
#include "scripted_source.hpp"

using namespace headnav;
using test_support::ScriptedSource;

namespace {

TrialConfig linear_config() {
  TrialConfig cfg;
  cfg.technique = Technique::Linear;
  cfg.max_trial_s = 10.0;
  return cfg;
}

}  // namespace

TEST_SUITE("engine") {

TEST_CASE("integrate") {
  DisplayGeometry g;
  CHECK(integrate(WorkspaceAngle(0), 1.0, g, 0.1).degrees() == doctest::Approx(10.0));
  CHECK(integrate(WorkspaceAngle(359), 1.0, g, 0.02).degrees() == doctest::Approx(1.0));
  CHECK(integrate(WorkspaceAngle(0), 0.0, g, 0.5).degrees() == 0.0);
  CHECK(integrate(WorkspaceAngle(0), -1.0, g, 0.1).degrees() == doctest::Approx(350.0));
}

TEST_CASE("frame geometry and containment thresholds") {
  const TrialConfig cfg;
  const FrameGeometry f = frame_geometry(cfg);
  CHECK(f.contained_deg == doctest::Approx(3.504).epsilon(1e-3));
  CHECK(f.overlap_deg == doctest::Approx(8.76).epsilon(1e-3));
  CHECK(containment(0.0, 0.0, f) == Containment::Contained);
  CHECK(containment(3.50, 0.0, f) == Containment::Contained);
  CHECK(containment(-3.50, 0.0, f) == Containment::Contained);
  CHECK(containment(3.51, 0.0, f) == Containment::Partial);
  CHECK(containment(8.7, 0.0, f) == Containment::Partial);
  CHECK(containment(10.0, 0.0, f) == Containment::Outside);
  CHECK(containment(359.0, 1.0, f) == Containment::Contained);
}

TEST_CASE("crossings count entries only") {
  CHECK(count_crossing(Containment::Outside, Containment::Contained) == 1);
  CHECK(count_crossing(Containment::Partial, Containment::Contained) == 1);
  CHECK(count_crossing(Containment::Contained, Containment::Partial) == 0);
  CHECK(count_crossing(Containment::Contained, Containment::Contained) == 0);
  CHECK(count_crossing(Containment::Outside, Containment::Outside) == 0);
}

TEST_CASE("press length classification uses strict inequalities") {
  CHECK_FALSE(is_long_press(36, 300, 120));
  CHECK(is_long_press(37, 300, 120));
  CHECK(is_short_press(35, 300, 120));
  CHECK_FALSE(is_short_press(36, 300, 120));
  CHECK(movement_enabled(Technique::PushRelease, false, 0, 300, 120));
  CHECK(movement_enabled(Technique::DragFlick, false, 0, 300, 120));
  CHECK_FALSE(movement_enabled(Technique::Linear, true, 36, 300, 120));
  CHECK(movement_enabled(Technique::Linear, true, 37, 300, 120));
}

TEST_CASE("config validation") {
  TrialConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.frame_width_cm = 20.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.tick_hz = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.target_distance_cm = -1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("target placement follows side") {
  TrialConfig cfg;
  cfg.target_distance_cm = 500;
  cfg.side = Side::Right;
  CHECK(cfg.target_angles_deg().at(0) == doctest::Approx(87.61).epsilon(1e-3));
  cfg.side = Side::Left;
  CHECK(cfg.target_angles_deg().at(0) == doctest::Approx(-87.61).epsilon(1e-3));
  cfg.markers_deg = {10.0, 20.0};
  CHECK(cfg.target_angles_deg().size() == 2);
}

TEST_CASE("movement waits for the long press, then turning right brings a right target in") {
  TrialConfig cfg = linear_config();
  ScriptedSource src([](const Observation&) {
    InputSample s;
    s.yaw_deg = 45.0;
    s.button = true;
    return s;
  });
  const TrialResult r = run_trial(cfg, src, {}, {.record_ticks = true});
  REQUIRE(r.tick_log.size() > 40);
  for (int i = 0; i <= 36; ++i) CHECK(r.tick_log[i].y_norm == 0.0);
  CHECK(r.tick_log[37].y_norm == 0.5);
  CHECK(r.tick_log[37].event.find("long_press") != std::string::npos);
  CHECK(r.tick_log[37].workspace_deg == doctest::Approx(0.5 * 100.0 / 120.0));
  CHECK_FALSE(r.success);
  CHECK(r.failure_reason == "timeout");
}

TEST_CASE("a pre-contained target selected by a short press") {
  TrialConfig cfg = linear_config();
  cfg.markers_deg = {0.0};
  ScriptedSource src([](const Observation& obs) {
    InputSample s;
    s.button = obs.tick < 12;
    return s;
  });
  const TrialResult r = run_trial(cfg, src, {});
  CHECK(r.success);
  CHECK(r.crossings == 1);
  CHECK(r.additional_attempts == 0);
  CHECK(r.trial_time_s == doctest::Approx(12.0 / 120.0).epsilon(1e-9));
}

TEST_CASE("a short press away from the target is an additional attempt") {
  TrialConfig cfg = linear_config();
  cfg.max_trial_s = 1.0;
  ScriptedSource src([](const Observation& obs) {
    InputSample s;
    s.button = obs.tick >= 10 && obs.tick < 20;
    return s;
  });
  const TrialResult r = run_trial(cfg, src, {});
  CHECK_FALSE(r.success);
  CHECK(r.additional_attempts == 1);
}

TEST_CASE("holding the head in the stop zone times out with a still workspace") {
  TrialConfig cfg = linear_config();
  cfg.max_trial_s = 2.0;
  ScriptedSource src([](const Observation& obs) {
    InputSample s;
    s.yaw_deg = 5.0 * std::sin(obs.tick * 0.1);
    s.button = true;
    return s;
  });
  const TrialResult r = run_trial(cfg, src, {}, {.record_ticks = true});
  CHECK_FALSE(r.success);
  CHECK(r.ticks == 240);
  for (const TickRow& row : r.tick_log) CHECK(row.workspace_deg == 0.0);
}

TEST_CASE("clock can start at movement onset") {
  TrialConfig cfg = linear_config();
  cfg.markers_deg = {0.0};
  const auto script = [](const Observation& obs) {
    InputSample s;
    s.yaw_deg = obs.tick < 40 ? 20.0 : 0.0;
    s.button = obs.tick < 70 || (obs.tick >= 200 && obs.tick < 210);
    return s;
  };
  ScriptedSource a(script);
  ScriptedSource b(script);
  const TrialResult press = run_trial(cfg, a, {});
  cfg.clock_start = ClockStart::MovementOnset;
  const TrialResult onset = run_trial(cfg, b, {});
  CHECK(press.success);
  CHECK(onset.success);
  CHECK(press.trial_time_s - onset.trial_time_s == doctest::Approx(37.0 / 120.0));
}

TEST_CASE("same input twice gives identical results") {
  TrialConfig cfg = linear_config();
  const auto script = [](const Observation& obs) {
    InputSample s;
    s.yaw_deg = 60.0 * std::sin(obs.tick * 0.01);
    s.button = true;
    return s;
  };
  ScriptedSource a(script);
  ScriptedSource b(script);
  CHECK(run_trial(cfg, a, {}, {.record_ticks = true}) ==
        run_trial(cfg, b, {}, {.record_ticks = true}));
}

}  // TEST_SUITE
