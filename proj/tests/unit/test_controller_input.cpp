#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "headnav/controller_input.hpp"
#include "headnav/transfer_rate.hpp"

using namespace headnav;

namespace {
constexpr double kDt = 1.0 / 120.0;
}

TEST_SUITE("controller_input") {

TEST_CASE("drag output is gain times input, clamped") {
  const DragFlickStep st = drag_flick_step({}, 0.3, true, kDt);
  CHECK(st.velocity == 0.3);
  CHECK(st.state.phase == DragPhase::Dragging);
  DragFlickParams p;
  p.gain = 4.0;
  CHECK(drag_flick_step({}, 0.3, true, kDt, p).velocity == 1.0);
  CHECK(drag_flick_step({}, -0.3, true, kDt, p).velocity == -1.0);
}

TEST_CASE("flick branch") {
  DragFlickParams p;
  p.damping = 1.0;
  CHECK(flick_velocity(0.5, 0.2, p) == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(flick_velocity(-0.5, 0.2, p) == doctest::Approx(-0.8).epsilon(1e-15));
  CHECK(flick_velocity(0.5, 1.0, p) == 0.0);
  CHECK(flick_velocity(0.5, 3.0, p) == 0.0);
  CHECK(flick_velocity(0.9, 0.0) == 1.0);
}

TEST_CASE("release while moving starts a flick that decays to idle") {
  DragFlickState s;
  s = drag_flick_step(s, 0.4, true, kDt).state;
  DragFlickStep st = drag_flick_step(s, 0.4, false, kDt);
  CHECK(st.state.phase == DragPhase::Flicking);
  CHECK(st.velocity == doctest::Approx(0.8));
  int ticks = 0;
  while (st.state.phase == DragPhase::Flicking && ticks < 10000) {
    st = drag_flick_step(st.state, 0.0, false, kDt);
    ++ticks;
  }
  CHECK(st.velocity == 0.0);
  CHECK(st.state.phase == DragPhase::Idle);
  CHECK(std::abs(ticks * kDt - 0.8 / 1.5) <= kDt);
}

TEST_CASE("release with a still hand does not flick") {
  DragFlickState s;
  s = drag_flick_step(s, 0.4, true, kDt).state;
  const DragFlickStep st = drag_flick_step(s, 0.0, false, kDt);
  CHECK(st.state.phase == DragPhase::Idle);
  CHECK(st.velocity == 0.0);
}

TEST_CASE("pressing during a flick catches it") {
  DragFlickState s;
  s = drag_flick_step(s, 0.4, true, kDt).state;
  s = drag_flick_step(s, 0.4, false, kDt).state;
  const DragFlickStep st = drag_flick_step(s, 0.0, true, kDt);
  CHECK(st.state.phase == DragPhase::Dragging);
  CHECK(st.velocity == 0.0);
}

TEST_CASE("push and release reuses the polynomial") {
  CHECK(push_release(0.5) == 0.25);
  CHECK(push_release(0.05) == 0.0);
  CHECK(push_release(-1.0) == -1.0);
  for (int i = 0; i <= 200; ++i) {
    const double j = (2.0 * i - 200) / 200;
    CHECK(push_release(j) == polynomial(j));
  }
}

TEST_CASE("controller velocity normalization") {
  CHECK(normalize_controller_velocity(50.0) == 0.5);
  CHECK(normalize_controller_velocity(-250.0) == -1.0);
  CHECK(normalize_controller_velocity(30.0, 60.0) == 0.5);
}

TEST_CASE("drag-flick parameter validation") {
  DragFlickParams p;
  CHECK_NOTHROW(p.validate());
  p.damping = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

}  // TEST_SUITE
