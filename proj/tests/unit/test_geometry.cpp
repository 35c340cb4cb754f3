#include <cmath>
#include <initializer_list>
#include <numbers>
#include <stdexcept>

#include <doctest.h>

#include "headnav/geometry.hpp"

using namespace headnav;

TEST_SUITE("geometry") {

TEST_CASE("window arcs convert to reference visual angles") {
  const DisplayGeometry g;
  CHECK(std::abs(arc_to_angle(400, g) - 70.09) <= 0.05);
  CHECK(std::abs(arc_to_angle(600, g) - 105.13) <= 0.05);
  CHECK(std::abs(arc_to_angle(800, g) - 140.17) <= 0.05);
}

TEST_CASE("target distances convert to reference separations") {
  const DisplayGeometry g;
  CHECK(std::abs(arc_to_angle(500, g) - 87.61) <= 0.05);
  CHECK(std::abs(arc_to_angle(750, g) - 131.41) <= 0.05);
  CHECK(std::abs(arc_to_angle(1000, g) - 175.22) <= 0.05);
}

TEST_CASE("arc and angle are inverse up to rounding") {
  const DisplayGeometry g;
  CHECK(arc_to_angle(0, g) == 0.0);
  CHECK(angle_to_arc(0, g) == 0.0);
  CHECK(std::abs(angle_to_arc(70.09, g) - 400.0) <= 0.3);
  for (double arc : {1.0, 37.5, 400.0, 1234.5}) {
    CHECK(angle_to_arc(arc_to_angle(arc, g), g) == doctest::Approx(arc).epsilon(1e-12));
  }
  // Independent closed form: theta = w / r in radians.
  CHECK(arc_to_angle(327.0, g) == doctest::Approx(180.0 / std::numbers::pi).epsilon(1e-14));
}

TEST_CASE("max workspace speed as surface travel") {
  const DisplayGeometry g;
  CHECK(std::abs(angle_to_arc(100.0, g) - 570.72) <= 0.5);
  CHECK(std::abs(g.max_workspace_speed_cm_s() - 570.56) <= 0.5);
}

TEST_CASE("arc_to_angle rejects negative and non-finite arcs") {
  const DisplayGeometry g;
  CHECK_THROWS_AS((void)arc_to_angle(-1.0, g), std::invalid_argument);
  CHECK_THROWS_AS((void)arc_to_angle(NAN, g), std::invalid_argument);
}

TEST_CASE("geometry validation") {
  DisplayGeometry g;
  CHECK_NOTHROW(g.validate());
  g.radius_cm = 0;
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
  g = {};
  g.window_arc_cm = -5;
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
}

TEST_CASE("normalize_yaw maps the half range to [-1, 1] and clamps") {
  CHECK(normalize_yaw(-90, 90) == -1.0);
  CHECK(normalize_yaw(0, 90) == 0.0);
  CHECK(normalize_yaw(45, 90) == 0.5);
  CHECK(normalize_yaw(120, 90) == 1.0);
  CHECK(normalize_yaw(-300, 90) == -1.0);
}

TEST_CASE("wrap_workspace lands in [0, 360)") {
  CHECK(wrap_workspace(370).degrees() == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(wrap_workspace(-5).degrees() == doctest::Approx(355.0).epsilon(1e-12));
  CHECK(wrap_workspace(175.22).degrees() == 175.22);
  CHECK(wrap_workspace(360).degrees() == 0.0);
  CHECK(wrap_workspace(-720).degrees() == 0.0);
  for (double a = -1000.0; a < 1000.0; a += 7.3) {
    const double w = wrap_workspace(a).degrees();
    CHECK(w >= 0.0);
    CHECK(w < 360.0);
  }
}

TEST_CASE("circular_delta returns the short way round in (-180, 180]") {
  CHECK(circular_delta(0, 10) == doctest::Approx(10));
  CHECK(circular_delta(350, 10) == doctest::Approx(20));
  CHECK(circular_delta(10, 350) == doctest::Approx(-20));
  CHECK(circular_delta(0, 180) == doctest::Approx(180));
  CHECK(circular_delta(180, 0) == doctest::Approx(180));
}

}  // TEST_SUITE
