#include <cmath>
#include <initializer_list>
#include <stdexcept>

#include <doctest.h>

#include "headnav/transfer_rate.hpp"

using namespace headnav;

TEST_SUITE("transfer_rate") {

TEST_CASE("linear") {
  CHECK(linear(0.05) == 0.0);
  CHECK(linear(0.7) == 0.7);
  CHECK(linear(-0.7) == -0.7);
  CHECK(linear(0.11) == 0.0);
  CHECK(linear(-0.11) == 0.0);
  CHECK(linear(1.0) == 1.0);
}

TEST_CASE("sigmoid") {
  CHECK(sigmoid(0.5) == 0.5);
  CHECK(sigmoid(-0.5) == -0.5);
  CHECK(std::abs(sigmoid(1.0) - 0.993307) <= 1e-6);
  CHECK(std::abs(sigmoid(1.0) - 1.0 / (1.0 + std::exp(-5.0))) < 1e-15);
  CHECK(sigmoid(0.05) == 0.0);
  CHECK(sigmoid(0.11) == 0.0);
}

TEST_CASE("sigmoid honours p and offset") {
  RateParams rp;
  rp.p = 4.0;
  rp.offset = 1.0;
  CHECK(sigmoid(0.25, rp) == 0.5);
  CHECK(sigmoid(0.8, rp) == doctest::Approx(1.0 / (1.0 + std::exp(-2.2))));
}

TEST_CASE("polynomial") {
  CHECK(polynomial(0.5) == 0.25);
  CHECK(polynomial(-1.0) == -1.0);
  CHECK(polynomial(0.11) == 0.0);
  CHECK(polynomial(-0.5) == -0.25);
  RateParams cubic;
  cubic.b = 3.0;
  CHECK(polynomial(0.5, cubic) == doctest::Approx(0.125));
}

TEST_CASE("inputs outside [-1, 1] or non-finite are rejected") {
  CHECK_THROWS_AS((void)linear(1.5), std::invalid_argument);
  CHECK_THROWS_AS((void)sigmoid(-1.0001), std::invalid_argument);
  CHECK_THROWS_AS((void)polynomial(NAN), std::invalid_argument);
}

TEST_CASE("parameter validation") {
  RateParams rp;
  CHECK_NOTHROW(rp.validate());
  rp.b = 0.0;
  CHECK_THROWS_AS(rp.validate(), std::invalid_argument);
  rp = {};
  rp.dead_zone = 1.0;
  CHECK_THROWS_AS(rp.validate(), std::invalid_argument);
}

TEST_CASE("outputs stay in [-1, 1] and are monotone outside the dead zone") {
  for (auto fn : {&linear, &sigmoid, &polynomial}) {
    double prev = -2.0;
    for (int i = 0; i <= 2000; ++i) {
      const double x = (2.0 * i - 2000) / 2000;
      const double y = fn(x, RateParams{});
      CHECK(std::abs(y) <= 1.0);
      CHECK(y >= prev);
      prev = y;
    }
  }
}

}  // TEST_SUITE
