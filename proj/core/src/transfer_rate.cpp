#include "headnav/transfer_rate.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace headnav {

void RateParams::validate() const {
  if (!(dead_zone >= 0.0 && dead_zone < 1.0)) {
    throw std::invalid_argument("rate.dead_zone must be in [0, 1)");
  }
  if (!(std::isfinite(p) && p > 0.0)) {
    throw std::invalid_argument("rate.p must be > 0");
  }
  if (!std::isfinite(offset)) {
    throw std::invalid_argument("rate.offset must be finite");
  }
  if (!(std::isfinite(b) && b >= 1.0)) {
    throw std::invalid_argument("rate.b must be >= 1");
  }
}

void require_normalized(double x, const char* what) {
  if (!std::isfinite(x) || x < -1.0 || x > 1.0) {
    throw std::invalid_argument(std::string(what) +
                                " must be a finite value in [-1, 1]");
  }
}

double linear(double x, const RateParams& params) {
  require_normalized(x, "x");
  return std::abs(x) > params.dead_zone ? x : 0.0;
}

double sigmoid(double x, const RateParams& params) {
  require_normalized(x, "x");
  if (x > params.dead_zone) {
    return 1.0 / (1.0 + std::exp(-x * params.p + params.offset));
  }
  if (x < -params.dead_zone) {
    return -1.0 / (1.0 + std::exp(x * params.p + params.offset));
  }
  return 0.0;
}

double polynomial(double x, const RateParams& params) {
  require_normalized(x, "x");
  if (std::abs(x) <= params.dead_zone) return 0.0;
  const double magnitude = std::pow(std::abs(x), params.b);
  return x < 0.0 ? -magnitude : magnitude;
}

}  // namespace headnav
