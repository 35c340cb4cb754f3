#pragma once

// Rate-control transfer functions: normalized yaw x in [-1, 1] to normalized
// workspace velocity y in [-1, 1]. All three share a stop zone |x| <= dead_zone
// where the output is exactly zero.
//
// Inputs outside [-1, 1] or non-finite inputs throw std::invalid_argument;
// clamping belongs upstream in normalize_yaw().

namespace headnav {

struct RateParams {
  double dead_zone = 0.11;
  /// Sigmoid steepness.
  double p = 10.0;
  /// Sigmoid shift.
  double offset = 5.0;
  /// Polynomial exponent.
  double b = 2.0;

  void validate() const;

  friend bool operator==(const RateParams&, const RateParams&) = default;
};

[[nodiscard]] double linear(double x, const RateParams& params = {});
[[nodiscard]] double sigmoid(double x, const RateParams& params = {});
[[nodiscard]] double polynomial(double x, const RateParams& params = {});

/// Throws std::invalid_argument unless x is finite and within [-1, 1].
void require_normalized(double x, const char* what);

}  // namespace headnav
