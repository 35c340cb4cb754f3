#include "headnav/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace headnav {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument(std::string(what) + " must be finite");
  }
}

}  // namespace

void DisplayGeometry::validate() const {
  if (!(std::isfinite(radius_cm) && radius_cm > 0.0)) {
    throw std::invalid_argument("geometry.radius_cm must be > 0");
  }
  if (!(std::isfinite(viewing_angle_deg) && viewing_angle_deg > 0.0 &&
        viewing_angle_deg <= 360.0)) {
    throw std::invalid_argument("geometry.viewing_angle_deg must be in (0, 360]");
  }
  const double display_arc = radius_cm * viewing_angle_deg * kRadPerDeg;
  if (!(std::isfinite(window_arc_cm) && window_arc_cm > 0.0 &&
        window_arc_cm <= display_arc)) {
    throw std::invalid_argument("geometry.window_arc_cm must be in (0, " +
                                std::to_string(display_arc) + "]");
  }
  if (!(std::isfinite(max_workspace_speed_deg_s) &&
        max_workspace_speed_deg_s > 0.0)) {
    throw std::invalid_argument("geometry.max_workspace_speed_deg_s must be > 0");
  }
}

double DisplayGeometry::max_workspace_speed_cm_s() const {
  return angle_to_arc(max_workspace_speed_deg_s, *this);
}

WorkspaceAngle::WorkspaceAngle(double degrees) {
  require_finite(degrees, "workspace angle");
  double w = std::fmod(degrees, 360.0);
  if (w < 0.0) w += 360.0;
  // fmod of a tiny negative value can round back up to exactly 360.
  if (w >= 360.0) w = 0.0;
  degrees_ = w;
}

double arc_to_angle(double arc_cm, const DisplayGeometry& geom) {
  require_finite(arc_cm, "arc length");
  if (arc_cm < 0.0) {
    throw std::invalid_argument("arc length must be non-negative");
  }
  return arc_cm / geom.radius_cm * kDegPerRad;
}

double angle_to_arc(double angle_deg, const DisplayGeometry& geom) {
  require_finite(angle_deg, "angle");
  return angle_deg / kDegPerRad * geom.radius_cm;
}

double normalize_yaw(double yaw_deg, double half_range_deg) {
  if (!(half_range_deg > 0.0)) {
    throw std::invalid_argument("half_range_deg must be > 0");
  }
  require_finite(yaw_deg, "yaw");
  return std::clamp(yaw_deg / half_range_deg, -1.0, 1.0);
}

WorkspaceAngle wrap_workspace(double angle_deg) {
  return WorkspaceAngle(angle_deg);
}

double circular_delta(double from_deg, double to_deg) {
  double d = std::fmod(to_deg - from_deg, 360.0);
  if (d <= -180.0) d += 360.0;
  if (d > 180.0) d -= 360.0;
  return d;
}

}  // namespace headnav
