#pragma once

// Cylindrical display and circular 360 degree workspace.
//
// Angles are degrees at every API boundary; lengths are centimetres measured
// along the display surface.

#include <numbers>

namespace headnav {

inline constexpr double kDegPerRad = 180.0 / std::numbers::pi;
inline constexpr double kRadPerDeg = std::numbers::pi / 180.0;

struct DisplayGeometry {
  double radius_cm = 327.0;
  double viewing_angle_deg = 180.0;
  double window_arc_cm = 800.0;
  double max_workspace_speed_deg_s = 100.0;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;

  /// Max workspace speed expressed as surface travel (display-only figure).
  [[nodiscard]] double max_workspace_speed_cm_s() const;

  friend bool operator==(const DisplayGeometry&, const DisplayGeometry&) = default;
};

/// Position of the workspace origin relative to display centre, in [0, 360).
class WorkspaceAngle {
 public:
  constexpr WorkspaceAngle() = default;
  explicit WorkspaceAngle(double degrees);

  [[nodiscard]] constexpr double degrees() const { return degrees_; }

  friend bool operator==(WorkspaceAngle, WorkspaceAngle) = default;

 private:
  double degrees_ = 0.0;
};

/// Visual angle subtended by a surface arc: (arc / r) * 180 / pi.
[[nodiscard]] double arc_to_angle(double arc_cm, const DisplayGeometry& geom);

/// Surface arc subtended by an angle. Negative angles give negative arcs.
[[nodiscard]] double angle_to_arc(double angle_deg, const DisplayGeometry& geom);

/// Maps [-half_range, +half_range] linearly onto [-1, 1], clamping outside.
[[nodiscard]] double normalize_yaw(double yaw_deg, double half_range_deg = 90.0);

[[nodiscard]] WorkspaceAngle wrap_workspace(double angle_deg);

/// Signed shortest rotation from `from_deg` to `to_deg`, in (-180, 180].
[[nodiscard]] double circular_delta(double from_deg, double to_deg);

}  // namespace headnav
