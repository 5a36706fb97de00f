#pragma once

#include <string>
#include <vector>

#include "pih/geom.hpp"

namespace pih {

/// Geometry and contact parameters of one insertion task. hole_pose is the
/// true goal: the fully inserted end-effector pose, with the hole frame's -z
/// axis equal to the insertion direction. The hole opening sits at
/// hole_pose.p - insertion_axis * hole_depth, cross-sections are squares.
struct PegHoleScene {
  Pose hole_pose;
  double hole_half_width = 0.0105;   // m
  double peg_half_width = 0.0095;    // m
  double hole_depth = 0.02;          // m
  double peg_height = 0.04;          // m
  double surface_stiffness = 1e4;    // N/m
  double contact_damping = 50.0;     // N*s/m
  double friction_mu = 0.3;
  Vec3 insertion_axis{0.0, 0.0, -1.0};
  bool planar = false;  // confine motion to the hole frame x-z plane

  double clearance() const { return hole_half_width - peg_half_width; }
  /// Center of the hole opening on the surface plane.
  Vec3 entrance() const { return hole_pose.p - insertion_axis * hole_depth; }
  /// World-from-hole rotation; hole frame +z points out of the hole.
  Eigen::Matrix3d hole_rotation() const { return hole_pose.q.toRotationMatrix(); }

  void validate() const;  // throws std::invalid_argument on bad parameters
};

/// Spans for per-episode scene randomization. Offsets are expressed in the
/// hole frame; angles in degrees.
struct RandomizationRanges {
  double init_pos_range = 0.4;            // m, uniform per lateral axis
  double init_ang_range_deg = 10.0;       // uniform per axis
  double goal_noise_pos_bound = 0.002;    // m, truncated gaussian per axis
  double goal_noise_ang_bound_deg = 5.0;  // truncated gaussian per axis
  Vec3 goal_bias{0.0, 0.0, 0.0};          // deterministic estimate offset, hole frame
  double fg_low = 0.0;                    // N
  double fg_high = 10.0;                  // N
  double stiffness_low = 1e3;             // N/m, log-uniform span
  double stiffness_high = 1e5;            // N/m
  std::vector<Vec3> insertion_axes;       // empty: keep the scene's axis
  double standoff = 0.02;                 // m above the opening along -axis

  void validate() const;
};

/// Builds a pose whose -z axis equals the given insertion direction. The
/// remaining in-plane axes are chosen deterministically.
Quat orientation_for_axis(const Vec3& insertion_axis);

PegHoleScene scene_from_json_text(const std::string& text);
std::string scene_to_json_text(const PegHoleScene& scene);
PegHoleScene load_scene(const std::string& path);
void save_scene(const PegHoleScene& scene, const std::string& path);

RandomizationRanges ranges_from_json_text(const std::string& text);
std::string ranges_to_json_text(const RandomizationRanges& r);

}  // namespace pih
