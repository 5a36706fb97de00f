#pragma once

#include <vector>

#include "pih/geom.hpp"
#include "pih/rng.hpp"
#include "pih/scene.hpp"

namespace pih {

/// Simulated end-effector: an ideal position-tracked frame. F_ext is the
/// last computed contact wrench, expressed in world coordinates as the
/// reaction the environment exerts on the peg, moments about the peg
/// reference point (bottom-center of the peg box).
struct RobotState {
  Pose x;
  Twist twist;
  Wrench F_ext;
};

struct SimConfig {
  double inner_dt = 1.0 / 500.0;  // s
  double tau_track = 0.05;        // s, first-order tracking lag
  double max_lin_speed = 0.5;     // m/s
  double max_ang_speed = 2.0;     // rad/s

  void validate() const;
};

/// One resolved contact: which slab fired, penetration, force and where it
/// acts. Exposed so tests can cross-check the per-face summation.
struct ContactPoint {
  int slab = -1;           // 0:+x 1:-x 2:+y 3:-y 4:bottom (hole frame)
  double depth = 0.0;      // m along the contact normal
  Vec3 normal;             // hole frame, pushes the peg out of the slab
  Vec3 force;              // hole frame, normal + friction
  Vec3 application_point;  // hole frame, centroid of the overlap box
};

/// Penalty contacts between the axis-aligned peg box and the five solid
/// slabs bounding the hole (four walls plus bottom), in the hole frame.
std::vector<ContactPoint> contact_points(const RobotState& state, const PegHoleScene& scene);

/// Aggregate reaction wrench on the peg in world coordinates.
Wrench contact_wrench(const RobotState& state, const PegHoleScene& scene);

/// Deepest penetration across all slabs, 0 when separated.
double max_penetration(const Pose& x, const PegHoleScene& scene);

/// Places the end-effector at init with zero twist and zero wrench.
/// Throws std::invalid_argument when init penetrates deeper than 1 mm.
RobotState reset(const PegHoleScene& scene, const Pose& init);

/// One inner-loop tick: first-order lag toward the command pose, with speed
/// caps, then the contact wrench is recomputed. Deterministic.
RobotState step_inner(const RobotState& state, const Pose& x_c, const PegHoleScene& scene,
                      const SimConfig& cfg);

/// True iff the end-effector position is within 1 mm of the goal position.
bool check_success(const RobotState& state, const Pose& goal);

struct SceneSample {
  PegHoleScene scene;
  Pose init;
  Pose noisy_goal;
  double fg = 0.0;  // N
};

/// Draws one randomized episode setup: insertion plane, surface stiffness
/// (log-uniform), initial pose offset (uniform), goal-estimate noise
/// (truncated gaussian, sigma = bound/2) and desired insertion force.
SceneSample randomize_scene(Rng& rng, const PegHoleScene& base, const RandomizationRanges& ranges);

}  // namespace pih
