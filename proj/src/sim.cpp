#include "pih/sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pih {

namespace {

constexpr double kCreepSpeed = 1e-4;  // m/s, friction regularization knee

struct Interval {
  double lo, hi;
  double extent() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
};

struct SlabSpec {
  int id;
  int normal_axis;    // axis the exit normal lives on
  double normal_sign; // +1 or -1
  // Region bounds per axis; +-inf for unbounded sides.
  double lo[3];
  double hi[3];
};

}  // namespace

void SimConfig::validate() const {
  if (!(inner_dt > 0.0)) throw std::invalid_argument("sim: inner_dt must be > 0");
  if (!(tau_track >= inner_dt))
    throw std::invalid_argument("sim: tau_track must be >= inner_dt");
  if (!(max_lin_speed > 0.0) || !(max_ang_speed > 0.0))
    throw std::invalid_argument("sim: speed caps must be > 0");
}

std::vector<ContactPoint> contact_points(const RobotState& state, const PegHoleScene& scene) {
  const Eigen::Matrix3d R = scene.hole_rotation();
  const Vec3 p = R.transpose() * (state.x.p - scene.entrance());
  const Vec3 v = R.transpose() * state.twist.v;

  const double aw = scene.peg_half_width;
  const double hw = scene.hole_half_width;
  const double depth = scene.hole_depth;
  const double inf = std::numeric_limits<double>::infinity();

  // Peg box in the hole frame; the reference point is the bottom-center.
  const double peg_lo[3] = {p.x() - aw, p.y() - aw, p.z()};
  const double peg_hi[3] = {p.x() + aw, p.y() + aw, p.z() + scene.peg_height};

  // Solid = four wall slabs plus the bottom slab. Walls are bounded by the
  // surface plane z=0 on top and by one hole face laterally.
  const SlabSpec slabs[5] = {
      {0, 0, +1.0, {hw, -inf, -inf}, {inf, inf, 0.0}},
      {1, 0, -1.0, {-inf, -inf, -inf}, {-hw, inf, 0.0}},
      {2, 1, +1.0, {-inf, hw, -inf}, {inf, inf, 0.0}},
      {3, 1, -1.0, {-inf, -inf, -inf}, {inf, -hw, 0.0}},
      {4, 2, +1.0, {-inf, -inf, -inf}, {inf, inf, -depth}},
  };

  std::vector<ContactPoint> out;
  for (const SlabSpec& s : slabs) {
    Interval ov[3];
    bool overlapping = true;
    for (int a = 0; a < 3 && overlapping; ++a) {
      ov[a] = {std::max(peg_lo[a], s.lo[a]), std::min(peg_hi[a], s.hi[a])};
      if (!(ov[a].extent() > 0.0)) overlapping = false;
    }
    if (!overlapping) continue;

    // Candidate exits: along each axis where the region is bounded, the
    // distance to move the peg box fully out. The smallest wins.
    double best = inf;
    int best_axis = -1;
    double best_sign = 0.0;
    for (int a = 0; a < 3; ++a) {
      if (std::isfinite(s.hi[a])) {
        const double d = s.hi[a] - peg_lo[a];  // push toward +a
        if (d < best) { best = d; best_axis = a; best_sign = +1.0; }
      }
      if (std::isfinite(s.lo[a])) {
        const double d = peg_hi[a] - s.lo[a];  // push toward -a
        if (d < best) { best = d; best_axis = a; best_sign = -1.0; }
      }
    }
    if (best_axis < 0 || !(best > 0.0)) continue;

    ContactPoint c;
    c.slab = s.id;
    c.depth = best;
    c.normal = Vec3::Zero();
    c.normal[best_axis] = best_sign;
    c.application_point = Vec3(ov[0].mid(), ov[1].mid(), ov[2].mid());

    const double v_n = v.dot(c.normal);
    const double f_n = std::max(0.0, scene.surface_stiffness * best - scene.contact_damping * v_n);
    Vec3 f = f_n * c.normal;
    if (scene.friction_mu > 0.0 && f_n > 0.0) {
      const Vec3 v_t = v - v_n * c.normal;
      const double sp = v_t.norm();
      if (sp > kCreepSpeed) {
        f -= scene.friction_mu * f_n * (v_t / sp);
      } else if (sp > 0.0) {
        f -= scene.friction_mu * f_n * (v_t / kCreepSpeed);
      }
    }
    c.force = f;
    out.push_back(c);
  }
  return out;
}

Wrench contact_wrench(const RobotState& state, const PegHoleScene& scene) {
  const Eigen::Matrix3d R = scene.hole_rotation();
  const Vec3 p = R.transpose() * (state.x.p - scene.entrance());

  Vec3 F = Vec3::Zero();
  Vec3 M = Vec3::Zero();
  for (const ContactPoint& c : contact_points(state, scene)) {
    F += c.force;
    M += (c.application_point - p).cross(c.force);
  }
  return Wrench{R * F, R * M};
}

double max_penetration(const Pose& x, const PegHoleScene& scene) {
  RobotState s;
  s.x = x;
  double worst = 0.0;
  for (const ContactPoint& c : contact_points(s, scene)) worst = std::max(worst, c.depth);
  return worst;
}

RobotState reset(const PegHoleScene& scene, const Pose& init) {
  scene.validate();
  if (max_penetration(init, scene) > 1e-3)
    throw std::invalid_argument("reset: initial pose penetrates deeper than 1 mm");
  RobotState s;
  s.x = init;
  s.twist = Twist{};
  s.F_ext = Wrench{};
  return s;
}

RobotState step_inner(const RobotState& state, const Pose& x_c, const PegHoleScene& scene,
                      const SimConfig& cfg) {
  const PoseError e = pose_error(state.x, x_c);

  Vec3 v = e.dp / cfg.tau_track;
  const double vn = v.norm();
  if (vn > cfg.max_lin_speed) v *= cfg.max_lin_speed / vn;

  Vec3 w = e.dtheta / cfg.tau_track;
  const double wn = w.norm();
  if (wn > cfg.max_ang_speed) w *= cfg.max_ang_speed / wn;

  Pose next = integrate_pose(state.x, Twist{v, w}, cfg.inner_dt);

  if (scene.planar) {
    // Confine motion to the hole frame x-z plane and lock orientation.
    const Eigen::Matrix3d R = scene.hole_rotation();
    Vec3 ph = R.transpose() * (next.p - scene.entrance());
    ph.y() = 0.0;
    next = Pose(scene.entrance() + R * ph, scene.hole_pose.q);
  }

  RobotState out;
  out.x = next;
  out.twist.v = (next.p - state.x.p) / cfg.inner_dt;
  out.twist.w = quat_log(next.q * state.x.q.conjugate()) / cfg.inner_dt;
  out.F_ext = contact_wrench(out, scene);
  return out;
}

bool check_success(const RobotState& state, const Pose& goal) {
  return (state.x.p - goal.p).norm() < 1e-3;
}

SceneSample randomize_scene(Rng& rng, const PegHoleScene& base, const RandomizationRanges& ranges) {
  base.validate();
  ranges.validate();

  SceneSample s;
  s.scene = base;

  // Draw order is fixed: insertion axis, stiffness, init offsets, init
  // angles, goal position noise, goal orientation noise, insertion force.
  if (!ranges.insertion_axes.empty()) {
    const int k = rng.uniform_int(0, static_cast<int>(ranges.insertion_axes.size()) - 1);
    const Vec3 axis = ranges.insertion_axes[static_cast<size_t>(k)];
    s.scene.insertion_axis = axis;
    s.scene.hole_pose = Pose(base.hole_pose.p, orientation_for_axis(axis));
  }

  if (ranges.stiffness_low == ranges.stiffness_high) {
    s.scene.surface_stiffness = ranges.stiffness_low;
  } else {
    s.scene.surface_stiffness = rng.log_uniform(ranges.stiffness_low, ranges.stiffness_high);
  }
  s.scene.validate();

  const Eigen::Matrix3d R = s.scene.hole_rotation();
  const bool planar = s.scene.planar;

  Vec3 lateral = Vec3::Zero();
  lateral.x() = rng.uniform(-ranges.init_pos_range, ranges.init_pos_range);
  lateral.y() = planar ? 0.0 : rng.uniform(-ranges.init_pos_range, ranges.init_pos_range);

  const double ang = ranges.init_ang_range_deg * M_PI / 180.0;
  Vec3 init_rot = Vec3::Zero();
  if (!planar) {
    init_rot.x() = rng.uniform(-ang, ang);
    init_rot.y() = rng.uniform(-ang, ang);
    init_rot.z() = rng.uniform(-ang, ang);
  }

  const Vec3 init_p =
      s.scene.entrance() - s.scene.insertion_axis * ranges.standoff + R * lateral;
  const Quat init_q = planar ? s.scene.hole_pose.q
                             : canonical_sign(quat_exp(R * init_rot) * s.scene.hole_pose.q);
  s.init = Pose(init_p, init_q);

  const double pb = ranges.goal_noise_pos_bound;
  Vec3 pn;
  pn.x() = rng.gaussian_trunc(0.5 * pb, pb);
  pn.y() = planar ? 0.0 : rng.gaussian_trunc(0.5 * pb, pb);
  pn.z() = rng.gaussian_trunc(0.5 * pb, pb);

  const double ab = ranges.goal_noise_ang_bound_deg * M_PI / 180.0;
  Vec3 an = Vec3::Zero();
  if (!planar) {
    an.x() = rng.gaussian_trunc(0.5 * ab, ab);
    an.y() = rng.gaussian_trunc(0.5 * ab, ab);
    an.z() = rng.gaussian_trunc(0.5 * ab, ab);
  }

  const Vec3 noisy_p = s.scene.hole_pose.p + R * (pn + ranges.goal_bias);
  const Quat noisy_q = planar ? s.scene.hole_pose.q
                              : canonical_sign(quat_exp(R * an) * s.scene.hole_pose.q);
  s.noisy_goal = Pose(noisy_p, noisy_q);

  s.fg = rng.uniform(ranges.fg_low, ranges.fg_high);
  return s;
}

}  // namespace pih
