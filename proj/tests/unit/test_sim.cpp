#include <doctest.h>

#include <cmath>

#include "pih/sim.hpp"

using namespace pih;

namespace {

// Square hole sunk into the z=0 surface; the true goal (inserted pose) sits
// 20 mm deep at the origin of x/y.
PegHoleScene test_scene() {
  PegHoleScene s;
  s.hole_pose = Pose(Vec3(0.0, 0.0, -0.02), Quat::Identity());
  s.hole_half_width = 0.0105;
  s.peg_half_width = 0.0095;
  s.hole_depth = 0.02;
  s.peg_height = 0.04;
  s.surface_stiffness = 1e4;
  s.contact_damping = 50.0;
  s.friction_mu = 0.3;
  s.insertion_axis = Vec3(0, 0, -1);
  return s;
}

RobotState state_at(const Vec3& p) {
  RobotState s;
  s.x = Pose(p, Quat::Identity());
  return s;
}

// Independent per-slab recomputation of the contact model, written as plain
// scalar arithmetic for cross-checking contact_wrench.
Wrench oracle_wrench(const Vec3& p, const Vec3& v, const PegHoleScene& sc) {
  const double aw = sc.peg_half_width, hw = sc.hole_half_width;
  const double k = sc.surface_stiffness, d = sc.contact_damping, mu = sc.friction_mu;
  Vec3 F = Vec3::Zero(), M = Vec3::Zero();

  struct Hit {
    Vec3 n, c;
    double depth;
  };
  std::vector<Hit> hits;
  const double zc = std::min(p.z() + sc.peg_height, 0.0);
  // +x wall
  if (p.x() + aw > hw && p.z() < 0.0) {
    const double dx = (p.x() + aw) - hw;
    const double dz = -p.z();
    Hit h;
    h.c = Vec3((std::max(p.x() - aw, hw) + p.x() + aw) / 2, p.y(), (p.z() + zc) / 2);
    if (dx < dz) {
      h.n = Vec3(-1, 0, 0);
      h.depth = dx;
    } else {
      h.n = Vec3(0, 0, 1);
      h.depth = dz;
    }
    hits.push_back(h);
  }
  // -x wall
  if (p.x() - aw < -hw && p.z() < 0.0) {
    const double dx = -hw - (p.x() - aw);
    const double dz = -p.z();
    Hit h;
    h.c = Vec3((p.x() - aw + std::min(p.x() + aw, -hw)) / 2, p.y(), (p.z() + zc) / 2);
    if (dx < dz) {
      h.n = Vec3(1, 0, 0);
      h.depth = dx;
    } else {
      h.n = Vec3(0, 0, 1);
      h.depth = dz;
    }
    hits.push_back(h);
  }
  // +y / -y walls
  if (p.y() + aw > hw && p.z() < 0.0) {
    const double dy = (p.y() + aw) - hw;
    const double dz = -p.z();
    Hit h;
    h.c = Vec3(p.x(), (std::max(p.y() - aw, hw) + p.y() + aw) / 2, (p.z() + zc) / 2);
    if (dy < dz) {
      h.n = Vec3(0, -1, 0);
      h.depth = dy;
    } else {
      h.n = Vec3(0, 0, 1);
      h.depth = dz;
    }
    hits.push_back(h);
  }
  if (p.y() - aw < -hw && p.z() < 0.0) {
    const double dy = -hw - (p.y() - aw);
    const double dz = -p.z();
    Hit h;
    h.c = Vec3(p.x(), (p.y() - aw + std::min(p.y() + aw, -hw)) / 2, (p.z() + zc) / 2);
    if (dy < dz) {
      h.n = Vec3(0, 1, 0);
      h.depth = dy;
    } else {
      h.n = Vec3(0, 0, 1);
      h.depth = dz;
    }
    hits.push_back(h);
  }
  // bottom
  if (p.z() < -sc.hole_depth) {
    Hit h;
    h.n = Vec3(0, 0, 1);
    h.depth = -sc.hole_depth - p.z();
    h.c = Vec3(p.x(), p.y(),
               (p.z() + std::min(p.z() + sc.peg_height, -sc.hole_depth)) / 2);
    hits.push_back(h);
  }

  for (const Hit& h : hits) {
    const double vn = v.dot(h.n);
    const double fn = std::max(0.0, k * h.depth - d * vn);
    Vec3 f = fn * h.n;
    const Vec3 vt = v - vn * h.n;
    if (mu > 0.0 && fn > 0.0 && vt.norm() > 0.0) {
      const double sp = vt.norm();
      f -= mu * fn * vt / std::max(sp, 1e-4);
    }
    F += f;
    M += (h.c - p).cross(f);
  }
  return Wrench{F, M};
}

}  // namespace

TEST_CASE("reset: free space and boundary poses carry zero wrench") {
  const PegHoleScene sc = test_scene();
  SUBCASE("40 cm above the hole") {
    const RobotState s = reset(sc, Pose(Vec3(0, 0, 0.4), Quat::Identity()));
    CHECK(s.F_ext.vec().norm() == 0.0);
    CHECK(s.twist.vec().norm() == 0.0);
  }
  SUBCASE("exactly at the hole entrance") {
    const RobotState s = reset(sc, Pose(Vec3(0, 0, 0.0), Quat::Identity()));
    CHECK(contact_wrench(s, sc).vec().norm() == 0.0);
  }
  SUBCASE("0.4 m lateral offset is accepted free space") {
    const RobotState s = reset(sc, Pose(Vec3(0.4, 0, 0.01), Quat::Identity()));
    CHECK(contact_wrench(s, sc).vec().norm() == 0.0);
  }
  SUBCASE("deep initial penetration is rejected") {
    CHECK_THROWS_AS(reset(sc, Pose(Vec3(0.1, 0, -0.002), Quat::Identity())),
                    std::invalid_argument);
  }
}

TEST_CASE("step_inner: fixed point and first-order lag") {
  const PegHoleScene sc = test_scene();
  SimConfig cfg;
  const RobotState s0 = reset(sc, Pose(Vec3(0, 0, 0.1), Quat::Identity()));

  SUBCASE("command at the current pose is a fixed point") {
    const RobotState s1 = step_inner(s0, s0.x, sc, cfg);
    CHECK((s1.x.p - s0.x.p).norm() == 0.0);
    CHECK(s1.F_ext.vec().norm() == 0.0);
  }
  SUBCASE("moves dt/tau of the gap toward the command") {
    const Pose cmd(Vec3(0.01, 0, 0.1), Quat::Identity());
    const RobotState s1 = step_inner(s0, cmd, sc, cfg);
    CHECK(s1.x.p.x() == doctest::Approx(0.01 * cfg.inner_dt / cfg.tau_track).epsilon(1e-12));
  }
}

TEST_CASE("step_inner: steady-state force equals stiffness times commanded penetration") {
  const PegHoleScene sc = test_scene();
  SimConfig cfg;
  // Command 2 mm below the solid surface, far from the hole.
  const Pose cmd(Vec3(0.1, 0, -0.002), Quat::Identity());
  RobotState s = reset(sc, Pose(Vec3(0.1, 0, 0.05), Quat::Identity()));
  for (int i = 0; i < 5000; ++i) s = step_inner(s, cmd, sc, cfg);
  // Fixed-point iteration converged; closed form: F = k_s * delta_cmd.
  CHECK(s.F_ext.F.z() == doctest::Approx(1e4 * 0.002).epsilon(1e-6));
  CHECK(std::abs(s.twist.v.z()) < 1e-9);
}

TEST_CASE("contact_wrench: separation, flat press, wall press oracle") {
  PegHoleScene sc = test_scene();

  SUBCASE("no overlap gives exactly zero") {
    CHECK(contact_wrench(state_at(Vec3(0.2, 0.1, 0.001)), sc).vec().norm() == 0.0);
  }
  SUBCASE("1 mm flat penetration at k=1000 gives 1 N up") {
    sc.surface_stiffness = 1000.0;
    sc.friction_mu = 0.0;
    const Wrench w = contact_wrench(state_at(Vec3(0.1, 0, -0.001)), sc);
    CHECK(w.F.z() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(w.F.head<2>().norm() == 0.0);
  }
  SUBCASE("0.5 mm wall press: 1 N lateral plus the lever-arm moment") {
    sc.surface_stiffness = 2000.0;
    sc.friction_mu = 0.0;
    const double px = sc.hole_half_width - sc.peg_half_width + 0.0005;
    const RobotState s = state_at(Vec3(px, 0, -0.005));
    const Wrench w = contact_wrench(s, sc);
    CHECK(w.F.x() == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(w.F.z() == doctest::Approx(0.0));
    CHECK(w.M.y() == doctest::Approx(-0.0025).epsilon(1e-9));  // half engagement depth
    const Wrench o = oracle_wrench(s.x.p, Vec3::Zero(), sc);
    CHECK((w.F - o.F).norm() < 1e-12);
    CHECK((w.M - o.M).norm() < 1e-12);
  }
}

TEST_CASE("contact_wrench matches the per-slab oracle on random poses") {
  const PegHoleScene sc = test_scene();
  Rng rng(5);
  for (int i = 0; i < 500; ++i) {
    const Vec3 p(rng.uniform(-0.03, 0.03), rng.uniform(-0.03, 0.03), rng.uniform(-0.025, 0.004));
    const Vec3 v(rng.gaussian() * 0.05, rng.gaussian() * 0.05, rng.gaussian() * 0.05);
    RobotState s = state_at(p);
    s.twist.v = v;
    const Wrench w = contact_wrench(s, sc);
    const Wrench o = oracle_wrench(p, v, sc);
    CHECK((w.F - o.F).norm() < 1e-9);
    CHECK((w.M - o.M).norm() < 1e-9);
  }
}

TEST_CASE("contact_wrench is continuous in pose away from regime boundaries") {
  const PegHoleScene sc = test_scene();
  const Vec3 base(0.1, 0.02, -0.001);  // pressing on the solid surface
  const Wrench w0 = contact_wrench(state_at(base), sc);
  for (int axis = 0; axis < 3; ++axis) {
    Vec3 p = base;
    p[axis] += 1e-8;
    const Wrench w1 = contact_wrench(state_at(p), sc);
    CHECK((w1.vec() - w0.vec()).norm() < 1e-3);
  }
}

TEST_CASE("contact force converges under a fixed command (energy sanity)") {
  const PegHoleScene sc = test_scene();
  SimConfig cfg;
  const Pose cmd(Vec3(0.1, 0, -0.0015), Quat::Identity());
  RobotState s = reset(sc, Pose(Vec3(0.1, 0, 0.02), Quat::Identity()));
  std::vector<double> forces;
  for (int i = 0; i < 400; ++i) {
    s = step_inner(s, cmd, sc, cfg);
    forces.push_back(s.F_ext.vec().cwiseAbs().maxCoeff());
  }
  double prev = 0.0, last = 0.0;
  for (int i = 200; i < 300; ++i) prev = std::max(prev, forces[static_cast<size_t>(i)]);
  for (int i = 300; i < 400; ++i) last = std::max(last, forces[static_cast<size_t>(i)]);
  CHECK(last <= prev + 1e-9);
}

TEST_CASE("step_inner is bit-deterministic") {
  const PegHoleScene sc = test_scene();
  SimConfig cfg;
  RobotState a = reset(sc, Pose(Vec3(0.005, 0.002, 0.01), Quat::Identity()));
  RobotState b = a;
  const Pose cmd(Vec3(0.0, 0.0, -0.004), quat_exp(Vec3(0.01, 0, 0)));
  for (int i = 0; i < 200; ++i) {
    a = step_inner(a, cmd, sc, cfg);
    b = step_inner(b, cmd, sc, cfg);
  }
  CHECK(a.x.p == b.x.p);
  CHECK(a.x.q.coeffs() == b.x.q.coeffs());
  CHECK(a.F_ext.vec() == b.F_ext.vec());
}

TEST_CASE("check_success is a 1 mm sphere, orientation independent") {
  const Pose goal(Vec3(0.1, 0.2, 0.3), Quat::Identity());
  RobotState s;
  s.x = Pose(goal.p + Vec3(0.0009, 0, 0), quat_exp(Vec3(0.5, -0.2, 0.8)));
  CHECK(check_success(s, goal));
  s.x = Pose(goal.p + Vec3(0.0011, 0, 0), Quat::Identity());
  CHECK_FALSE(check_success(s, goal));
  s.x = Pose(goal.p, quat_exp(Vec3(0, 0, 3.0)));
  CHECK(check_success(s, goal));
}

TEST_CASE("randomize_scene: collapsed ranges reproduce the base scene") {
  const PegHoleScene base = test_scene();
  RandomizationRanges r;
  r.init_pos_range = 0.0;
  r.init_ang_range_deg = 0.0;
  r.goal_noise_pos_bound = 0.0;
  r.goal_noise_ang_bound_deg = 0.0;
  r.fg_low = r.fg_high = 5.0;
  r.stiffness_low = r.stiffness_high = base.surface_stiffness;
  r.standoff = 0.02;

  Rng rng1(1), rng2(999);
  const SceneSample a = randomize_scene(rng1, base, r);
  const SceneSample b = randomize_scene(rng2, base, r);
  CHECK(a.scene.surface_stiffness == base.surface_stiffness);
  CHECK(a.fg == 5.0);
  CHECK((a.init.p - (base.entrance() - base.insertion_axis * 0.02)).norm() == 0.0);
  CHECK(a.noisy_goal.approx_equal(base.hole_pose, 0.0));
  CHECK((a.init.p - b.init.p).norm() == 0.0);
}

TEST_CASE("randomize_scene honors the configured spans") {
  const PegHoleScene base = test_scene();
  RandomizationRanges r;  // full-width defaults
  Rng rng(77);
  for (int i = 0; i < 1000; ++i) {
    const SceneSample s = randomize_scene(rng, base, r);
    const Vec3 lateral = s.init.p - (base.entrance() - base.insertion_axis * r.standoff);
    CHECK(std::abs(lateral.x()) <= 0.4 + 1e-12);
    CHECK(std::abs(lateral.y()) <= 0.4 + 1e-12);
    CHECK(s.fg >= 0.0);
    CHECK(s.fg <= 10.0);
    CHECK(s.scene.surface_stiffness >= 1e3 - 1e-9);
    CHECK(s.scene.surface_stiffness <= 1e5 + 1e-9);
    const PoseError e = pose_error(base.hole_pose, s.init);
    CHECK(e.dtheta.cwiseAbs().maxCoeff() <= 3 * (10.0 * M_PI / 180.0) + 1e-9);
    CHECK((s.noisy_goal.p - base.hole_pose.p).cwiseAbs().maxCoeff() <= 0.002 + 1e-12);
  }
}

TEST_CASE("goal noise statistics: zero mean, truncated at the bound") {
  const PegHoleScene base = test_scene();
  RandomizationRanges r;
  r.init_pos_range = 0.0;
  r.init_ang_range_deg = 0.0;
  r.fg_low = r.fg_high = 5.0;
  r.stiffness_low = r.stiffness_high = base.surface_stiffness;

  Rng rng(123);
  const int n = 100000;
  double sum = 0.0, max_abs = 0.0;
  for (int i = 0; i < n; ++i) {
    const SceneSample s = randomize_scene(rng, base, r);
    const double nx = (s.noisy_goal.p - base.hole_pose.p).x();
    sum += nx;
    max_abs = std::max(max_abs, std::abs(nx));
  }
  const double sigma = 0.001;  // bound/2
  CHECK(std::abs(sum / n) < 3.0 * sigma / std::sqrt(static_cast<double>(n)));
  CHECK(max_abs <= 0.002 + 1e-15);
}

TEST_CASE("randomized insertion planes re-orient the hole frame") {
  const PegHoleScene base = test_scene();
  RandomizationRanges r;
  r.insertion_axes = {Vec3(0, 0, -1), Vec3(1, 0, 0), Vec3(0, -1, 0)};
  r.init_pos_range = 0.0;
  r.init_ang_range_deg = 0.0;
  r.goal_noise_pos_bound = 0.0;
  r.goal_noise_ang_bound_deg = 0.0;
  r.fg_low = r.fg_high = 5.0;
  r.stiffness_low = r.stiffness_high = base.surface_stiffness;

  Rng rng(9);
  bool seen[3] = {false, false, false};
  for (int i = 0; i < 50; ++i) {
    const SceneSample s = randomize_scene(rng, base, r);
    s.scene.validate();
    for (int k = 0; k < 3; ++k)
      if ((s.scene.insertion_axis - r.insertion_axes[static_cast<size_t>(k)]).norm() < 1e-12)
        seen[k] = true;
    // init sits standoff above the entrance along the sampled axis
    const Vec3 expect = s.scene.entrance() - s.scene.insertion_axis * r.standoff;
    CHECK((s.init.p - expect).norm() < 1e-12);
  }
  CHECK(seen[0]);
  CHECK(seen[1]);
  CHECK(seen[2]);
}
