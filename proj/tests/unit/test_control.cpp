#include <doctest.h>

#include "pih/control.hpp"
#include "pih/rng.hpp"

using namespace pih;

namespace {

Vec18 zero18() { return Vec18::Zero(); }

Vec6 vec6(double a, double b, double c, double d, double e, double f) {
  Vec6 v;
  v << a, b, c, d, e, f;
  return v;
}

}  // namespace

TEST_CASE("map_action_to_params: midpoint, extremes and derived gains") {
  ParamRanges r;

  SUBCASE("zero action lands on the base values") {
    const ControllerParams p = map_action_to_params(zero18(), r);
    for (int i = 0; i < 6; ++i) {
      CHECK(p.kp_x[i] == r.kp_x_base[i]);
      CHECK(p.kp_f[i] == r.kp_f_base[i]);
      CHECK(p.s[i] == r.s_base[i]);
      CHECK(p.kd_x[i] == 2.0 * std::sqrt(r.kp_x_base[i]));
      CHECK(p.ki_f[i] == 0.01 * r.kp_f_base[i]);
    }
  }
  SUBCASE("+1 everywhere reaches base + range") {
    const ControllerParams p = map_action_to_params(Vec18::Ones(), r);
    for (int i = 0; i < 6; ++i) {
      CHECK(p.kp_x[i] == r.kp_x_base[i] + r.kp_x_range[i]);
      CHECK(p.kp_f[i] == r.kp_f_base[i] + r.kp_f_range[i]);
      CHECK(p.s[i] == 1.0);
    }
  }
  SUBCASE("-1 everywhere reaches base - range") {
    const ControllerParams p = map_action_to_params(-Vec18::Ones(), r);
    for (int i = 0; i < 6; ++i) {
      CHECK(p.kp_x[i] == r.kp_x_base[i] - r.kp_x_range[i]);
      CHECK(p.s[i] == 0.0);
    }
  }
  SUBCASE("kp_x = 100 derives kd_x = 20") {
    ParamRanges wide;
    wide.kp_x_base = Vec6::Constant(100.0);
    wide.kp_x_range = Vec6::Zero();
    const ControllerParams p = map_action_to_params(zero18(), wide);
    CHECK(p.kd_x[0] == doctest::Approx(20.0).epsilon(1e-15));
  }
  SUBCASE("components outside [-1,1] are rejected") {
    Vec18 a = zero18();
    a[3] = 1.5;
    CHECK_THROWS_AS(map_action_to_params(a, r), std::invalid_argument);
    a[3] = std::nan("");
    CHECK_THROWS_AS(map_action_to_params(a, r), std::invalid_argument);
  }
  SUBCASE("slightly-out-of-range squashing noise is clamped") {
    Vec18 a = Vec18::Ones() * (1.0 + 5e-7);
    const ControllerParams p = map_action_to_params(a, r);
    CHECK(p.s[0] == 1.0);
  }
}

TEST_CASE("gain identities hold to machine precision over random actions") {
  ParamRanges r;
  Rng rng(8);
  for (int k = 0; k < 200; ++k) {
    Vec18 a;
    for (int i = 0; i < 18; ++i) a[i] = rng.uniform(-1.0, 1.0);
    const ControllerParams p = map_action_to_params(a, r);
    for (int i = 0; i < 6; ++i) {
      CHECK(p.kd_x[i] == 2.0 * std::sqrt(p.kp_x[i]));
      CHECK(p.ki_f[i] == 0.01 * p.kp_f[i]);
      CHECK(p.s[i] >= 0.0);
      CHECK(p.s[i] <= 1.0);
      CHECK(p.kp_x[i] >= 0.0);
      CHECK(p.kp_f[i] >= 0.0);
    }
  }
}

TEST_CASE("parallel_control selection extremes") {
  ParamRanges r;
  ControllerState st;
  const double dt = 0.002;
  const Vec6 x_e = vec6(0.01, -0.02, 0.03, 0.001, 0.0, -0.004);
  const Vec6 xd_e = vec6(-0.1, 0.2, 0.0, 0.0, 0.05, 0.0);
  const Vec6 F_e = vec6(1.0, 0.0, -2.0, 0.0, 0.1, 0.0);
  const Vec6 a_x = vec6(0.001, 0.0, -0.001, 0.0, 0.0, 0.0005);

  SUBCASE("S = 1 gates the force branch off entirely") {
    ControllerParams p = map_action_to_params(zero18(), r);
    p.s = Vec6::Ones();
    const ControlResult res = parallel_control(x_e, xd_e, F_e, p, a_x, st, dt);
    const Vec6 expect =
        p.kp_x.cwiseProduct(x_e) + p.kd_x.cwiseProduct(xd_e) + a_x;
    CHECK((res.delta - expect).norm() == 0.0);
  }
  SUBCASE("S = 0 gates the position branch off; unit force maps through kp_f") {
    ControllerParams p;
    p.kp_f = Vec6::Constant(0.01);
    p.ki_f = 0.01 * p.kp_f;
    p.s = Vec6::Zero();
    const Vec6 fe = vec6(1, 0, 0, 0, 0, 0);
    const ControlResult res = parallel_control(x_e, xd_e, fe, p, a_x, st, dt);
    const Vec6 expect = a_x + vec6(0.01, 0, 0, 0, 0, 0);
    CHECK((res.delta - expect).norm() < 1e-18);
  }
  SUBCASE("S = 0.5 is the exact mean of the two extremes plus a_x") {
    ControllerParams p = map_action_to_params(zero18(), r);
    p.s = Vec6::Constant(0.5);
    const ControlResult res = parallel_control(x_e, xd_e, F_e, p, a_x, st, dt);
    // Independent recomputation, scalar by scalar.
    for (int i = 0; i < 6; ++i) {
      const double pos = p.kp_x[i] * x_e[i] + p.kd_x[i] * xd_e[i];
      const double frc = p.kp_f[i] * F_e[i] + p.ki_f[i] * 0.0;
      const double expect = 0.5 * pos + 0.5 * frc + a_x[i];
      CHECK(res.delta[i] == doctest::Approx(expect).epsilon(1e-15));
    }
  }
}

TEST_CASE("parallel_control output is affine in S") {
  ParamRanges r;
  Rng rng(15);
  ControllerState st;
  st.force_integral = vec6(0.5, -0.2, 0.1, 0.0, 0.3, -0.1);
  const double dt = 0.002;
  for (int k = 0; k < 50; ++k) {
    Vec6 x_e, xd_e, F_e, a_x;
    for (int i = 0; i < 6; ++i) {
      x_e[i] = 0.01 * rng.gaussian();
      xd_e[i] = 0.1 * rng.gaussian();
      F_e[i] = rng.gaussian();
      a_x[i] = 0.001 * rng.gaussian();
    }
    ControllerParams p = map_action_to_params(zero18(), r);
    for (int i = 0; i < 6; ++i) p.s[i] = rng.uniform(0.0, 1.0);

    ControllerParams p1 = p, p0 = p;
    p1.s = Vec6::Ones();
    p0.s = Vec6::Zero();
    const Vec6 out_pos =
        parallel_control(x_e, xd_e, F_e, p1, Vec6::Zero(), st, dt).delta;
    const Vec6 out_frc =
        parallel_control(x_e, xd_e, F_e, p0, Vec6::Zero(), st, dt).delta;
    const Vec6 out = parallel_control(x_e, xd_e, F_e, p, a_x, st, dt).delta;
    const Vec6 expect =
        p.s.cwiseProduct(out_pos) + (Vec6::Ones() - p.s).cwiseProduct(out_frc) + a_x;
    CHECK((out - expect).norm() < 1e-12);
  }
}

TEST_CASE("parallel_control zero-error fixed point is exactly zero") {
  ParamRanges r;
  const ControllerParams p = map_action_to_params(zero18(), r);
  ControllerState st;
  const ControlResult res = parallel_control(Vec6::Zero(), Vec6::Zero(), Vec6::Zero(), p,
                                             Vec6::Zero(), st, 0.002);
  CHECK(res.delta.norm() == 0.0);
}

TEST_CASE("force integral accumulates, is clamped, and never exceeds its bound") {
  ParamRanges r;
  const ControllerParams p = map_action_to_params(zero18(), r);
  ControllerState st;
  st.windup_bound = 10.0;
  Rng rng(4);
  const double dt = 0.002;
  for (int i = 0; i < 20000; ++i) {
    Vec6 F_e;
    for (int k = 0; k < 6; ++k) F_e[k] = 40.0 * rng.gaussian() + 20.0;
    const ControlResult res =
        parallel_control(Vec6::Zero(), Vec6::Zero(), F_e, p, Vec6::Zero(), st, dt);
    st = res.state;
    CHECK(st.force_integral.cwiseAbs().maxCoeff() <= 10.0 + 1e-12);
  }
  CHECK(st.force_integral.cwiseAbs().maxCoeff() == 10.0);  // saturated by the drift
}

TEST_CASE("parallel_control uses the integral as passed in, then updates it") {
  ControllerParams p;
  p.kp_f = Vec6::Constant(0.01);
  p.ki_f = 0.01 * p.kp_f;
  p.s = Vec6::Zero();
  ControllerState st;  // zero integral
  const Vec6 F_e = vec6(2, 0, 0, 0, 0, 0);
  const ControlResult res =
      parallel_control(Vec6::Zero(), Vec6::Zero(), F_e, p, Vec6::Zero(), st, 0.5);
  CHECK(res.delta[0] == doctest::Approx(0.02).epsilon(1e-15));  // no integral term yet
  CHECK(res.state.force_integral[0] == doctest::Approx(1.0));   // 2 N * 0.5 s
  CHECK(res.state.last_pose_error.norm() == 0.0);
}

TEST_CASE("residual_command sums its three terms") {
  const Vec6 a = vec6(1, 2, 3, 4, 5, 6);
  const Vec6 b = vec6(-1, 0, 1, 0, -1, 0);
  const Vec6 c = vec6(0.5, 0.5, 0.5, 0.5, 0.5, 0.5);
  CHECK((residual_command(a, b, Vec6::Zero()) - (a + b)).norm() == 0.0);
  CHECK((residual_command(Vec6::Zero(), Vec6::Zero(), c) - c).norm() == 0.0);
  CHECK((residual_command(a, b, c) - (a + b + c)).norm() == 0.0);
}

TEST_CASE("apply_command clamps per-step motion, never rejects") {
  CommandLimits lim;
  const Pose x(Vec3(0.1, 0.2, 0.3), Quat::Identity());

  SUBCASE("zero delta leaves the pose unchanged") {
    CHECK(apply_command(x, Vec6::Zero(), lim).approx_equal(x, 0.0));
  }
  SUBCASE("1 mm translation moves 1 mm") {
    const Pose y = apply_command(x, vec6(0.001, 0, 0, 0, 0, 0), lim);
    CHECK(y.p.x() == doctest::Approx(0.101));
  }
  SUBCASE("oversized delta is clamped to the per-step limit") {
    const Pose y = apply_command(x, vec6(0.05, -0.09, 0, 0, 0, 0), lim);
    CHECK(y.p.x() == doctest::Approx(0.1 + lim.max_translation));
    CHECK(y.p.y() == doctest::Approx(0.2 - lim.max_translation));
  }
  SUBCASE("rotation increments are clamped too") {
    const Pose y = apply_command(x, vec6(0, 0, 0, 0, 0, 1.0), lim);
    const PoseError e = pose_error(x, y);
    CHECK(e.dtheta.z() == doctest::Approx(lim.max_rotation).epsilon(1e-9));
  }
}
