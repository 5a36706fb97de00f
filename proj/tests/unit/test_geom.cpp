#include <doctest.h>

#include "pih/geom.hpp"
#include "pih/rng.hpp"

using namespace pih;

namespace {

Quat random_quat(Rng& rng) {
  Quat q(rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian());
  q.normalize();
  return canonical_sign(q);
}

}  // namespace

TEST_CASE("quat_multiply identity and composition") {
  Rng rng(11);
  const Quat q = random_quat(rng);
  const Quat id = Quat::Identity();
  CHECK((quat_multiply(id, q).coeffs() - q.coeffs()).norm() < 1e-12);

  // Two quarter turns about z compose into a half turn.
  const Quat z90 = quat_exp(Vec3(0, 0, M_PI / 2));
  const Quat z180 = quat_multiply(z90, z90);
  const Quat expect = quat_exp(Vec3(0, 0, M_PI));
  CHECK((z180.coeffs() - expect.coeffs()).norm() < 1e-12);
}

TEST_CASE("quat_multiply inverse property") {
  Rng rng(12);
  for (int i = 0; i < 100; ++i) {
    const Quat q = random_quat(rng);
    const Quat r = quat_multiply(q, q.conjugate());
    CHECK((r.coeffs() - Quat::Identity().coeffs()).norm() < 1e-9);
  }
}

TEST_CASE("quat_multiply rejects bad input") {
  CHECK_THROWS_AS(quat_multiply(Quat(2, 0, 0, 0), Quat::Identity()), std::invalid_argument);
  CHECK_THROWS_AS(
      quat_multiply(Quat(std::nan(""), 0, 0, 0), Quat::Identity()), std::invalid_argument);
}

TEST_CASE("pose canonicalizes quaternion sign") {
  const Pose a(Vec3::Zero(), Quat(-1, 0, 0, 0));
  CHECK(a.q.w() == doctest::Approx(1.0));
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const Quat q = random_quat(rng);
    const Pose p1(Vec3::Zero(), q);
    const Pose p2(Vec3::Zero(), Quat(-q.w(), -q.x(), -q.y(), -q.z()));
    CHECK((p1.q.coeffs() - p2.q.coeffs()).norm() < 1e-15);
  }
}

TEST_CASE("pose_error basics") {
  const Pose x(Vec3(0.1, -0.2, 0.3), quat_exp(Vec3(0.2, -0.1, 0.4)));

  SUBCASE("identical poses give zero error") {
    const PoseError e = pose_error(x, x);
    CHECK(e.dp.norm() == doctest::Approx(0.0));
    CHECK(e.dtheta.norm() == doctest::Approx(0.0));
  }
  SUBCASE("pure translation") {
    const Pose t(x.p + Vec3(0.001, 0, 0), x.q);
    const PoseError e = pose_error(x, t);
    CHECK(e.dp.x() == doctest::Approx(0.001));
    CHECK(e.dp.y() == doctest::Approx(0.0));
    CHECK(e.dtheta.norm() == doctest::Approx(0.0));
  }
  SUBCASE("quarter turn about z") {
    const Pose c(Vec3::Zero(), Quat::Identity());
    const Pose t(Vec3::Zero(), quat_exp(Vec3(0, 0, M_PI / 2)));
    const PoseError e = pose_error(c, t);
    CHECK((e.dtheta - Vec3(0, 0, M_PI / 2)).norm() < 1e-9);
  }
}

TEST_CASE("pose_error shortest arc stays within pi") {
  Rng rng(21);
  for (int i = 0; i < 500; ++i) {
    const Pose a(Vec3::Zero(), random_quat(rng));
    const Pose b(Vec3::Zero(), random_quat(rng));
    const PoseError e = pose_error(a, b);
    CHECK(e.dtheta.norm() <= M_PI + 1e-12);
  }
}

TEST_CASE("integrate_pose") {
  const Pose x(Vec3(1, 2, 3), quat_exp(Vec3(0.3, 0, 0)));

  SUBCASE("zero twist leaves the pose unchanged") {
    const Pose y = integrate_pose(x, Twist{}, 0.002);
    CHECK(y.approx_equal(x, 1e-12));
  }
  SUBCASE("euler step on position") {
    const Pose y = integrate_pose(x, Twist{Vec3(1, 0, 0), Vec3::Zero()}, 0.002);
    CHECK(y.p.x() == doctest::Approx(1.002));
  }
  SUBCASE("half second at pi rad/s is a quarter turn") {
    const Pose x0(Vec3::Zero(), Quat::Identity());
    const Pose y = integrate_pose(x0, Twist{Vec3::Zero(), Vec3(0, 0, M_PI)}, 0.5);
    const PoseError e = pose_error(x0, y);
    CHECK((e.dtheta - Vec3(0, 0, M_PI / 2)).norm() < 1e-9);
  }
  SUBCASE("rejects invalid input") {
    CHECK_THROWS_AS(integrate_pose(x, Twist{}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(integrate_pose(x, Twist{Vec3(std::nan(""), 0, 0), Vec3::Zero()}, 0.01),
                    std::invalid_argument);
  }
}

TEST_CASE("integrate then pose_error recovers the twist direction") {
  Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    const Pose x(Vec3(rng.gaussian(), rng.gaussian(), rng.gaussian()), random_quat(rng));
    const Twist t{Vec3(rng.gaussian(), rng.gaussian(), rng.gaussian()),
                  Vec3(rng.gaussian(), rng.gaussian(), rng.gaussian())};
    const double dt = 0.002;
    const PoseError e = pose_error(x, integrate_pose(x, t, dt));
    CHECK((e.dp - t.v * dt).norm() < 1e-9);
    CHECK((e.dtheta - t.w * dt).norm() < 1e-6);
  }
}

TEST_CASE("quaternion norm stays unit through long compositions") {
  Rng rng(41);
  Quat q = Quat::Identity();
  for (int i = 0; i < 2000; ++i) q = quat_multiply(q, random_quat(rng));
  CHECK(std::abs(q.norm() - 1.0) < 1e-9);
}
