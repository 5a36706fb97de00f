#pragma once

#include <Eigen/Dense>
#include <Eigen/Geometry>

namespace pih {

using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Quat = Eigen::Quaterniond;

/// Flips the sign of q so the scalar part is non-negative. Ties (w == 0)
/// fall back to the first nonzero vector component, so equal rotations map
/// to bit-identical quaternions.
Quat canonical_sign(const Quat& q);

bool finite(const Quat& q);
bool finite(const Vec3& v);

/// exp map: axis-angle 3-vector -> unit quaternion.
Quat quat_exp(const Vec3& rotvec);

/// log map: unit quaternion -> shortest-arc axis-angle, norm <= pi.
Vec3 quat_log(const Quat& q);

/// Composition a*b, inputs must be unit within 1e-6. Result is normalized
/// and sign-canonicalized.
Quat quat_multiply(const Quat& a, const Quat& b);

/// Rigid-body pose: position plus unit quaternion. The constructor
/// normalizes and canonicalizes, so a Pose is always a valid pose.
struct Pose {
  Vec3 p{Vec3::Zero()};
  Quat q{Quat::Identity()};

  Pose() = default;
  Pose(const Vec3& position, const Quat& orientation);

  bool approx_equal(const Pose& other, double tol = 1e-9) const;
};

struct Twist {
  Vec3 v{Vec3::Zero()};  // m/s
  Vec3 w{Vec3::Zero()};  // rad/s

  Vec6 vec() const;
  static Twist from_vec(const Vec6& t);
  bool is_finite() const { return finite(v) && finite(w); }
};

struct Wrench {
  Vec3 F{Vec3::Zero()};  // N
  Vec3 M{Vec3::Zero()};  // N*m

  Vec6 vec() const;
  static Wrench from_vec(const Vec6& w);
  bool is_finite() const { return finite(F) && finite(M); }
};

/// Translation error plus world-frame axis-angle orientation error.
struct PoseError {
  Vec3 dp{Vec3::Zero()};
  Vec3 dtheta{Vec3::Zero()};  // |dtheta| <= pi

  Vec6 vec() const;
};

/// dp = target.p - current.p; dtheta = log(target.q * current.q^-1).
PoseError pose_error(const Pose& current, const Pose& target);

/// Euler step: p += v*dt, q <- exp(w*dt) * q. dt must be positive.
Pose integrate_pose(const Pose& x, const Twist& t, double dt);

}  // namespace pih
