#include "pih/geom.hpp"

#include <cmath>
#include <stdexcept>

namespace pih {

bool finite(const Quat& q) {
  return std::isfinite(q.w()) && std::isfinite(q.x()) && std::isfinite(q.y()) &&
         std::isfinite(q.z());
}

bool finite(const Vec3& v) { return v.allFinite(); }

Quat canonical_sign(const Quat& q) {
  const double c[4] = {q.w(), q.x(), q.y(), q.z()};
  for (double v : c) {
    if (v > 0.0) return q;
    if (v < 0.0) return Quat(-q.w(), -q.x(), -q.y(), -q.z());
  }
  return q;  // all zero; caller validates
}

Quat quat_exp(const Vec3& rotvec) {
  if (!finite(rotvec)) throw std::invalid_argument("quat_exp: non-finite rotation vector");
  const double angle = rotvec.norm();
  if (angle < 1e-12) {
    Quat q(1.0, 0.5 * rotvec.x(), 0.5 * rotvec.y(), 0.5 * rotvec.z());
    q.normalize();
    return canonical_sign(q);
  }
  const Vec3 axis = rotvec / angle;
  const double h = 0.5 * angle;
  const double s = std::sin(h);
  Quat q(std::cos(h), s * axis.x(), s * axis.y(), s * axis.z());
  q.normalize();
  return canonical_sign(q);
}

Vec3 quat_log(const Quat& q_in) {
  const Quat q = canonical_sign(q_in.normalized());
  const Vec3 v(q.x(), q.y(), q.z());
  const double vn = v.norm();
  if (vn < 1e-12) return 2.0 * v;  // small-angle limit
  const double angle = 2.0 * std::atan2(vn, q.w());  // in [0, pi] since w >= 0
  return (angle / vn) * v;
}

Quat quat_multiply(const Quat& a, const Quat& b) {
  if (!finite(a) || !finite(b)) throw std::invalid_argument("quat_multiply: non-finite input");
  if (std::abs(a.norm() - 1.0) > 1e-6 || std::abs(b.norm() - 1.0) > 1e-6)
    throw std::invalid_argument("quat_multiply: inputs must be unit quaternions");
  Quat q = a * b;
  q.normalize();
  return canonical_sign(q);
}

Pose::Pose(const Vec3& position, const Quat& orientation) : p(position) {
  if (!finite(position) || !finite(orientation))
    throw std::invalid_argument("Pose: non-finite input");
  const double n = orientation.norm();
  if (n < 1e-9) throw std::invalid_argument("Pose: zero quaternion");
  q = canonical_sign(Quat(orientation.coeffs() / n));
}

bool Pose::approx_equal(const Pose& other, double tol) const {
  return (p - other.p).norm() <= tol &&
         (q.coeffs() - other.q.coeffs()).norm() <= tol;
}

Vec6 Twist::vec() const {
  Vec6 t;
  t << v, w;
  return t;
}

Twist Twist::from_vec(const Vec6& t) { return Twist{t.head<3>(), t.tail<3>()}; }

Vec6 Wrench::vec() const {
  Vec6 w;
  w << F, M;
  return w;
}

Wrench Wrench::from_vec(const Vec6& w) { return Wrench{w.head<3>(), w.tail<3>()}; }

Vec6 PoseError::vec() const {
  Vec6 e;
  e << dp, dtheta;
  return e;
}

PoseError pose_error(const Pose& current, const Pose& target) {
  PoseError e;
  e.dp = target.p - current.p;
  e.dtheta = quat_log(target.q * current.q.conjugate());
  return e;
}

Pose integrate_pose(const Pose& x, const Twist& t, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("integrate_pose: dt must be > 0");
  if (!t.is_finite()) throw std::invalid_argument("integrate_pose: non-finite twist");
  return Pose(x.p + t.v * dt, quat_exp(t.w * dt) * x.q);
}

}  // namespace pih
