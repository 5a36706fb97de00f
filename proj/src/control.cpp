#include "pih/control.hpp"

#include <cmath>
#include <stdexcept>

namespace pih {

namespace {

Vec6 vec6(double trans, double rot) {
  Vec6 v;
  v << trans, trans, trans, rot, rot, rot;
  return v;
}

}  // namespace

ParamRanges::ParamRanges() {
  kp_x_base = vec6(20.0, 20.0);
  kp_x_range = vec6(15.0, 15.0);
  kp_f_base = vec6(0.02, 0.2);
  kp_f_range = vec6(0.018, 0.18);
  s_base = vec6(0.5, 0.5);
  s_range = vec6(0.5, 0.5);
}

void ParamRanges::validate() const {
  for (int i = 0; i < 6; ++i) {
    if (kp_x_range[i] < 0.0 || kp_f_range[i] < 0.0 || s_range[i] < 0.0)
      throw std::invalid_argument("ranges: P_range must be >= 0");
    if (kp_x_base[i] - kp_x_range[i] < 0.0 || kp_f_base[i] - kp_f_range[i] < 0.0)
      throw std::invalid_argument("ranges: gain spans must stay non-negative");
  }
}

ControllerParams map_action_to_params(const Vec18& a_p, const ParamRanges& ranges) {
  constexpr double kSlack = 1e-6;
  for (int i = 0; i < 18; ++i) {
    if (!std::isfinite(a_p[i]) || a_p[i] < -1.0 - kSlack || a_p[i] > 1.0 + kSlack)
      throw std::invalid_argument("map_action_to_params: component outside [-1, 1]");
  }
  ControllerParams p;
  for (int i = 0; i < 6; ++i) {
    const double a_kpx = std::clamp(a_p[i], -1.0, 1.0);
    const double a_kpf = std::clamp(a_p[6 + i], -1.0, 1.0);
    const double a_s = std::clamp(a_p[12 + i], -1.0, 1.0);
    p.kp_x[i] = ranges.kp_x_base[i] + a_kpx * ranges.kp_x_range[i];
    p.kp_f[i] = ranges.kp_f_base[i] + a_kpf * ranges.kp_f_range[i];
    p.kd_x[i] = 2.0 * std::sqrt(p.kp_x[i]);
    p.ki_f[i] = 0.01 * p.kp_f[i];
    p.s[i] = std::clamp(ranges.s_base[i] + a_s * ranges.s_range[i], 0.0, 1.0);
  }
  return p;
}

ControlResult parallel_control(const Vec6& x_e, const Vec6& xdot_e, const Vec6& F_e,
                               const ControllerParams& params, const Vec6& a_x,
                               const ControllerState& state, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("parallel_control: dt must be > 0");
  if (!x_e.allFinite() || !xdot_e.allFinite() || !F_e.allFinite() || !a_x.allFinite() ||
      !state.force_integral.allFinite())
    throw std::invalid_argument("parallel_control: non-finite input");

  const Vec6 pos_branch =
      params.s.cwiseProduct(params.kp_x.cwiseProduct(x_e) + params.kd_x.cwiseProduct(xdot_e));
  const Vec6 force_branch = (Vec6::Ones() - params.s)
                                .cwiseProduct(params.kp_f.cwiseProduct(F_e) +
                                              params.ki_f.cwiseProduct(state.force_integral));

  ControlResult r;
  r.delta = residual_command(pos_branch, force_branch, a_x);
  r.state = state;
  r.state.force_integral =
      (state.force_integral + F_e * dt)
          .cwiseMax(-state.windup_bound)
          .cwiseMin(state.windup_bound);
  r.state.last_pose_error = x_e;
  return r;
}

Vec6 residual_command(const Vec6& x_ref_pd, const Vec6& x_f, const Vec6& a_x) {
  if (!x_ref_pd.allFinite() || !x_f.allFinite() || !a_x.allFinite())
    throw std::invalid_argument("residual_command: non-finite input");
  return x_ref_pd + x_f + a_x;
}

Pose apply_command(const Pose& x, const Vec6& delta, const CommandLimits& limits) {
  Vec3 dp = delta.head<3>().cwiseMax(-limits.max_translation).cwiseMin(limits.max_translation);
  Vec3 dr = delta.tail<3>().cwiseMax(-limits.max_rotation).cwiseMin(limits.max_rotation);
  return Pose(x.p + dp, quat_exp(dr) * x.q);
}

}  // namespace pih
