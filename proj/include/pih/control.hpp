#pragma once

#include "pih/geom.hpp"

namespace pih {

using Vec18 = Eigen::Matrix<double, 18, 1>;

/// Parallel-controller gains. Only kp_x, kp_f and s are free; kd_x is the
/// critically damped derivative gain 2*sqrt(kp_x) and ki_f is 1% of kp_f.
struct ControllerParams {
  Vec6 kp_x = Vec6::Zero();
  Vec6 kd_x = Vec6::Zero();
  Vec6 kp_f = Vec6::Zero();
  Vec6 ki_f = Vec6::Zero();
  Vec6 s = Vec6::Zero();  // selection matrix diagonal, in [0, 1]
};

/// Per-parameter action ranges: values live in [base - range, base + range].
struct ParamRanges {
  Vec6 kp_x_base;
  Vec6 kp_x_range;
  Vec6 kp_f_base;
  Vec6 kp_f_range;
  Vec6 s_base;
  Vec6 s_range;

  ParamRanges();
  void validate() const;
};

/// Mutable controller memory: the force-error integral (anti-windup clamped)
/// and the previous pose error.
struct ControllerState {
  Vec6 force_integral = Vec6::Zero();  // N*s / N*m*s
  Vec6 last_pose_error = Vec6::Zero();
  double windup_bound = 10.0;  // per-axis |integral| limit
};

struct CommandLimits {
  double max_translation = 0.005;              // m per step
  double max_rotation = 1.0 * M_PI / 180.0;    // rad per step
};

/// Affine map from the 18 policy parameter actions in [-1, 1], laid out as
/// [kp_x, kp_f, s], onto controller parameters. Derived gains follow.
ControllerParams map_action_to_params(const Vec18& a_p, const ParamRanges& ranges);

struct ControlResult {
  Vec6 delta = Vec6::Zero();  // task-space displacement command
  ControllerState state;
};

/// Control law: s (x) (kp_x*x_e + kd_x*xdot_e) + a_x
///            + (1-s) (x) (kp_f*F_e + ki_f * integral(F_e dt)).
/// The integral term uses the accumulator as passed in; the returned state
/// carries the updated, clamped accumulator.
ControlResult parallel_control(const Vec6& x_e, const Vec6& xdot_e, const Vec6& F_e,
                               const ControllerParams& params, const Vec6& a_x,
                               const ControllerState& state, double dt);

/// Reference + force response + policy residual, summed component-wise.
Vec6 residual_command(const Vec6& x_ref_pd, const Vec6& x_f, const Vec6& a_x);

/// Applies a 6-dim task-space displacement to a pose. Translation components
/// and the axis-angle rotation components are clamped per step, never
/// rejected.
Pose apply_command(const Pose& x, const Vec6& delta, const CommandLimits& limits);

}  // namespace pih
