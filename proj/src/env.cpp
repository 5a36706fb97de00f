#include "pih/env.hpp"

#include <cmath>
#include <stdexcept>

namespace pih {

namespace {

constexpr double kPosScale = 0.05;   // m
constexpr double kAngScale = 0.17;   // rad
constexpr double kVelScale = 0.1;    // m/s and rad/s
constexpr double kFgScale = 10.0;    // N
constexpr double kL12Alpha = 1e-6;   // smoothing constant of the force norm

}  // namespace

std::string to_string(DoneStatus s) {
  switch (s) {
    case DoneStatus::kRunning: return "running";
    case DoneStatus::kSuccess: return "success";
    case DoneStatus::kCollision: return "collision";
    case DoneStatus::kTimeout: return "timeout";
  }
  return "unknown";
}

void EpisodeConfig::validate() const {
  if (max_steps <= 0) throw std::invalid_argument("episode: max_steps must be > 0");
  if (!(f_max > 0.0)) throw std::invalid_argument("episode: f_max must be > 0");
  if (inner_steps_per_policy_step <= 0)
    throw std::invalid_argument("episode: inner steps must be > 0");
  if (!(filter_cutoff_hz > 0.0)) throw std::invalid_argument("episode: cutoff must be > 0");
  if (d0 <= 0.0) throw std::invalid_argument("episode: d0 must be > 0");
}

void EnvConfig::validate() const {
  base_scene.validate();
  ranges.validate();
  episode.validate();
  sim.validate();
  controller_ranges.validate();
  if (!(episode.f_max > ranges.fg_high))
    throw std::invalid_argument("env: f_max must exceed the largest insertion force");
  if (window_len <= 0) throw std::invalid_argument("env: window_len must be > 0");
}

double reward_kappa(DoneStatus status, int t, int max_steps) {
  switch (status) {
    case DoneStatus::kSuccess:
      return 100.0 + (1.0 - static_cast<double>(t) / static_cast<double>(max_steps)) * 100.0;
    case DoneStatus::kCollision:
      return -50.0;
    default:
      return 0.0;
  }
}

double compute_reward(const Vec6& F_ext_agg, double F_g, double F_max, DoneStatus status,
                      int t, int max_steps, double w1, double w2) {
  if (!(F_max > 0.0)) throw std::invalid_argument("compute_reward: F_max must be > 0");
  if (t < 0 || t > max_steps) throw std::invalid_argument("compute_reward: t outside [0, T]");

  Vec6 target = Vec6::Zero();
  target[2] = -F_g;  // press along the insertion axis (-z of the task frame)
  const double s = ((F_ext_agg - target) / F_max).norm();
  const double l12 = 0.5 * s * s + std::sqrt(kL12Alpha + s * s);
  const double lo = std::sqrt(kL12Alpha);                    // value at zero error
  const double hi = 0.5 + std::sqrt(kL12Alpha + 1.0);        // value at unit-norm error
  const double lm = std::clamp(1.0 - (l12 - lo) / (hi - lo), 0.0, 1.0);
  return w1 * lm + w2 * reward_kappa(status, t, max_steps);
}

Observation build_observation(const EnvConfig& cfg, const RobotState& state,
                              const Pose& noisy_goal, double fg,
                              const Eigen::VectorXd& a_prev, const Eigen::MatrixXd& window) {
  Observation obs;
  obs.proprio.resize(cfg.proprio_dim());
  const PoseError xe = pose_error(state.x, noisy_goal);
  int k = 0;
  for (int i = 0; i < 3; ++i) obs.proprio[k++] = xe.dp[i] / kPosScale;
  for (int i = 0; i < 3; ++i) obs.proprio[k++] = xe.dtheta[i] / kAngScale;
  for (int i = 0; i < 3; ++i) obs.proprio[k++] = state.twist.v[i] / kVelScale;
  for (int i = 0; i < 3; ++i) obs.proprio[k++] = state.twist.w[i] / kVelScale;
  if (cfg.include_fg) obs.proprio[k++] = fg / kFgScale;
  if (cfg.include_prev_action)
    for (int i = 0; i < 24; ++i) obs.proprio[k++] = a_prev[i];
  obs.window = window / cfg.episode.f_max;
  return obs;
}

PegHoleEnv::PegHoleEnv(EnvConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.validate();
  window_ = Eigen::MatrixXd::Zero(cfg_.window_len, 6);
  a_prev_ = Eigen::VectorXd::Zero(24);
  scene_ = cfg_.base_scene;
  noisy_goal_ = scene_.hole_pose;
  state_ = sim_reset_default();
}

RobotState PegHoleEnv::sim_reset_default() {
  const Vec3 init = scene_.entrance() - scene_.insertion_axis * cfg_.ranges.standoff;
  return pih::reset(scene_, Pose(init, scene_.hole_pose.q));
}

Observation PegHoleEnv::reset(Rng& rng) {
  return reset_explicit(randomize_scene(rng, cfg_.base_scene, cfg_.ranges));
}

Observation PegHoleEnv::reset_explicit(const SceneSample& sample) {
  scene_ = sample.scene;
  noisy_goal_ = sample.noisy_goal;
  fg_ = sample.fg;
  state_ = pih::reset(scene_, sample.init);
  ctl_state_ = ControllerState{};
  ctl_state_.windup_bound = cfg_.windup_bound;
  filt_wrench_.setZero();
  window_.setZero();
  a_prev_.setZero();
  t_ = 0;
  status_ = DoneStatus::kRunning;
  episode_peak_force_ = 0.0;
  return observation();
}

Observation PegHoleEnv::observation() const {
  return build_observation(cfg_, state_, noisy_goal_, fg_, a_prev_, window_);
}

void PegHoleEnv::perturb_true_goal(const Vec3& offset) {
  scene_.hole_pose = Pose(scene_.hole_pose.p + offset, scene_.hole_pose.q);
}

StepResult PegHoleEnv::step(const Eigen::VectorXd& action24) {
  if (status_ != DoneStatus::kRunning)
    throw std::logic_error("env: step called on a finished episode");
  if (action24.size() != 24 || !action24.allFinite())
    throw std::invalid_argument("env: action must be a finite 24-vector");
  for (int i = 0; i < 24; ++i)
    if (action24[i] < -1.0 - 1e-6 || action24[i] > 1.0 + 1e-6)
      throw std::invalid_argument("env: action component outside [-1, 1]");

  const Eigen::VectorXd a = action24.cwiseMax(-1.0).cwiseMin(1.0);
  Vec18 a_p;
  for (int i = 0; i < 18; ++i) a_p[i] = a[6 + i];
  const ControllerParams params = map_action_to_params(a_p, cfg_.controller_ranges);

  Vec6 a_x;
  for (int i = 0; i < 3; ++i) a_x[i] = a[i] * cfg_.ax_translation;
  for (int i = 0; i < 3; ++i) a_x[3 + i] = a[3 + i] * cfg_.ax_rotation;

  // Desired sensor wrench: press with fg along the estimated insertion axis,
  // zero force elsewhere. Sensor convention is the wrench the peg applies.
  const Vec3 axis_est = -noisy_goal_.q.toRotationMatrix().col(2);
  Vec6 fg_target = Vec6::Zero();
  fg_target.head<3>() = fg_ * axis_est;

  const double dt = cfg_.sim.inner_dt;
  const double rc = 1.0 / (2.0 * M_PI * cfg_.episode.filter_cutoff_hz);
  const double alpha_f = dt / (dt + rc);

  Vec6 agg = Vec6::Zero();
  int agg_count = 0;
  double step_peak = 0.0;

  for (int i = 0; i < cfg_.episode.inner_steps_per_policy_step; ++i) {
    const PoseError xe = pose_error(state_.x, noisy_goal_);
    const Vec6 x_e = xe.vec();
    const Vec6 xdot_e = -state_.twist.vec();
    const Vec6 F_e = fg_target - filt_wrench_;

    ControlResult cr = parallel_control(x_e, xdot_e, F_e, params, a_x, ctl_state_, dt);
    ctl_state_ = cr.state;
    const Pose x_c = apply_command(state_.x, cr.delta, cfg_.limits);
    state_ = step_inner(state_, x_c, scene_, cfg_.sim);

    const Vec6 raw_sensor = -state_.F_ext.vec();  // applied-by-peg convention
    filt_wrench_ += alpha_f * (raw_sensor - filt_wrench_);
    agg += filt_wrench_;
    ++agg_count;

    const double peak = state_.F_ext.vec().cwiseAbs().maxCoeff();
    step_peak = std::max(step_peak, peak);
    if (peak > cfg_.episode.f_max) {
      status_ = DoneStatus::kCollision;
      break;
    }
  }

  ++t_;
  if (status_ == DoneStatus::kRunning) {
    if (check_success(state_, scene_.hole_pose)) {
      status_ = DoneStatus::kSuccess;
    } else if (t_ >= cfg_.episode.max_steps) {
      status_ = DoneStatus::kTimeout;
    }
  }

  agg /= static_cast<double>(agg_count);
  // The reward consumes the aggregated wrench in the estimated task frame.
  const Eigen::Matrix3d R = noisy_goal_.q.toRotationMatrix();
  Vec6 agg_frame;
  agg_frame.head<3>() = R.transpose() * agg.head<3>();
  agg_frame.tail<3>() = R.transpose() * agg.tail<3>();

  StepResult res;
  res.status = status_;
  res.reward = compute_reward(agg_frame, fg_, cfg_.episode.f_max, status_, t_,
                              cfg_.episode.max_steps, cfg_.episode.w1, cfg_.episode.w2);
  const double dist = (state_.x.p - scene_.hole_pose.p).norm();
  if (cfg_.episode.w_d != 0.0)
    res.reward += cfg_.episode.w_d * (1.0 - dist / cfg_.episode.d0);

  // Window rows run oldest to newest; one aggregated sample per policy step.
  for (int r = 0; r + 1 < cfg_.window_len; ++r) window_.row(r) = window_.row(r + 1);
  window_.row(cfg_.window_len - 1) = agg.transpose();

  a_prev_ = a;
  episode_peak_force_ = std::max(episode_peak_force_, step_peak);

  res.obs = observation();
  res.info.distance_to_goal = dist;
  res.info.step_peak_force = step_peak;
  res.info.mean_sensor_wrench = agg;
  res.info.force_term =
      res.reward - cfg_.episode.w2 * reward_kappa(status_, t_, cfg_.episode.max_steps) -
      (cfg_.episode.w_d != 0.0 ? cfg_.episode.w_d * (1.0 - dist / cfg_.episode.d0) : 0.0);
  return res;
}

}  // namespace pih
