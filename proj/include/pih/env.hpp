#pragma once

#include <string>

#include "pih/control.hpp"
#include "pih/sim.hpp"

namespace pih {

enum class DoneStatus { kRunning, kSuccess, kCollision, kTimeout };

std::string to_string(DoneStatus s);

struct EpisodeConfig {
  int max_steps = 300;  // T
  double f_max = 30.0;  // N, collision limit and force scale
  double w1 = 1.0;
  double w2 = 1.0;
  double w_d = 0.0;  // optional distance shaping weight, off by default
  double d0 = 0.05;  // m, shaping normalization distance
  int inner_steps_per_policy_step = 25;  // 500 Hz / 20 Hz
  double filter_cutoff_hz = 50.0;

  void validate() const;
};

/// Policy inputs, already normalized by the fixed scale constants
/// (positions /0.05 m, angles /0.17 rad, velocities /0.1, forces /F_max,
/// F_g /10 N). The window rows run oldest to newest.
struct Observation {
  Eigen::VectorXd proprio;
  Eigen::MatrixXd window;  // window_len x 6
};

struct StepInfo {
  double distance_to_goal = 0.0;  // m, to the true goal
  double step_peak_force = 0.0;   // N, max |raw wrench component| this step
  double force_term = 0.0;        // w1-weighted reward component
  Vec6 mean_sensor_wrench = Vec6::Zero();  // filtered, averaged over the step
};

struct StepResult {
  Observation obs;
  double reward = 0.0;
  DoneStatus status = DoneStatus::kRunning;
  StepInfo info;
};

/// kappa of the task reward: 100 + (1 - t/T)*100 on success, -50 on
/// collision, 0 otherwise.
double reward_kappa(DoneStatus status, int t, int max_steps);

/// Force-matching reward term: a smoothed L1,2 norm of the force error,
/// linearly mapped so zero error scores 1 and a unit-norm error scores 0.
/// F_ext_agg must be expressed in the task frame where the insertion
/// direction is -z; the target wrench is F_g along that axis.
double compute_reward(const Vec6& F_ext_agg, double F_g, double F_max, DoneStatus status,
                      int t, int max_steps, double w1, double w2);

struct EnvConfig {
  PegHoleScene base_scene;
  RandomizationRanges ranges;
  EpisodeConfig episode;
  SimConfig sim;
  ParamRanges controller_ranges;
  CommandLimits limits;
  double windup_bound = 10.0;
  double ax_translation = 0.005;           // m per policy step at |a_x| = 1
  double ax_rotation = 1.0 * M_PI / 180.0; // rad per policy step at |a_x| = 1
  bool include_prev_action = true;
  bool include_fg = true;
  int window_len = 12;

  int proprio_dim() const { return 12 + (include_fg ? 1 : 0) + (include_prev_action ? 24 : 0); }
  void validate() const;
};

/// Assembles the normalized observation. The pose error is taken against the
/// goal estimate, never the true goal.
Observation build_observation(const EnvConfig& cfg, const RobotState& state,
                              const Pose& noisy_goal, double fg,
                              const Eigen::VectorXd& a_prev, const Eigen::MatrixXd& window);

/// The 20 Hz task environment: routes the 24-dim policy action through the
/// parallel controller and 25 inner simulator ticks, maintains the filtered
/// F/T window and computes the task reward.
class PegHoleEnv {
 public:
  explicit PegHoleEnv(EnvConfig cfg);

  Observation reset(Rng& rng);
  /// Deterministic reset from an explicit draw; used by tests and eval sweeps.
  Observation reset_explicit(const SceneSample& sample);

  StepResult step(const Eigen::VectorXd& action24);

  Observation observation() const;
  const EnvConfig& config() const { return cfg_; }
  const PegHoleScene& scene() const { return scene_; }
  const Pose& noisy_goal() const { return noisy_goal_; }
  const RobotState& state() const { return state_; }
  double fg() const { return fg_; }
  int t() const { return t_; }
  DoneStatus status() const { return status_; }
  double episode_peak_force() const { return episode_peak_force_; }

  /// Moves the true goal (and hole) without touching the goal estimate;
  /// exercises the observation information-hiding contract.
  void perturb_true_goal(const Vec3& offset);

 private:
  RobotState sim_reset_default();

  EnvConfig cfg_;
  PegHoleScene scene_;
  Pose noisy_goal_;
  double fg_ = 0.0;
  RobotState state_;
  ControllerState ctl_state_;
  Vec6 filt_wrench_ = Vec6::Zero();  // sensor convention, world frame
  Eigen::MatrixXd window_;           // raw (unscaled) aggregated sensor wrenches
  Eigen::VectorXd a_prev_;
  int t_ = 0;
  DoneStatus status_ = DoneStatus::kRunning;
  double episode_peak_force_ = 0.0;
};

}  // namespace pih
