#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pih/config.hpp"
#include "pih/env.hpp"
#include "pih/metrics.hpp"
#include "pih/replay.hpp"
#include "pih/sac.hpp"

namespace pih {

using PolicyFunc = std::function<Eigen::VectorXd(const Observation&)>;

/// Constant hand-designed action: hold position laterally, force-control the
/// insertion axis. Inserts straight down on an open, axis-aligned hole.
Eigen::VectorXd scripted_insert_action();

/// Deterministic (squashed-mean) policy backed by a trained agent.
PolicyFunc make_agent_policy(SacAgent<float>& agent);

struct EvalOptions {
  int episodes = 20;
  uint64_t seed = 9001;
  bool override_goal_estimate = false;  // replace random noise with a fixed offset
  Vec3 goal_offset_pos = Vec3::Zero();  // hole frame, m
  Vec3 goal_offset_rot = Vec3::Zero();  // hole frame axis-angle, rad
  std::string trace_dir;                // when set, per-episode trace CSVs
};

struct EvalReport {
  double success_rate = 0.0;
  double mean_steps = 0.0;
  double mean_return = 0.0;
  double mean_wall_seconds = 0.0;  // mean_steps at the nominal 20 Hz
  int episodes = 0;
};

EvalReport evaluate_policy(const PolicyFunc& policy, const EnvConfig& env_cfg,
                           const EvalOptions& opts);

struct TrainOutcome {
  int64_t steps_done = 0;
  int64_t episodes = 0;
  int64_t first_step_at_threshold = -1;  // eval success >= train.success_threshold
  double final_success_rate = 0.0;
  double aulc_return = 0.0;  // trapezoid over eval mean returns
  bool halted_non_finite = false;
  std::string last_checkpoint;  // path prefix (without extension)
};

/// Single-seed training loop: rollouts, prioritized replay, SAC updates,
/// periodic deterministic evaluation, episode-aligned checkpoints. With one
/// worker the run is bit-reproducible and exactly resumable.
class Trainer {
 public:
  Trainer(ExperimentConfig cfg, uint64_t seed, std::string run_dir);

  /// Loads network weights (and optimizer state) from another run's .nn file.
  void warm_start(const std::string& nn_path);

  /// Continues from an episode-aligned checkpoint prefix (no extension).
  void resume(const std::string& checkpoint_prefix);

  TrainOutcome run();

  SacAgent<float>& agent() { return agent_; }
  const std::string& run_dir() const { return run_dir_; }

 private:
  void write_checkpoint(int64_t step);
  EvalReport do_eval(int64_t step);
  Eigen::VectorXd select_action(const Observation& obs, int64_t step);
  SacBatch<float> make_batch(const SampleResult& sample) const;

  ExperimentConfig cfg_;
  uint64_t seed_;
  std::string run_dir_;
  EnvConfig env_cfg_;
  nn::NnConfig net_cfg_;
  SacAgent<float> agent_;
  ReplayBuffer buffer_;
  Rng env_rng_, agent_rng_;
  int64_t start_step_ = 0;
  int64_t episode_count_ = 0;
  bool resumed_ = false;
};

struct SeedOutcome {
  uint64_t seed = 0;
  std::string run_dir;
  TrainOutcome outcome;
};

/// Trains every configured seed; run directories live under cfg.out_dir.
std::vector<SeedOutcome> cmd_train(const ExperimentConfig& cfg);

struct EvalSummary {
  struct Entry {
    std::string label;
    EvalReport report;
  };
  std::vector<Entry> entries;
};

/// Evaluates a checkpoint (or the scripted stub) on the configured scene,
/// optionally sweeping fixed goal-estimate offsets. Writes report.json and
/// per-episode traces under out_dir.
EvalSummary cmd_eval(const ExperimentConfig& cfg, const std::string& checkpoint_nn,
                     int n_episodes, bool scripted, const std::vector<double>& offsets_mm,
                     const std::vector<double>& offsets_deg, const std::string& out_dir);

struct TransferReport {
  std::string source_run, finetune_run, scratch_run;
  int64_t pretrain_steps = 0;
  int64_t finetune_steps_to_threshold = -1;
  int64_t scratch_steps_to_threshold = -1;
  double threshold = 0.8;
};

/// Pretrains on the randomized source scene, then fine-tunes on the target
/// versus training from scratch on the target with the same budget.
TransferReport cmd_transfer(const ExperimentConfig& source, const ExperimentConfig& target);

struct AblateReport {
  std::string variant;
  std::string full_run, variant_run;
  int64_t full_steps_to_threshold = -1;
  int64_t variant_steps_to_threshold = -1;
  double full_aulc = 0.0;
  double variant_aulc = 0.0;
};

/// Trains the requested input/architecture variant against the full policy
/// under the same seed and budget. The full baseline is reused when its run
/// directory already holds a finished run for this config.
AblateReport cmd_ablate(const ExperimentConfig& cfg, const std::string& variant);

/// First eval step with success rate >= threshold, -1 when never reached.
int64_t first_step_at_threshold(const std::string& eval_csv, double threshold);
/// Trapezoidal area under the eval mean-return curve.
double area_under_curve(const std::string& eval_csv);

}  // namespace pih
