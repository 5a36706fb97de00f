#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pih/env.hpp"
#include "pih/nn.hpp"
#include "pih/sac.hpp"

namespace pih {

struct TrainConfig {
  int64_t total_steps = 300000;
  int64_t eval_every = 2500;
  int eval_episodes = 20;
  uint64_t eval_seed = 9001;
  double stop_at_success_rate = 0.0;  // 0 disables early stop
  double success_threshold = 0.8;     // reporting threshold for curves
  int64_t warmup_steps = 1000;
  int update_every = 1;
  int updates_per_step = 1;
  int64_t buffer_capacity = 1000000;
  double per_alpha = 0.6;
  double per_beta0 = 0.4;
  bool save_replay = true;
  int workers = 1;

  void validate() const;
};

/// Full experiment description. Loading is layered: file values, then
/// PIH_-prefixed environment overrides, then command-line overrides.
struct ExperimentConfig {
  PegHoleScene scene;
  std::string scene_source;  // path the scene came from, if any
  RandomizationRanges ranges;
  EpisodeConfig episode;
  SimConfig sim;
  ParamRanges controller;
  CommandLimits limits;
  double windup_bound = 10.0;
  double ax_translation = 0.005;
  double ax_rotation_deg = 1.0;
  nn::NnConfig net;
  SacConfig sac;
  TrainConfig train;
  std::vector<uint64_t> seeds{1, 2, 3};
  std::string out_dir = "runs/exp";
  std::string variant = "full";  // full | mlp-policy | no-prev-action | no-fg-input

  void validate() const;
  EnvConfig make_env_config() const;
  nn::NnConfig make_net_config() const;
};

/// Parses a config from JSON text (missing keys keep defaults).
ExperimentConfig config_from_json_text(const std::string& text);
std::string config_to_json_text(const ExperimentConfig& cfg);

/// Layered load: file (optional) < PIH_SECTION__KEY environment variables
/// < "section.key=value" override strings.
ExperimentConfig load_experiment_config(const std::string& path,
                                        const std::vector<std::string>& overrides = {});

void save_experiment_config(const ExperimentConfig& cfg, const std::string& path);

}  // namespace pih
