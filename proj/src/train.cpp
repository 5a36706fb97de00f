#include "pih/train.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

namespace pih {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

uint64_t mix_seed(uint64_t seed, uint64_t k) {
  uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (k + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void obs_to_net(const Observation& obs, nn::Mat<float>& proprio, nn::Mat<float>& window) {
  proprio.resize(obs.proprio.size(), 1);
  for (Eigen::Index i = 0; i < obs.proprio.size(); ++i)
    proprio(i, 0) = static_cast<float>(obs.proprio[i]);
  const Eigen::Index T = obs.window.rows();
  window.resize(6, T);
  for (Eigen::Index t = 0; t < T; ++t)
    for (int c = 0; c < 6; ++c) window(c, t) = static_cast<float>(obs.window(t, c));
}

int done_code(DoneStatus s) {
  switch (s) {
    case DoneStatus::kRunning: return 0;
    case DoneStatus::kSuccess: return 1;
    case DoneStatus::kCollision: return 2;
    case DoneStatus::kTimeout: return 3;
  }
  return -1;
}

std::string format_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

Eigen::VectorXd scripted_insert_action() {
  Eigen::VectorXd a = Eigen::VectorXd::Zero(24);
  // Selection matrix: position control everywhere except the insertion axis
  // (world z), which is handed to the force branch.
  a[6 + 12 + 0] = 1.0;   // s_x -> 1
  a[6 + 12 + 1] = 1.0;   // s_y -> 1
  a[6 + 12 + 2] = -1.0;  // s_z -> 0
  a[6 + 12 + 3] = 1.0;
  a[6 + 12 + 4] = 1.0;
  a[6 + 12 + 5] = 1.0;
  return a;
}

PolicyFunc make_agent_policy(SacAgent<float>& agent) {
  return [&agent](const Observation& obs) {
    nn::Mat<float> p, w;
    obs_to_net(obs, p, w);
    Rng unused(0);
    auto s = nn::policy_sample(agent.policy, p, w, unused, /*deterministic=*/true);
    Eigen::VectorXd a(24);
    for (int i = 0; i < 24; ++i) a[i] = static_cast<double>(s.action(i, 0));
    return a;
  };
}

EvalReport evaluate_policy(const PolicyFunc& policy, const EnvConfig& env_cfg,
                           const EvalOptions& opts) {
  PegHoleEnv env(env_cfg);
  EvalReport rep;
  rep.episodes = opts.episodes;
  if (!opts.trace_dir.empty()) fs::create_directories(opts.trace_dir);

  for (int ep = 0; ep < opts.episodes; ++ep) {
    Rng rng(mix_seed(opts.seed, static_cast<uint64_t>(ep)));
    SceneSample sample = randomize_scene(rng, env_cfg.base_scene, env_cfg.ranges);
    if (opts.override_goal_estimate) {
      const Eigen::Matrix3d R = sample.scene.hole_rotation();
      const Vec3 p = sample.scene.hole_pose.p + R * opts.goal_offset_pos;
      const Quat q = opts.goal_offset_rot.isZero()
                         ? sample.scene.hole_pose.q
                         : canonical_sign(quat_exp(R * opts.goal_offset_rot) *
                                          sample.scene.hole_pose.q);
      sample.noisy_goal = Pose(p, q);
    }
    Observation obs = env.reset_explicit(sample);

    CsvWriter trace;
    if (!opts.trace_dir.empty())
      trace.open(opts.trace_dir + "/trace_ep" + std::to_string(ep) + ".csv", "trace",
                 trace_header());

    double ep_return = 0.0;
    int steps = 0;
    DoneStatus status = DoneStatus::kRunning;
    while (status == DoneStatus::kRunning) {
      const Eigen::VectorXd a = policy(obs);
      const StepResult res = env.step(a);
      ep_return += res.reward;
      ++steps;
      status = res.status;
      obs = res.obs;
      if (trace.is_open()) {
        std::vector<double> row;
        row.push_back(steps);
        const Vec3 rel = env.state().x.p - env.scene().hole_pose.p;
        for (int i = 0; i < 3; ++i) row.push_back(rel[i]);
        for (int i = 0; i < 6; ++i) row.push_back(res.info.mean_sensor_wrench[i]);
        for (int i = 0; i < 24; ++i) row.push_back(a[i]);
        row.push_back(res.reward);
        row.push_back(done_code(status));
        trace.write_row(row);
      }
    }
    if (status == DoneStatus::kSuccess) rep.success_rate += 1.0;
    rep.mean_steps += steps;
    rep.mean_return += ep_return;
  }
  rep.success_rate /= opts.episodes;
  rep.mean_steps /= opts.episodes;
  rep.mean_return /= opts.episodes;
  rep.mean_wall_seconds = rep.mean_steps / 20.0;
  return rep;
}

Trainer::Trainer(ExperimentConfig cfg, uint64_t seed, std::string run_dir)
    : cfg_(std::move(cfg)),
      seed_(seed),
      run_dir_(std::move(run_dir)),
      env_cfg_(cfg_.make_env_config()),
      buffer_(cfg_.train.buffer_capacity, cfg_.train.per_alpha),
      env_rng_(mix_seed(seed, 1)),
      agent_rng_(mix_seed(seed, 2)) {
  cfg_.validate();
  net_cfg_ = cfg_.make_net_config();
  SacConfig sc = cfg_.sac;
  sc.seed = seed;
  Rng init_rng(mix_seed(seed, 0));
  agent_.init(net_cfg_, sc, init_rng);
  fs::create_directories(run_dir_);
}

void Trainer::warm_start(const std::string& nn_path) {
  agent_.restore(load_tensors(nn_path));
}

void Trainer::resume(const std::string& prefix) {
  agent_.restore(load_tensors(prefix + ".nn"));
  std::ifstream in(prefix + ".state");
  if (!in) throw std::runtime_error("resume: cannot open " + prefix + ".state");
  std::string line;
  std::getline(in, line);
  if (line != "pih-train-state v1")
    throw std::runtime_error("resume: unsupported state file version");
  std::string replay_file;
  while (std::getline(in, line)) {
    const size_t sp = line.find(' ');
    if (sp == std::string::npos) continue;
    const std::string key = line.substr(0, sp);
    const std::string value = line.substr(sp + 1);
    if (key == "step") start_step_ = std::stoll(value);
    else if (key == "episode") episode_count_ = std::stoll(value);
    else if (key == "env_rng") env_rng_.deserialize(value);
    else if (key == "agent_rng") agent_rng_.deserialize(value);
    else if (key == "replay") replay_file = value;
  }
  if (!replay_file.empty() && replay_file != "-") {
    const fs::path p = fs::path(prefix).parent_path() / replay_file;
    std::ifstream rin(p, std::ios::binary);
    if (!rin) throw std::runtime_error("resume: cannot open replay file " + p.string());
    buffer_.load(rin);
  }
  resumed_ = true;
}

void Trainer::write_checkpoint(int64_t step) {
  const std::string prefix = run_dir_ + "/ckpt_" + std::to_string(step);
  save_tensors(prefix + ".nn", agent_.checkpoint_tensors());

  std::string replay_file = "-";
  if (cfg_.train.save_replay) {
    replay_file = "replay_latest.bin";
    std::ofstream rout(run_dir_ + "/" + replay_file, std::ios::binary | std::ios::trunc);
    buffer_.save(rout);
  }

  const double beta =
      cfg_.train.per_beta0 +
      (1.0 - cfg_.train.per_beta0) *
          std::min(1.0, static_cast<double>(step) /
                            std::max<int64_t>(1, cfg_.train.total_steps));
  std::ofstream out(prefix + ".state", std::ios::trunc);
  out << "pih-train-state v1\n";
  out << "step " << step << "\n";
  out << "episode " << episode_count_ << "\n";
  out << "alpha " << format_g(agent_.alpha()) << "\n";
  out << "beta " << format_g(beta) << "\n";
  out << "env_rng " << env_rng_.serialize() << "\n";
  out << "agent_rng " << agent_rng_.serialize() << "\n";
  out << "replay " << replay_file << "\n";

  std::ofstream latest(run_dir_ + "/latest", std::ios::trunc);
  latest << "ckpt_" << step << "\n";
}

Eigen::VectorXd Trainer::select_action(const Observation& obs, int64_t step) {
  if (step <= cfg_.train.warmup_steps) {
    Eigen::VectorXd a(24);
    for (int i = 0; i < 24; ++i) a[i] = agent_rng_.uniform(-1.0, 1.0);
    return a;
  }
  nn::Mat<float> p, w;
  obs_to_net(obs, p, w);
  auto s = nn::policy_sample(agent_.policy, p, w, agent_rng_, /*deterministic=*/false);
  Eigen::VectorXd a(24);
  for (int i = 0; i < 24; ++i) a[i] = static_cast<double>(s.action(i, 0));
  return a;
}

SacBatch<float> Trainer::make_batch(const SampleResult& sample) const {
  const Eigen::Index n = static_cast<Eigen::Index>(sample.indices.size());
  const Transition& first = buffer_.at(sample.indices[0]);
  const Eigen::Index P = first.proprio.size();
  const Eigen::Index T = first.window.cols();

  SacBatch<float> b;
  b.proprio.resize(P, n);
  b.window.resize(6, T * n);
  b.action.resize(24, n);
  b.reward.resize(n);
  b.not_terminal.resize(n);
  b.is_weights.resize(n);
  b.next_proprio.resize(P, n);
  b.next_window.resize(6, T * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Transition& t = buffer_.at(sample.indices[static_cast<size_t>(i)]);
    b.proprio.col(i) = t.proprio;
    b.window.middleCols(i * T, T) = t.window;
    b.action.col(i) = t.action;
    b.reward(i) = t.reward;
    b.not_terminal(i) = t.terminal ? 0.0f : 1.0f;
    b.is_weights(i) = static_cast<float>(sample.weights[static_cast<size_t>(i)]);
    b.next_proprio.col(i) = t.next_proprio;
    b.next_window.middleCols(i * T, T) = t.next_window;
  }
  return b;
}

TrainOutcome Trainer::run() {
  TrainOutcome outcome;
  ExperimentConfig resolved = cfg_;
  resolved.seeds = {seed_};
  resolved.out_dir = run_dir_;
  save_experiment_config(resolved, run_dir_ + "/resolved.json");

  CsvWriter metrics(run_dir_ + "/train_metrics.csv", "train-metrics", metrics_header());
  CsvWriter eval_csv(run_dir_ + "/eval.csv", "eval", eval_header());

  const int64_t total = cfg_.train.total_steps;
  if (total == 0) {
    write_checkpoint(0);
    outcome.last_checkpoint = run_dir_ + "/ckpt_0";
    return outcome;
  }

  std::vector<double> eval_steps, eval_returns;
  auto record_eval = [&](int64_t step) {
    const EvalReport r = do_eval(step);
    eval_csv.write_row({static_cast<double>(step), r.success_rate, r.mean_return, r.mean_steps,
                        r.mean_wall_seconds});
    eval_csv.flush();
    eval_steps.push_back(static_cast<double>(step));
    eval_returns.push_back(r.mean_return);
    if (r.success_rate >= cfg_.train.success_threshold && outcome.first_step_at_threshold < 0)
      outcome.first_step_at_threshold = step;
    outcome.final_success_rate = r.success_rate;
    std::cout << "[train seed=" << seed_ << "] step=" << step
              << " success=" << r.success_rate << " return=" << r.mean_return
              << " len=" << r.mean_steps << " alpha=" << agent_.alpha() << std::endl;
    return r;
  };

  if (!resumed_) record_eval(0);

  const int workers = cfg_.train.workers;
  std::vector<std::unique_ptr<PegHoleEnv>> envs;
  std::vector<Observation> obs(static_cast<size_t>(workers));
  std::vector<bool> pending(static_cast<size_t>(workers), true);
  std::vector<double> ep_return(static_cast<size_t>(workers), 0.0);
  std::vector<int> ep_len(static_cast<size_t>(workers), 0);
  std::vector<double> ep_peak(static_cast<size_t>(workers), 0.0);
  for (int w = 0; w < workers; ++w) envs.push_back(std::make_unique<PegHoleEnv>(env_cfg_));

  LossReport last_losses;
  bool checkpoint_request = false;
  bool stop = false;

  for (int64_t step = start_step_ + 1; step <= total && !stop; ++step) {
    const size_t w = static_cast<size_t>((step - 1) % workers);
    if (pending[w]) {
      obs[w] = envs[w]->reset(env_rng_);
      pending[w] = false;
      ep_return[w] = 0.0;
      ep_len[w] = 0;
      ep_peak[w] = 0.0;
    }

    const Eigen::VectorXd action = select_action(obs[w], step);
    const StepResult res = envs[w]->step(action);

    Transition tr;
    nn::Mat<float> p0, w0, p1, w1;
    obs_to_net(obs[w], p0, w0);
    obs_to_net(res.obs, p1, w1);
    tr.proprio = p0.col(0);
    tr.window = w0;
    tr.action.resize(24);
    for (int i = 0; i < 24; ++i) tr.action[i] = static_cast<float>(action[i]);
    tr.reward = static_cast<float>(res.reward);
    tr.next_proprio = p1.col(0);
    tr.next_window = w1;
    tr.terminal =
        (res.status == DoneStatus::kSuccess || res.status == DoneStatus::kCollision);
    tr.done = (res.status != DoneStatus::kRunning);
    buffer_.insert(tr);

    obs[w] = res.obs;
    ep_return[w] += res.reward;
    ep_len[w] += 1;
    ep_peak[w] = std::max(ep_peak[w], res.info.step_peak_force);

    if (step >= cfg_.train.warmup_steps && buffer_.size() >= cfg_.sac.batch_size &&
        step % cfg_.train.update_every == 0) {
      const double beta =
          cfg_.train.per_beta0 +
          (1.0 - cfg_.train.per_beta0) *
              std::min(1.0, static_cast<double>(step) / static_cast<double>(total));
      for (int u = 0; u < cfg_.train.updates_per_step; ++u) {
        auto sample = buffer_.sample(cfg_.sac.batch_size, beta, agent_rng_);
        if (!sample) break;
        SacBatch<float> batch = make_batch(*sample);
        const LossReport rep = agent_.update(batch, agent_rng_);
        if (!rep.ok) {
          std::cerr << "[train seed=" << seed_ << "] halting at step " << step << ": "
                    << rep.diagnostics << std::endl;
          outcome.halted_non_finite = true;
          stop = true;
          break;
        }
        buffer_.update_priorities(sample->indices, rep.new_priorities);
        last_losses = rep;
      }
    }

    if (res.status != DoneStatus::kRunning) {
      ++episode_count_;
      MetricsRow row;
      row.step = step;
      row.episode = episode_count_;
      row.ep_return = ep_return[w];
      row.ep_len = ep_len[w];
      row.success = (res.status == DoneStatus::kSuccess);
      row.peak_force = ep_peak[w];
      row.q1_loss = last_losses.q1_loss;
      row.q2_loss = last_losses.q2_loss;
      row.actor_loss = last_losses.actor_loss;
      row.alpha = agent_.alpha();
      metrics.write_row(metrics_values(row));
      metrics.flush();
      pending[w] = true;

      if (checkpoint_request && workers == 1) {
        write_checkpoint(step);
        outcome.last_checkpoint = run_dir_ + "/ckpt_" + std::to_string(step);
        checkpoint_request = false;
      }
    }

    if (step % cfg_.train.eval_every == 0 && !stop) {
      const EvalReport r = record_eval(step);
      checkpoint_request = true;
      if (workers > 1) {
        write_checkpoint(step);
        outcome.last_checkpoint = run_dir_ + "/ckpt_" + std::to_string(step);
        checkpoint_request = false;
      }
      if (cfg_.train.stop_at_success_rate > 0.0 &&
          r.success_rate >= cfg_.train.stop_at_success_rate)
        stop = true;
    }

    outcome.steps_done = step;
  }

  if (outcome.last_checkpoint.empty() || !outcome.halted_non_finite) {
    const std::string prefix = run_dir_ + "/ckpt_final";
    save_tensors(prefix + ".nn", agent_.checkpoint_tensors());
    if (outcome.last_checkpoint.empty()) outcome.last_checkpoint = prefix;
  }

  double aulc = 0.0;
  for (size_t i = 1; i < eval_steps.size(); ++i)
    aulc += 0.5 * (eval_returns[i] + eval_returns[i - 1]) * (eval_steps[i] - eval_steps[i - 1]);
  outcome.aulc_return = aulc;
  outcome.episodes = episode_count_;
  return outcome;
}

EvalReport Trainer::do_eval(int64_t) {
  EvalOptions opts;
  opts.episodes = cfg_.train.eval_episodes;
  opts.seed = cfg_.train.eval_seed;
  return evaluate_policy(make_agent_policy(agent_), env_cfg_, opts);
}

std::vector<SeedOutcome> cmd_train(const ExperimentConfig& cfg) {
  std::vector<SeedOutcome> out;
  for (uint64_t seed : cfg.seeds) {
    SeedOutcome so;
    so.seed = seed;
    so.run_dir = cfg.out_dir + "/seed" + std::to_string(seed);
    Trainer t(cfg, seed, so.run_dir);
    so.outcome = t.run();
    out.push_back(std::move(so));
  }
  return out;
}

EvalSummary cmd_eval(const ExperimentConfig& cfg, const std::string& checkpoint_nn,
                     int n_episodes, bool scripted, const std::vector<double>& offsets_mm,
                     const std::vector<double>& offsets_deg, const std::string& out_dir) {
  fs::create_directories(out_dir);
  SacAgent<float> agent;
  PolicyFunc policy;
  if (scripted) {
    const Eigen::VectorXd a = scripted_insert_action();
    policy = [a](const Observation&) { return a; };
  } else {
    Rng init_rng(0);
    agent.init(cfg.make_net_config(), cfg.sac, init_rng);
    agent.restore(load_tensors(checkpoint_nn));
    policy = make_agent_policy(agent);
  }

  const EnvConfig env_cfg = cfg.make_env_config();
  EvalSummary summary;
  json report;

  auto run_case = [&](const std::string& label, const EvalOptions& opts) {
    const EvalReport r = evaluate_policy(policy, env_cfg, opts);
    summary.entries.push_back({label, r});
    report[label] = {{"success_rate", r.success_rate},
                     {"mean_steps", r.mean_steps},
                     {"mean_return", r.mean_return},
                     {"mean_wall_seconds", r.mean_wall_seconds},
                     {"episodes", r.episodes}};
  };

  EvalOptions base;
  base.episodes = n_episodes;
  base.seed = cfg.train.eval_seed;
  base.trace_dir = out_dir + "/traces";
  run_case("base", base);

  for (double mm : offsets_mm) {
    EvalOptions o;
    o.episodes = n_episodes;
    o.seed = cfg.train.eval_seed;
    o.override_goal_estimate = true;
    o.goal_offset_pos = Vec3(mm * 1e-3, 0.0, 0.0);
    run_case("offset_" + std::to_string(mm) + "mm", o);
  }
  for (double deg : offsets_deg) {
    EvalOptions o;
    o.episodes = n_episodes;
    o.seed = cfg.train.eval_seed;
    o.override_goal_estimate = true;
    o.goal_offset_rot = Vec3(deg * M_PI / 180.0, 0.0, 0.0);
    run_case("offset_" + std::to_string(deg) + "deg", o);
  }

  std::ofstream out(out_dir + "/report.json", std::ios::trunc);
  out << report.dump(2) << "\n";
  return summary;
}

int64_t first_step_at_threshold(const std::string& eval_csv, double threshold) {
  const CsvTable t = read_csv(eval_csv);
  const int cs = t.column("step");
  const int cr = t.column("success_rate");
  if (cs < 0 || cr < 0) throw std::runtime_error("eval csv lacks step/success_rate");
  for (const auto& row : t.rows)
    if (row[static_cast<size_t>(cr)] >= threshold)
      return static_cast<int64_t>(row[static_cast<size_t>(cs)]);
  return -1;
}

double area_under_curve(const std::string& eval_csv) {
  const CsvTable t = read_csv(eval_csv);
  const int cs = t.column("step");
  const int cr = t.column("mean_return");
  if (cs < 0 || cr < 0) throw std::runtime_error("eval csv lacks step/mean_return");
  double aulc = 0.0;
  for (size_t i = 1; i < t.rows.size(); ++i) {
    const double x0 = t.rows[i - 1][static_cast<size_t>(cs)];
    const double x1 = t.rows[i][static_cast<size_t>(cs)];
    const double y0 = t.rows[i - 1][static_cast<size_t>(cr)];
    const double y1 = t.rows[i][static_cast<size_t>(cr)];
    aulc += 0.5 * (y0 + y1) * (x1 - x0);
  }
  return aulc;
}

TransferReport cmd_transfer(const ExperimentConfig& source, const ExperimentConfig& target) {
  TransferReport rep;
  rep.threshold = target.train.success_threshold;
  const uint64_t seed = source.seeds.front();

  ExperimentConfig src = source;
  src.out_dir = source.out_dir;
  rep.source_run = src.out_dir + "/source_seed" + std::to_string(seed);
  Trainer pre(src, seed, rep.source_run);
  const TrainOutcome pre_out = pre.run();
  rep.pretrain_steps = pre_out.steps_done;

  rep.finetune_run = target.out_dir + "/finetune_seed" + std::to_string(seed);
  Trainer ft(target, seed, rep.finetune_run);
  ft.warm_start(pre_out.last_checkpoint + ".nn");
  const TrainOutcome ft_out = ft.run();
  rep.finetune_steps_to_threshold = ft_out.first_step_at_threshold;

  rep.scratch_run = target.out_dir + "/scratch_seed" + std::to_string(seed);
  Trainer sc(target, seed, rep.scratch_run);
  const TrainOutcome sc_out = sc.run();
  rep.scratch_steps_to_threshold = sc_out.first_step_at_threshold;

  json j{{"source_run", rep.source_run},
         {"finetune_run", rep.finetune_run},
         {"scratch_run", rep.scratch_run},
         {"pretrain_steps", rep.pretrain_steps},
         {"finetune_steps_to_threshold", rep.finetune_steps_to_threshold},
         {"scratch_steps_to_threshold", rep.scratch_steps_to_threshold},
         {"threshold", rep.threshold}};
  fs::create_directories(target.out_dir);
  std::ofstream out(target.out_dir + "/transfer_report.json", std::ios::trunc);
  out << j.dump(2) << "\n";
  return rep;
}

AblateReport cmd_ablate(const ExperimentConfig& cfg, const std::string& variant) {
  if (variant != "full" && variant != "mlp-policy" && variant != "no-prev-action" &&
      variant != "no-fg-input")
    throw std::invalid_argument("ablate: unknown variant '" + variant + "'");
  AblateReport rep;
  rep.variant = variant;
  const uint64_t seed = cfg.seeds.front();

  auto run_variant = [&](const std::string& v) {
    ExperimentConfig c = cfg;
    c.variant = v;
    const std::string dir = cfg.out_dir + "/" + v + "_seed" + std::to_string(seed);
    if (fs::exists(dir + "/done.json")) return dir;  // reuse finished baseline
    Trainer t(c, seed, dir);
    const TrainOutcome out = t.run();
    json j{{"steps_done", out.steps_done},
           {"first_step_at_threshold", out.first_step_at_threshold},
           {"final_success_rate", out.final_success_rate},
           {"aulc_return", out.aulc_return}};
    std::ofstream o(dir + "/done.json", std::ios::trunc);
    o << j.dump(2) << "\n";
    return dir;
  };

  rep.full_run = run_variant("full");
  rep.variant_run = (variant == "full") ? rep.full_run : run_variant(variant);

  rep.full_steps_to_threshold =
      first_step_at_threshold(rep.full_run + "/eval.csv", cfg.train.success_threshold);
  rep.variant_steps_to_threshold =
      first_step_at_threshold(rep.variant_run + "/eval.csv", cfg.train.success_threshold);
  rep.full_aulc = area_under_curve(rep.full_run + "/eval.csv");
  rep.variant_aulc = area_under_curve(rep.variant_run + "/eval.csv");

  json j{{"variant", variant},
         {"full_run", rep.full_run},
         {"variant_run", rep.variant_run},
         {"full_steps_to_threshold", rep.full_steps_to_threshold},
         {"variant_steps_to_threshold", rep.variant_steps_to_threshold},
         {"full_aulc", rep.full_aulc},
         {"variant_aulc", rep.variant_aulc}};
  fs::create_directories(cfg.out_dir);
  std::ofstream out(cfg.out_dir + "/ablate_" + variant + ".json", std::ios::trunc);
  out << j.dump(2) << "\n";
  return rep;
}

}  // namespace pih
