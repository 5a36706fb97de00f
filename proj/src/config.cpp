#include "pih/config.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "pih/scene.hpp"

extern char** environ;

namespace pih {

using nlohmann::json;

void TrainConfig::validate() const {
  if (total_steps < 0) throw std::invalid_argument("train: total_steps must be >= 0");
  if (eval_every <= 0) throw std::invalid_argument("train: eval_every must be > 0");
  if (eval_episodes <= 0) throw std::invalid_argument("train: eval_episodes must be > 0");
  if (warmup_steps < 0) throw std::invalid_argument("train: warmup_steps must be >= 0");
  if (update_every <= 0 || updates_per_step <= 0)
    throw std::invalid_argument("train: update cadence must be positive");
  if (buffer_capacity <= 0) throw std::invalid_argument("train: buffer_capacity must be > 0");
  if (per_alpha < 0.0) throw std::invalid_argument("train: per_alpha must be >= 0");
  if (per_beta0 < 0.0 || per_beta0 > 1.0)
    throw std::invalid_argument("train: per_beta0 must be in [0, 1]");
  if (workers <= 0) throw std::invalid_argument("train: workers must be > 0");
}

void ExperimentConfig::validate() const {
  if (seeds.empty()) throw std::invalid_argument("config: seeds must be non-empty");
  if (variant != "full" && variant != "mlp-policy" && variant != "no-prev-action" &&
      variant != "no-fg-input")
    throw std::invalid_argument("config: unknown variant '" + variant + "'");
  train.validate();
  sac.validate();
  make_env_config().validate();
}

EnvConfig ExperimentConfig::make_env_config() const {
  EnvConfig e;
  e.base_scene = scene;
  e.ranges = ranges;
  e.episode = episode;
  e.sim = sim;
  e.controller_ranges = controller;
  e.limits = limits;
  e.windup_bound = windup_bound;
  e.ax_translation = ax_translation;
  e.ax_rotation = ax_rotation_deg * M_PI / 180.0;
  e.include_prev_action = (variant != "no-prev-action");
  e.include_fg = (variant != "no-fg-input");
  e.window_len = net.window_len;
  return e;
}

nn::NnConfig ExperimentConfig::make_net_config() const {
  nn::NnConfig n = net;
  n.proprio_dim = make_env_config().proprio_dim();
  n.use_tcn = (variant != "mlp-policy");
  return n;
}

namespace {

json vec6_to_json(const Vec6& v) {
  json a = json::array();
  for (int i = 0; i < 6; ++i) a.push_back(v[i]);
  return a;
}

Vec6 vec6_from_json(const json& j) {
  if (!j.is_array() || j.size() != 6) throw std::invalid_argument("expected 6-element array");
  Vec6 v;
  for (int i = 0; i < 6; ++i) v[i] = j[i].get<double>();
  return v;
}

void merge_patch(json& base, const json& patch) {
  if (!patch.is_object()) {
    base = patch;
    return;
  }
  if (!base.is_object()) base = json::object();
  for (auto it = patch.begin(); it != patch.end(); ++it) merge_patch(base[it.key()], it.value());
}

/// Sets a dotted path like "sac.batch_size" to a value parsed as JSON when
/// possible, falling back to a raw string.
void set_path(json& root, const std::string& dotted, const std::string& value) {
  json* node = &root;
  std::stringstream ss(dotted);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(ss, part, '.')) parts.push_back(part);
  if (parts.empty()) throw std::invalid_argument("override: empty key");
  for (size_t i = 0; i + 1 < parts.size(); ++i) node = &((*node)[parts[i]]);
  json parsed;
  try {
    parsed = json::parse(value);
  } catch (const json::parse_error&) {
    parsed = value;
  }
  (*node)[parts.back()] = parsed;
}

json env_overrides() {
  json out = json::object();
  for (char** e = environ; *e != nullptr; ++e) {
    std::string entry(*e);
    if (entry.rfind("PIH_", 0) != 0) continue;
    const size_t eq = entry.find('=');
    if (eq == std::string::npos) continue;
    std::string key = entry.substr(4, eq - 4);
    const std::string value = entry.substr(eq + 1);
    for (char& c : key) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    size_t pos;
    while ((pos = key.find("__")) != std::string::npos) key.replace(pos, 2, ".");
    set_path(out, key, value);
  }
  return out;
}

}  // namespace

ExperimentConfig config_from_json_text(const std::string& text) {
  json j = json::parse(text);
  ExperimentConfig c;

  if (j.contains("scene")) {
    const json& s = j.at("scene");
    if (s.is_string()) {
      c.scene_source = s.get<std::string>();
      if (!std::filesystem::exists(c.scene_source))
        throw std::invalid_argument("config: scene file does not exist: " + c.scene_source);
      c.scene = load_scene(c.scene_source);
    } else {
      c.scene = scene_from_json_text(s.dump());
    }
  }
  if (j.contains("randomization")) c.ranges = ranges_from_json_text(j.at("randomization").dump());

  if (j.contains("episode")) {
    const json& e = j.at("episode");
    c.episode.max_steps = e.value("max_steps", c.episode.max_steps);
    c.episode.f_max = e.value("f_max", c.episode.f_max);
    c.episode.w1 = e.value("w1", c.episode.w1);
    c.episode.w2 = e.value("w2", c.episode.w2);
    c.episode.w_d = e.value("w_d", c.episode.w_d);
    c.episode.d0 = e.value("d0", c.episode.d0);
    c.episode.inner_steps_per_policy_step =
        e.value("inner_steps_per_policy_step", c.episode.inner_steps_per_policy_step);
    c.episode.filter_cutoff_hz = e.value("filter_cutoff_hz", c.episode.filter_cutoff_hz);
  }
  if (j.contains("sim")) {
    const json& s = j.at("sim");
    c.sim.inner_dt = s.value("inner_dt", c.sim.inner_dt);
    c.sim.tau_track = s.value("tau_track", c.sim.tau_track);
    c.sim.max_lin_speed = s.value("max_lin_speed", c.sim.max_lin_speed);
    c.sim.max_ang_speed = s.value("max_ang_speed", c.sim.max_ang_speed);
  }
  if (j.contains("controller")) {
    const json& k = j.at("controller");
    if (k.contains("kp_x_base")) c.controller.kp_x_base = vec6_from_json(k.at("kp_x_base"));
    if (k.contains("kp_x_range")) c.controller.kp_x_range = vec6_from_json(k.at("kp_x_range"));
    if (k.contains("kp_f_base")) c.controller.kp_f_base = vec6_from_json(k.at("kp_f_base"));
    if (k.contains("kp_f_range")) c.controller.kp_f_range = vec6_from_json(k.at("kp_f_range"));
    if (k.contains("s_base")) c.controller.s_base = vec6_from_json(k.at("s_base"));
    if (k.contains("s_range")) c.controller.s_range = vec6_from_json(k.at("s_range"));
    c.windup_bound = k.value("windup_bound", c.windup_bound);
    c.ax_translation = k.value("ax_translation", c.ax_translation);
    c.ax_rotation_deg = k.value("ax_rotation_deg", c.ax_rotation_deg);
    c.limits.max_translation = k.value("max_step_translation", c.limits.max_translation);
    c.limits.max_rotation = k.value("max_step_rotation", c.limits.max_rotation);
  }
  if (j.contains("net")) {
    const json& n = j.at("net");
    c.net.proprio_hidden = n.value("proprio_hidden", c.net.proprio_hidden);
    c.net.feature_dim = n.value("feature_dim", c.net.feature_dim);
    c.net.head_hidden = n.value("head_hidden", c.net.head_hidden);
    c.net.tcn_channels = n.value("tcn_channels", c.net.tcn_channels);
    c.net.tcn_kernel = n.value("tcn_kernel", c.net.tcn_kernel);
    if (n.contains("tcn_dilations"))
      c.net.tcn_dilations = n.at("tcn_dilations").get<std::vector<int>>();
    c.net.window_len = n.value("window_len", c.net.window_len);
    c.net.logstd_min = n.value("logstd_min", c.net.logstd_min);
    c.net.logstd_max = n.value("logstd_max", c.net.logstd_max);
  }
  if (j.contains("sac")) {
    const json& s = j.at("sac");
    c.sac.gamma = s.value("gamma", c.sac.gamma);
    c.sac.polyak = s.value("polyak", c.sac.polyak);
    c.sac.batch_size = s.value("batch_size", c.sac.batch_size);
    c.sac.lr_actor = s.value("lr_actor", c.sac.lr_actor);
    c.sac.lr_critic = s.value("lr_critic", c.sac.lr_critic);
    c.sac.lr_alpha = s.value("lr_alpha", c.sac.lr_alpha);
    c.sac.target_entropy = s.value("target_entropy", c.sac.target_entropy);
    c.sac.init_alpha = s.value("init_alpha", c.sac.init_alpha);
  }
  if (j.contains("train")) {
    const json& t = j.at("train");
    c.train.total_steps = t.value("total_steps", c.train.total_steps);
    c.train.eval_every = t.value("eval_every", c.train.eval_every);
    c.train.eval_episodes = t.value("eval_episodes", c.train.eval_episodes);
    c.train.eval_seed = t.value("eval_seed", c.train.eval_seed);
    c.train.stop_at_success_rate = t.value("stop_at_success_rate", c.train.stop_at_success_rate);
    c.train.success_threshold = t.value("success_threshold", c.train.success_threshold);
    c.train.warmup_steps = t.value("warmup_steps", c.train.warmup_steps);
    c.train.update_every = t.value("update_every", c.train.update_every);
    c.train.updates_per_step = t.value("updates_per_step", c.train.updates_per_step);
    c.train.buffer_capacity = t.value("buffer_capacity", c.train.buffer_capacity);
    c.train.per_alpha = t.value("per_alpha", c.train.per_alpha);
    c.train.per_beta0 = t.value("per_beta0", c.train.per_beta0);
    c.train.save_replay = t.value("save_replay", c.train.save_replay);
    c.train.workers = t.value("workers", c.train.workers);
  }
  if (j.contains("seeds")) c.seeds = j.at("seeds").get<std::vector<uint64_t>>();
  c.out_dir = j.value("out_dir", c.out_dir);
  c.variant = j.value("variant", c.variant);
  c.validate();
  return c;
}

std::string config_to_json_text(const ExperimentConfig& c) {
  json j;
  j["scene"] = json::parse(scene_to_json_text(c.scene));
  j["randomization"] = json::parse(ranges_to_json_text(c.ranges));
  j["episode"] = {{"max_steps", c.episode.max_steps},
                  {"f_max", c.episode.f_max},
                  {"w1", c.episode.w1},
                  {"w2", c.episode.w2},
                  {"w_d", c.episode.w_d},
                  {"d0", c.episode.d0},
                  {"inner_steps_per_policy_step", c.episode.inner_steps_per_policy_step},
                  {"filter_cutoff_hz", c.episode.filter_cutoff_hz}};
  j["sim"] = {{"inner_dt", c.sim.inner_dt},
              {"tau_track", c.sim.tau_track},
              {"max_lin_speed", c.sim.max_lin_speed},
              {"max_ang_speed", c.sim.max_ang_speed}};
  j["controller"] = {{"kp_x_base", vec6_to_json(c.controller.kp_x_base)},
                     {"kp_x_range", vec6_to_json(c.controller.kp_x_range)},
                     {"kp_f_base", vec6_to_json(c.controller.kp_f_base)},
                     {"kp_f_range", vec6_to_json(c.controller.kp_f_range)},
                     {"s_base", vec6_to_json(c.controller.s_base)},
                     {"s_range", vec6_to_json(c.controller.s_range)},
                     {"windup_bound", c.windup_bound},
                     {"ax_translation", c.ax_translation},
                     {"ax_rotation_deg", c.ax_rotation_deg},
                     {"max_step_translation", c.limits.max_translation},
                     {"max_step_rotation", c.limits.max_rotation}};
  j["net"] = {{"proprio_hidden", c.net.proprio_hidden},
              {"feature_dim", c.net.feature_dim},
              {"head_hidden", c.net.head_hidden},
              {"tcn_channels", c.net.tcn_channels},
              {"tcn_kernel", c.net.tcn_kernel},
              {"tcn_dilations", c.net.tcn_dilations},
              {"window_len", c.net.window_len},
              {"logstd_min", c.net.logstd_min},
              {"logstd_max", c.net.logstd_max}};
  j["sac"] = {{"gamma", c.sac.gamma},
              {"polyak", c.sac.polyak},
              {"batch_size", c.sac.batch_size},
              {"lr_actor", c.sac.lr_actor},
              {"lr_critic", c.sac.lr_critic},
              {"lr_alpha", c.sac.lr_alpha},
              {"target_entropy", c.sac.target_entropy},
              {"init_alpha", c.sac.init_alpha}};
  j["train"] = {{"total_steps", c.train.total_steps},
                {"eval_every", c.train.eval_every},
                {"eval_episodes", c.train.eval_episodes},
                {"eval_seed", c.train.eval_seed},
                {"stop_at_success_rate", c.train.stop_at_success_rate},
                {"success_threshold", c.train.success_threshold},
                {"warmup_steps", c.train.warmup_steps},
                {"update_every", c.train.update_every},
                {"updates_per_step", c.train.updates_per_step},
                {"buffer_capacity", c.train.buffer_capacity},
                {"per_alpha", c.train.per_alpha},
                {"per_beta0", c.train.per_beta0},
                {"save_replay", c.train.save_replay},
                {"workers", c.train.workers}};
  j["seeds"] = c.seeds;
  j["out_dir"] = c.out_dir;
  j["variant"] = c.variant;
  return j.dump(2);
}

ExperimentConfig load_experiment_config(const std::string& path,
                                        const std::vector<std::string>& overrides) {
  json j = json::object();
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    j = json::parse(ss.str());
  }
  merge_patch(j, env_overrides());
  for (const std::string& ov : overrides) {
    const size_t eq = ov.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("override must look like section.key=value: " + ov);
    set_path(j, ov.substr(0, eq), ov.substr(eq + 1));
  }
  return config_from_json_text(j.dump());
}

void save_experiment_config(const ExperimentConfig& cfg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write config file: " + path);
  out << config_to_json_text(cfg) << "\n";
}

}  // namespace pih
