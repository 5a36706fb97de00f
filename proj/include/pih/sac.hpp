#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pih/checkpoint.hpp"
#include "pih/nn.hpp"

namespace pih {

struct SacConfig {
  double gamma = 0.99;
  double polyak = 0.995;
  int batch_size = 256;
  double lr_actor = 3e-4;
  double lr_critic = 3e-4;
  double lr_alpha = 3e-4;
  double target_entropy = -24.0;  // -action_dim
  double init_alpha = 0.2;
  uint64_t seed = 1;

  void validate() const {
    if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("sac: gamma must be in (0,1)");
    if (!(polyak > 0.0 && polyak < 1.0))
      throw std::invalid_argument("sac: polyak must be in (0,1)");
    if (batch_size <= 0) throw std::invalid_argument("sac: batch_size must be > 0");
    if (!(init_alpha > 0.0)) throw std::invalid_argument("sac: init_alpha must be > 0");
  }
};

/// One training batch in network layout: samples are columns, windows are
/// (channels x window_len*N).
template <class S>
struct SacBatch {
  nn::Mat<S> proprio, window, action;
  nn::RowVec<S> reward;
  nn::RowVec<S> not_terminal;  // 1 when bootstrapping is allowed
  nn::RowVec<S> is_weights;
  nn::Mat<S> next_proprio, next_window;

  Eigen::Index size() const { return proprio.cols(); }
};

struct LossReport {
  bool ok = true;
  double q1_loss = 0.0, q2_loss = 0.0;
  double actor_loss = 0.0;
  double alpha_loss = 0.0;
  double alpha = 0.0;
  double mean_q_target = 0.0;
  std::vector<double> new_priorities;  // |td error| + 1e-6 per sample
  std::string diagnostics;
};

/// Soft actor-critic with twin critics, target networks and a temperature
/// optimized in log space toward the target entropy.
template <class S>
class SacAgent {
 public:
  nn::PolicyNet<S> policy;
  nn::QNet<S> q1, q2, q1_target, q2_target;

  void init(const nn::NnConfig& net_cfg, const SacConfig& cfg, Rng& rng) {
    cfg.validate();
    net_cfg_ = net_cfg;
    cfg_ = cfg;
    policy.init(net_cfg, rng);
    q1.init(net_cfg, rng);
    q2.init(net_cfg, rng);
    q1_target = q1;
    q2_target = q2;
    log_alpha_ = nn::Mat<S>::Constant(1, 1, static_cast<S>(std::log(cfg.init_alpha)));
    g_log_alpha_ = nn::Mat<S>::Zero(1, 1);
    opt_policy_.lr = cfg.lr_actor;
    opt_q1_.lr = cfg.lr_critic;
    opt_q2_.lr = cfg.lr_critic;
    opt_alpha_.lr = cfg.lr_alpha;
  }

  double alpha() const { return std::exp(static_cast<double>(log_alpha_(0, 0))); }
  const SacConfig& config() const { return cfg_; }
  const nn::NnConfig& net_config() const { return net_cfg_; }

  /// Critic regression targets y = r + gamma*(1-terminal)*(min Q_target - alpha*logp').
  nn::RowVec<S> compute_targets(SacBatch<S>& batch, const nn::Mat<S>& eps_next) {
    auto next = nn::policy_sample_with_eps(policy, batch.next_proprio, batch.next_window,
                                           eps_next);
    const nn::RowVec<S> q1n = q1_target.forward(batch.next_proprio, batch.next_window, next.action);
    const nn::RowVec<S> q2n = q2_target.forward(batch.next_proprio, batch.next_window, next.action);
    const S a = static_cast<S>(alpha());
    nn::RowVec<S> y(batch.size());
    for (Eigen::Index i = 0; i < batch.size(); ++i) {
      const S qmin = std::min(q1n(i), q2n(i));
      y(i) = batch.reward(i) +
             static_cast<S>(cfg_.gamma) * batch.not_terminal(i) * (qmin - a * next.logp(i));
    }
    return y;
  }

  /// One gradient step on both critics, the actor, and the temperature.
  /// Natural-ordered RNG consumption: next-action eps, then actor eps.
  LossReport update(SacBatch<S>& batch, Rng& rng) {
    const Eigen::Index n = batch.size();
    const int ad = net_cfg_.action_dim;
    LossReport rep;

    nn::Mat<S> eps_next = draw_eps(ad, n, rng);
    const nn::RowVec<S> y = compute_targets(batch, eps_next);
    rep.mean_q_target = static_cast<double>(y.sum()) / static_cast<double>(n);

    // Critic regression, importance-weighted; priorities from the pre-update
    // TD errors (mean absolute error across the twins).
    rep.new_priorities.assign(static_cast<size_t>(n), 0.0);
    for (int k = 0; k < 2; ++k) {
      nn::QNet<S>& q = (k == 0) ? q1 : q2;
      nn::Adam<S>& opt = (k == 0) ? opt_q1_ : opt_q2_;
      auto params = collect_q(k == 0 ? "q1" : "q2", q);
      nn::zero_grads(params);
      const nn::RowVec<S> qv = q.forward(batch.proprio, batch.window, batch.action);
      nn::RowVec<S> delta = qv - y;
      S loss = S(0);
      nn::RowVec<S> dq(n);
      for (Eigen::Index i = 0; i < n; ++i) {
        loss += batch.is_weights(i) * S(0.5) * delta(i) * delta(i);
        dq(i) = batch.is_weights(i) * delta(i) / static_cast<S>(n);
        rep.new_priorities[static_cast<size_t>(i)] +=
            0.5 * std::abs(static_cast<double>(delta(i)));
      }
      loss /= static_cast<S>(n);
      if (!std::isfinite(static_cast<double>(loss))) {
        rep.ok = false;
        rep.diagnostics = (k == 0 ? "q1" : "q2") + std::string(" loss non-finite");
        return rep;
      }
      (k == 0 ? rep.q1_loss : rep.q2_loss) = static_cast<double>(loss);
      q.backward(dq);
      opt.step(params);
    }
    for (double& p : rep.new_priorities) p += 1e-6;

    // Actor: fresh reparameterized sample, minimize alpha*logp - min(Q).
    nn::Mat<S> eps_new = draw_eps(ad, n, rng);
    auto sample = nn::policy_sample_with_eps(policy, batch.proprio, batch.window, eps_new);
    const nn::RowVec<S> qa1 = q1.forward(batch.proprio, batch.window, sample.action);
    const nn::RowVec<S> qa2 = q2.forward(batch.proprio, batch.window, sample.action);
    const S a = static_cast<S>(alpha());
    S actor_loss = S(0);
    nn::RowVec<S> dq1 = nn::RowVec<S>::Zero(n), dq2 = nn::RowVec<S>::Zero(n);
    nn::RowVec<S> dlogp(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const S qmin = std::min(qa1(i), qa2(i));
      actor_loss += a * sample.logp(i) - qmin;
      (qa1(i) <= qa2(i) ? dq1(i) : dq2(i)) = S(-1) / static_cast<S>(n);
      dlogp(i) = a / static_cast<S>(n);
    }
    actor_loss /= static_cast<S>(n);
    rep.actor_loss = static_cast<double>(actor_loss);
    if (!std::isfinite(rep.actor_loss)) {
      rep.ok = false;
      rep.diagnostics = "actor loss non-finite";
      return rep;
    }

    auto policy_params = collect_policy();
    auto q1_params = collect_q("q1", q1);
    auto q2_params = collect_q("q2", q2);
    nn::zero_grads(policy_params);
    nn::zero_grads(q1_params);  // scratch: critic grads from this pass are discarded
    nn::zero_grads(q2_params);
    auto g1 = q1.backward(dq1);
    auto g2 = q2.backward(dq2);
    const nn::Mat<S> daction = g1.daction + g2.daction;
    nn::policy_sample_backward(policy, sample, daction, dlogp);
    opt_policy_.step(policy_params);

    // Temperature toward the target entropy, in log space.
    S mean_err = S(0);
    for (Eigen::Index i = 0; i < n; ++i)
      mean_err += sample.logp(i) + static_cast<S>(cfg_.target_entropy);
    mean_err /= static_cast<S>(n);
    rep.alpha_loss = -static_cast<double>(log_alpha_(0, 0) * mean_err);
    g_log_alpha_(0, 0) = -mean_err;
    auto alpha_params = alpha_param();
    opt_alpha_.step(alpha_params);
    rep.alpha = alpha();

    polyak_targets();
    return rep;
  }

  void polyak_targets() {
    auto t1 = collect_q("q1_target", q1_target);
    auto o1 = collect_q("q1", q1);
    nn::polyak_update(t1, o1, cfg_.polyak);
    auto t2 = collect_q("q2_target", q2_target);
    auto o2 = collect_q("q2", q2);
    nn::polyak_update(t2, o2, cfg_.polyak);
  }

  std::vector<nn::ParamRef<S>> collect_policy() {
    std::vector<nn::ParamRef<S>> out;
    policy.collect("policy", out);
    return out;
  }

  std::vector<nn::ParamRef<S>> collect_q(const std::string& prefix, nn::QNet<S>& q) {
    std::vector<nn::ParamRef<S>> out;
    q.collect(prefix, out);
    return out;
  }

  std::vector<nn::ParamRef<S>> alpha_param() {
    return {{"log_alpha", &log_alpha_, &g_log_alpha_}};
  }

  /// Everything needed to restore training exactly: weights, target weights,
  /// temperature, and optimizer moments/step counters.
  std::vector<NamedTensor> checkpoint_tensors() {
    std::vector<NamedTensor> out;
    auto dump_group = [&out](std::vector<nn::ParamRef<S>> params, nn::Adam<S>& opt,
                             const std::string& opt_name) {
      for (auto& p : params) out.push_back(to_named_tensor(p));
      NamedTensor t;
      t.name = "opt." + opt_name + ".t";
      t.shape = {1, 1};
      t.data = {static_cast<double>(opt.t)};
      out.push_back(t);
      for (size_t i = 0; i < opt.m.size(); ++i) {
        nn::ParamRef<S> rm{params[i].name + "#m", &opt.m[i], &opt.m[i]};
        nn::ParamRef<S> rv{params[i].name + "#v", &opt.v[i], &opt.v[i]};
        out.push_back(to_named_tensor(rm));
        out.push_back(to_named_tensor(rv));
      }
    };
    dump_group(collect_policy(), opt_policy_, "policy");
    dump_group(collect_q("q1", q1), opt_q1_, "q1");
    dump_group(collect_q("q2", q2), opt_q2_, "q2");
    dump_group(alpha_param(), opt_alpha_, "alpha");
    for (auto& p : collect_q("q1_target", q1_target)) out.push_back(to_named_tensor(p));
    for (auto& p : collect_q("q2_target", q2_target)) out.push_back(to_named_tensor(p));
    return out;
  }

  void restore(const std::vector<NamedTensor>& tensors) {
    auto find = [&tensors](const std::string& name) -> const NamedTensor* {
      for (const auto& t : tensors)
        if (t.name == name) return &t;
      return nullptr;
    };
    auto load_group = [&](std::vector<nn::ParamRef<S>> params, nn::Adam<S>& opt,
                          const std::string& opt_name, bool require) {
      for (auto& p : params) {
        const NamedTensor* t = find(p.name);
        if (!t) {
          if (require) throw std::runtime_error("checkpoint: missing tensor " + p.name);
          continue;
        }
        assign_from_named_tensor(*t, p);
      }
      if (const NamedTensor* t = find("opt." + opt_name + ".t"))
        opt.t = static_cast<long long>(t->data.at(0));
      if (opt.m.empty() && find(params[0].name + "#m")) {
        for (auto& p : params) {
          opt.m.push_back(nn::Mat<S>::Zero(p.value->rows(), p.value->cols()));
          opt.v.push_back(nn::Mat<S>::Zero(p.value->rows(), p.value->cols()));
        }
      }
      for (size_t i = 0; i < opt.m.size(); ++i) {
        nn::ParamRef<S> rm{params[i].name + "#m", &opt.m[i], &opt.m[i]};
        nn::ParamRef<S> rv{params[i].name + "#v", &opt.v[i], &opt.v[i]};
        if (const NamedTensor* t = find(rm.name)) assign_from_named_tensor(*t, rm);
        if (const NamedTensor* t = find(rv.name)) assign_from_named_tensor(*t, rv);
      }
    };
    load_group(collect_policy(), opt_policy_, "policy", true);
    load_group(collect_q("q1", q1), opt_q1_, "q1", true);
    load_group(collect_q("q2", q2), opt_q2_, "q2", true);
    load_group(alpha_param(), opt_alpha_, "alpha", true);
    load_group(collect_q("q1_target", q1_target), opt_q1_dummy_, "none", false);
    load_group(collect_q("q2_target", q2_target), opt_q2_dummy_, "none", false);
  }

 private:
  static nn::Mat<S> draw_eps(int rows, Eigen::Index cols, Rng& rng) {
    nn::Mat<S> eps(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c)
      for (int r = 0; r < rows; ++r) eps(r, c) = static_cast<S>(rng.gaussian());
    return eps;
  }

  nn::NnConfig net_cfg_;
  SacConfig cfg_;
  nn::Mat<S> log_alpha_, g_log_alpha_;
  nn::Adam<S> opt_policy_, opt_q1_, opt_q2_, opt_alpha_;
  nn::Adam<S> opt_q1_dummy_, opt_q2_dummy_;  // placeholders for target loads
};

}  // namespace pih
