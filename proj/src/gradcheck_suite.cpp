#include "pih/gradcheck_suite.hpp"

#include <iostream>

#include "pih/sac.hpp"

namespace pih {

namespace {

using Md = nn::Mat<double>;
using Rd = nn::RowVec<double>;

Md random_mat(Eigen::Index r, Eigen::Index c, Rng& rng, double scale = 1.0) {
  Md m(r, c);
  for (Eigen::Index j = 0; j < c; ++j)
    for (Eigen::Index i = 0; i < r; ++i) m(i, j) = scale * rng.gaussian();
  return m;
}

nn::NnConfig tiny_config() {
  nn::NnConfig c;
  c.proprio_dim = 5;
  c.action_dim = 3;
  c.window_len = 4;
  c.window_channels = 2;
  c.proprio_hidden = 4;
  c.feature_dim = 3;
  c.head_hidden = 4;
  c.tcn_channels = 3;
  c.tcn_kernel = 2;
  c.tcn_dilations = {1, 2};
  return c;
}

}  // namespace

std::vector<GradCheckCase> run_grad_check_suite(uint64_t seed) {
  std::vector<GradCheckCase> cases;
  constexpr double kEps = 1e-6;
  Rng rng(seed);

  {
    // Dense layer: weighted-sum loss over a relu layer.
    nn::Dense<double> layer;
    layer.init(6, 5, nn::Act::kRelu, rng);
    const Md x = random_mat(6, 4, rng);
    const Md r = random_mat(5, 4, rng);
    std::vector<nn::ParamRef<double>> params;
    layer.collect("dense", params);
    auto eval = [&]() { return layer.forward(x).cwiseProduct(r).sum(); };
    auto grads = [&]() {
      nn::zero_grads(params);
      layer.forward(x);
      layer.backward(r);
    };
    const auto rep = nn::grad_check(params, eval, grads, kEps, 0, rng);
    cases.push_back({"dense", rep.max_rel_error, 1e-6, rep.max_rel_error < 1e-6});
  }

  {
    // TCN encoder over a random window.
    nn::TcnEncoder<double> tcn;
    tcn.init(2, 3, 3, 2, {1, 2}, 4, rng);
    const Md x = random_mat(2, 4 * 3, rng);
    const Md r = random_mat(3, 3, rng);
    std::vector<nn::ParamRef<double>> params;
    tcn.collect("tcn", params);
    auto eval = [&]() { return tcn.forward(x).cwiseProduct(r).sum(); };
    auto grads = [&]() {
      nn::zero_grads(params);
      tcn.forward(x);
      tcn.backward(r);
    };
    const auto rep = nn::grad_check(params, eval, grads, kEps, 0, rng);
    cases.push_back({"tcn", rep.max_rel_error, 1e-5, rep.max_rel_error < 1e-5});
  }

  nn::NnConfig cfg = tiny_config();
  {
    // Policy head through the reparameterized sample and log-probability.
    nn::PolicyNet<double> net;
    net.init(cfg, rng);
    const Md proprio = random_mat(cfg.proprio_dim, 3, rng);
    const Md window = random_mat(cfg.window_channels, cfg.window_len * 3, rng);
    const Md eps = random_mat(cfg.action_dim, 3, rng);
    const Md ra = random_mat(cfg.action_dim, 3, rng);
    const Md rl = random_mat(1, 3, rng);
    std::vector<nn::ParamRef<double>> params = [&] {
      std::vector<nn::ParamRef<double>> p;
      net.collect("policy", p);
      return p;
    }();
    auto eval = [&]() {
      auto s = nn::policy_sample_with_eps(net, proprio, window, eps);
      return s.action.cwiseProduct(ra).sum() + (s.logp.cwiseProduct(rl.row(0))).sum();
    };
    auto grads = [&]() {
      nn::zero_grads(params);
      auto s = nn::policy_sample_with_eps(net, proprio, window, eps);
      nn::policy_sample_backward(net, s, ra, Rd(rl.row(0)));
    };
    const auto rep = nn::grad_check(params, eval, grads, kEps, 0, rng);
    cases.push_back({"policy-head", rep.max_rel_error, 1e-4, rep.max_rel_error < 1e-4});
  }

  {
    // Full SAC losses on tiny twin critics and policy.
    SacConfig sac_cfg;
    sac_cfg.batch_size = 4;
    sac_cfg.target_entropy = -static_cast<double>(cfg.action_dim);
    SacAgent<double> agent;
    Rng init_rng(seed + 1);
    agent.init(cfg, sac_cfg, init_rng);

    const Eigen::Index n = 4;
    SacBatch<double> batch;
    batch.proprio = random_mat(cfg.proprio_dim, n, rng);
    batch.window = random_mat(cfg.window_channels, cfg.window_len * n, rng, 0.5);
    batch.action = random_mat(cfg.action_dim, n, rng, 0.4);
    batch.reward = random_mat(1, n, rng).row(0);
    batch.not_terminal = Rd::Ones(n);
    batch.is_weights = Rd::Ones(n);
    batch.next_proprio = random_mat(cfg.proprio_dim, n, rng);
    batch.next_window = random_mat(cfg.window_channels, cfg.window_len * n, rng, 0.5);

    const Md eps_next = random_mat(cfg.action_dim, n, rng);
    const Rd y = agent.compute_targets(batch, eps_next);  // frozen target

    // Critic loss wrt critic parameters.
    auto q_params = agent.collect_q("q1", agent.q1);
    auto critic_eval = [&]() {
      const Rd qv = agent.q1.forward(batch.proprio, batch.window, batch.action);
      double loss = 0.0;
      for (Eigen::Index i = 0; i < n; ++i)
        loss += 0.5 * batch.is_weights(i) * (qv(i) - y(i)) * (qv(i) - y(i));
      return loss / static_cast<double>(n);
    };
    auto critic_grads = [&]() {
      nn::zero_grads(q_params);
      const Rd qv = agent.q1.forward(batch.proprio, batch.window, batch.action);
      Rd dq(n);
      for (Eigen::Index i = 0; i < n; ++i)
        dq(i) = batch.is_weights(i) * (qv(i) - y(i)) / static_cast<double>(n);
      agent.q1.backward(dq);
    };
    const auto rep_c = nn::grad_check(q_params, critic_eval, critic_grads, kEps, 0, rng);
    cases.push_back({"sac-critic-loss", rep_c.max_rel_error, 1e-4, rep_c.max_rel_error < 1e-4});

    // Actor loss wrt policy parameters, gradient flowing through the critics.
    const Md eps_new = random_mat(cfg.action_dim, n, rng);
    const double alpha = agent.alpha();
    auto p_params = agent.collect_policy();
    auto actor_eval = [&]() {
      auto s = nn::policy_sample_with_eps(agent.policy, batch.proprio, batch.window, eps_new);
      const Rd q1v = agent.q1.forward(batch.proprio, batch.window, s.action);
      const Rd q2v = agent.q2.forward(batch.proprio, batch.window, s.action);
      double loss = 0.0;
      for (Eigen::Index i = 0; i < n; ++i)
        loss += alpha * s.logp(i) - std::min(q1v(i), q2v(i));
      return loss / static_cast<double>(n);
    };
    auto actor_grads = [&]() {
      nn::zero_grads(p_params);
      auto s = nn::policy_sample_with_eps(agent.policy, batch.proprio, batch.window, eps_new);
      const Rd q1v = agent.q1.forward(batch.proprio, batch.window, s.action);
      const Rd q2v = agent.q2.forward(batch.proprio, batch.window, s.action);
      Rd dq1 = Rd::Zero(n), dq2 = Rd::Zero(n), dlogp(n);
      for (Eigen::Index i = 0; i < n; ++i) {
        (q1v(i) <= q2v(i) ? dq1(i) : dq2(i)) = -1.0 / static_cast<double>(n);
        dlogp(i) = alpha / static_cast<double>(n);
      }
      auto q1g = agent.collect_q("q1", agent.q1);
      auto q2g = agent.collect_q("q2", agent.q2);
      nn::zero_grads(q1g);
      nn::zero_grads(q2g);
      auto g1 = agent.q1.backward(dq1);
      auto g2 = agent.q2.backward(dq2);
      nn::policy_sample_backward(agent.policy, s, Md(g1.daction + g2.daction), dlogp);
    };
    const auto rep_a = nn::grad_check(p_params, actor_eval, actor_grads, kEps, 0, rng);
    cases.push_back({"sac-actor-loss", rep_a.max_rel_error, 1e-4, rep_a.max_rel_error < 1e-4});
  }

  return cases;
}

int print_grad_check_suite(std::ostream& out, uint64_t seed) {
  int failures = 0;
  for (const auto& c : run_grad_check_suite(seed)) {
    out << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << ": max rel error " << c.max_rel_error
        << " (tolerance " << c.tolerance << ")\n";
    if (!c.passed) ++failures;
  }
  return failures;
}

}  // namespace pih
