#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pih/rng.hpp"

namespace pih::nn {

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using RowVec = Eigen::Matrix<S, 1, Eigen::Dynamic>;

enum class Act { kLinear, kRelu, kTanh };

/// Named handle onto one parameter tensor and its gradient accumulator.
template <class S>
struct ParamRef {
  std::string name;
  Mat<S>* value;
  Mat<S>* grad;
};

template <class S>
inline S relu(S x) {
  return x > S(0) ? x : S(0);
}

template <class S>
inline S softplus(S x) {
  const S ax = x > S(0) ? x : -x;
  return std::log1p(std::exp(-ax)) + (x > S(0) ? x : S(0));
}

/// Fully connected layer on column-sample batches: y = act(W x + b).
template <class S>
struct Dense {
  Mat<S> W, b, gW, gb;
  Act act = Act::kLinear;
  Mat<S> x_, z_;  // forward cache

  void init(int in, int out, Act a, Rng& rng) {
    act = a;
    W.resize(out, in);
    const double s = std::sqrt(1.0 / in);
    for (int c = 0; c < in; ++c)
      for (int r = 0; r < out; ++r) W(r, c) = static_cast<S>(rng.uniform(-s, s));
    b = Mat<S>::Zero(out, 1);
    gW = Mat<S>::Zero(out, in);
    gb = Mat<S>::Zero(out, 1);
  }

  Mat<S> forward(const Mat<S>& x) {
    if (x.rows() != W.cols()) throw std::invalid_argument("Dense: input row mismatch");
    x_ = x;
    z_ = (W * x).colwise() + b.col(0);
    switch (act) {
      case Act::kLinear: return z_;
      case Act::kRelu: return z_.unaryExpr([](S v) { return relu(v); });
      case Act::kTanh: return z_.unaryExpr([](S v) { return std::tanh(v); });
    }
    return z_;
  }

  Mat<S> backward(const Mat<S>& dy) {
    Mat<S> dz;
    switch (act) {
      case Act::kLinear: dz = dy; break;
      case Act::kRelu:
        dz = dy.cwiseProduct(z_.unaryExpr([](S v) { return v > S(0) ? S(1) : S(0); }));
        break;
      case Act::kTanh: {
        Mat<S> t = z_.unaryExpr([](S v) { return std::tanh(v); });
        dz = dy.cwiseProduct(Mat<S>::Ones(t.rows(), t.cols()) - t.cwiseProduct(t));
        break;
      }
    }
    gW += dz * x_.transpose();
    gb += dz.rowwise().sum();
    return W.transpose() * dz;
  }

  void collect(const std::string& prefix, std::vector<ParamRef<S>>& out) {
    out.push_back({prefix + ".W", &W, &gW});
    out.push_back({prefix + ".b", &b, &gb});
  }
};

/// Dilated causal 1-D convolution over time-series batches laid out as
/// (channels x T*N), column n*T + t. Output at step t only reads steps <= t.
template <class S>
struct CausalConv1d {
  int in_ch = 0, out_ch = 0, kernel = 0, dilation = 1;
  Mat<S> W, b, gW, gb;  // W: out_ch x (in_ch*kernel)
  Mat<S> cols_;
  Eigen::Index T_ = 0, N_ = 0;

  void init(int in, int out, int k, int d, Rng& rng) {
    in_ch = in;
    out_ch = out;
    kernel = k;
    dilation = d;
    W.resize(out, in * k);
    const double s = std::sqrt(1.0 / (in * k));
    for (int c = 0; c < W.cols(); ++c)
      for (int r = 0; r < W.rows(); ++r) W(r, c) = static_cast<S>(rng.uniform(-s, s));
    b = Mat<S>::Zero(out, 1);
    gW = Mat<S>::Zero(out, in * k);
    gb = Mat<S>::Zero(out, 1);
  }

  Mat<S> forward(const Mat<S>& x, Eigen::Index T) {
    if (x.rows() != in_ch) throw std::invalid_argument("CausalConv1d: channel mismatch");
    if (T <= 0 || x.cols() % T != 0) throw std::invalid_argument("CausalConv1d: bad series length");
    T_ = T;
    N_ = x.cols() / T;
    cols_ = Mat<S>::Zero(in_ch * kernel, x.cols());
    for (Eigen::Index n = 0; n < N_; ++n) {
      for (Eigen::Index t = 0; t < T_; ++t) {
        const Eigen::Index c = n * T_ + t;
        for (int j = 0; j < kernel; ++j) {
          const Eigen::Index src = t - static_cast<Eigen::Index>(dilation) * (kernel - 1 - j);
          if (src >= 0) cols_.block(j * in_ch, c, in_ch, 1) = x.block(0, n * T_ + src, in_ch, 1);
        }
      }
    }
    return (W * cols_).colwise() + b.col(0);
  }

  Mat<S> backward(const Mat<S>& dy) {
    gW += dy * cols_.transpose();
    gb += dy.rowwise().sum();
    const Mat<S> dcols = W.transpose() * dy;
    Mat<S> dx = Mat<S>::Zero(in_ch, dy.cols());
    for (Eigen::Index n = 0; n < N_; ++n) {
      for (Eigen::Index t = 0; t < T_; ++t) {
        const Eigen::Index c = n * T_ + t;
        for (int j = 0; j < kernel; ++j) {
          const Eigen::Index src = t - static_cast<Eigen::Index>(dilation) * (kernel - 1 - j);
          if (src >= 0) dx.block(0, n * T_ + src, in_ch, 1) += dcols.block(j * in_ch, c, in_ch, 1);
        }
      }
    }
    return dx;
  }

  void collect(const std::string& prefix, std::vector<ParamRef<S>>& out) {
    out.push_back({prefix + ".W", &W, &gW});
    out.push_back({prefix + ".b", &b, &gb});
  }
};

/// One TCN block: y = relu(conv(x) + skip(x)), with a 1x1 projection skip
/// when channel counts differ.
template <class S>
struct TcnBlock {
  CausalConv1d<S> conv;
  Dense<S> proj;
  bool has_proj = false;
  Mat<S> z_;

  void init(int in, int out, int k, int d, Rng& rng) {
    conv.init(in, out, k, d, rng);
    has_proj = (in != out);
    if (has_proj) proj.init(in, out, Act::kLinear, rng);
  }

  Mat<S> forward(const Mat<S>& x, Eigen::Index T) {
    z_ = conv.forward(x, T);
    if (has_proj)
      z_ += proj.forward(x);
    else
      z_ += x;
    return z_.unaryExpr([](S v) { return relu(v); });
  }

  Mat<S> backward(const Mat<S>& dy) {
    const Mat<S> dz =
        dy.cwiseProduct(z_.unaryExpr([](S v) { return v > S(0) ? S(1) : S(0); }));
    Mat<S> dx = conv.backward(dz);
    if (has_proj)
      dx += proj.backward(dz);
    else
      dx += dz;
    return dx;
  }

  void collect(const std::string& prefix, std::vector<ParamRef<S>>& out) {
    conv.collect(prefix + ".conv", out);
    if (has_proj) proj.collect(prefix + ".proj", out);
  }
};

/// TCN stack plus a linear projection of the final-step features.
template <class S>
struct TcnEncoder {
  std::vector<TcnBlock<S>> blocks;
  Dense<S> out_proj;
  Eigen::Index T = 0, N_ = 0;
  int channels = 0;

  void init(int in_ch, int ch, int feat, int kernel, const std::vector<int>& dilations,
            Eigen::Index window_len, Rng& rng) {
    T = window_len;
    channels = ch;
    blocks.clear();
    int prev = in_ch;
    for (int d : dilations) {
      blocks.emplace_back();
      blocks.back().init(prev, ch, kernel, d, rng);
      prev = ch;
    }
    out_proj.init(ch, feat, Act::kLinear, rng);
  }

  Mat<S> forward(const Mat<S>& window) {
    if (window.cols() % T != 0) throw std::invalid_argument("TcnEncoder: bad window length");
    N_ = window.cols() / T;
    Mat<S> h = window;
    for (auto& b : blocks) h = b.forward(h, T);
    Mat<S> last(channels, N_);
    for (Eigen::Index n = 0; n < N_; ++n) last.col(n) = h.col(n * T + T - 1);
    return out_proj.forward(last);
  }

  Mat<S> backward(const Mat<S>& dfeat) {
    const Mat<S> dlast = out_proj.backward(dfeat);
    Mat<S> dh = Mat<S>::Zero(channels, N_ * T);
    for (Eigen::Index n = 0; n < N_; ++n) dh.col(n * T + T - 1) = dlast.col(n);
    for (auto it = blocks.rbegin(); it != blocks.rend(); ++it) dh = it->backward(dh);
    return dh;
  }

  void collect(const std::string& prefix, std::vector<ParamRef<S>>& out) {
    for (size_t i = 0; i < blocks.size(); ++i)
      blocks[i].collect(prefix + ".block" + std::to_string(i), out);
    out_proj.collect(prefix + ".out_proj", out);
  }
};

struct NnConfig {
  int proprio_dim = 37;
  int action_dim = 24;
  int window_len = 12;
  int window_channels = 6;
  int proprio_hidden = 64;
  int feature_dim = 32;  // width of each encoder output
  int head_hidden = 64;
  int tcn_channels = 32;
  int tcn_kernel = 3;
  std::vector<int> tcn_dilations{1, 2};
  bool use_tcn = true;  // false: flat 2-layer dense trunk over all inputs
  double logstd_min = -20.0;
  double logstd_max = 2.0;

  int window_flat() const { return window_len * window_channels; }
};

/// Stacks the (channels x T*N) window batch into flat (T*channels x N)
/// columns, time-major.
template <class S>
Mat<S> flatten_window(const Mat<S>& window, Eigen::Index T) {
  const Eigen::Index ch = window.rows();
  const Eigen::Index n = window.cols() / T;
  Mat<S> out(ch * T, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index t = 0; t < T; ++t) out.block(t * ch, i, ch, 1) = window.col(i * T + t);
  return out;
}

template <class S>
Mat<S> unflatten_window(const Mat<S>& flat, Eigen::Index T, Eigen::Index ch) {
  const Eigen::Index n = flat.cols();
  Mat<S> out(ch, T * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index t = 0; t < T; ++t) out.col(i * T + t) = flat.block(t * ch, i, ch, 1);
  return out;
}

/// Two-branch state encoder: dense proprioception path and TCN force-torque
/// path, concatenated into a 2*feature_dim vector per sample.
template <class S>
struct Encoders {
  NnConfig cfg;
  Dense<S> pro1, pro2;
  TcnEncoder<S> tcn;

  void init(const NnConfig& c, Rng& rng) {
    cfg = c;
    pro1.init(c.proprio_dim, c.proprio_hidden, Act::kRelu, rng);
    pro2.init(c.proprio_hidden, c.feature_dim, Act::kRelu, rng);
    tcn.init(c.window_channels, c.tcn_channels, c.feature_dim, c.tcn_kernel, c.tcn_dilations,
             c.window_len, rng);
  }

  Mat<S> forward(const Mat<S>& proprio, const Mat<S>& window) {
    const Mat<S> fp = pro2.forward(pro1.forward(proprio));
    const Mat<S> ft = tcn.forward(window);
    Mat<S> feat(fp.rows() + ft.rows(), fp.cols());
    feat.topRows(fp.rows()) = fp;
    feat.bottomRows(ft.rows()) = ft;
    return feat;
  }

  std::pair<Mat<S>, Mat<S>> backward(const Mat<S>& dfeat) {
    const Mat<S> dfp = dfeat.topRows(cfg.feature_dim);
    const Mat<S> dft = dfeat.bottomRows(cfg.feature_dim);
    Mat<S> dproprio = pro1.backward(pro2.backward(dfp));
    Mat<S> dwindow = tcn.backward(dft);
    return {dproprio, dwindow};
  }

  void collect(const std::string& prefix, std::vector<ParamRef<S>>& out) {
    pro1.collect(prefix + ".pro1", out);
    pro2.collect(prefix + ".pro2", out);
    tcn.collect(prefix + ".tcn", out);
  }
};

/// Squashed-gaussian policy: multimodal encoders into a two-layer head
/// emitting means and log standard deviations for the 24 actions.
template <class S>
struct PolicyNet {
  NnConfig cfg;
  Encoders<S> enc;
  Dense<S> h1, h2;
  Dense<S> fc1, fc2;  // dense-trunk variant

  void init(const NnConfig& c, Rng& rng) {
    cfg = c;
    if (c.use_tcn) {
      enc.init(c, rng);
      h1.init(2 * c.feature_dim, c.head_hidden, Act::kRelu, rng);
      h2.init(c.head_hidden, 2 * c.action_dim, Act::kLinear, rng);
    } else {
      fc1.init(c.proprio_dim + c.window_flat(), c.proprio_hidden, Act::kRelu, rng);
      fc2.init(c.proprio_hidden, c.head_hidden, Act::kRelu, rng);
      h2.init(c.head_hidden, 2 * c.action_dim, Act::kLinear, rng);
    }
  }

  /// Returns the raw head output (2*action_dim x N): means stacked over
  /// unclamped log-stds.
  Mat<S> forward(const Mat<S>& proprio, const Mat<S>& window) {
    if (cfg.use_tcn) return h2.forward(h1.forward(enc.forward(proprio, window)));
    const Mat<S> flat = flatten_window(window, cfg.window_len);
    Mat<S> x(proprio.rows() + flat.rows(), proprio.cols());
    x.topRows(proprio.rows()) = proprio;
    x.bottomRows(flat.rows()) = flat;
    return h2.forward(fc2.forward(fc1.forward(x)));
  }

  std::pair<Mat<S>, Mat<S>> backward(const Mat<S>& dout) {
    if (cfg.use_tcn) return enc.backward(h1.backward(h2.backward(dout)));
    const Mat<S> dx = fc1.backward(fc2.backward(h2.backward(dout)));
    return {dx.topRows(cfg.proprio_dim),
            unflatten_window(Mat<S>(dx.bottomRows(cfg.window_flat())), cfg.window_len,
                             cfg.window_channels)};
  }

  void collect(const std::string& prefix, std::vector<ParamRef<S>>& out) {
    if (cfg.use_tcn) {
      enc.collect(prefix + ".enc", out);
      h1.collect(prefix + ".h1", out);
      h2.collect(prefix + ".h2", out);
    } else {
      fc1.collect(prefix + ".fc1", out);
      fc2.collect(prefix + ".fc2", out);
      h2.collect(prefix + ".h2", out);
    }
  }
};

/// Intermediate values of one squashed-gaussian sampling pass, kept so the
/// backward pass can run through the reparameterized sample.
template <class S>
struct PolicySample {
  Mat<S> mu, logstd, pre, action;  // action_dim x N
  RowVec<S> logp;                  // 1 x N
  Mat<S> eps;
  Mat<S> clamp_mask;  // 1 inside the logstd clamp, 0 outside
};

template <class S>
PolicySample<S> policy_sample_with_eps(PolicyNet<S>& net, const Mat<S>& proprio,
                                       const Mat<S>& window, const Mat<S>& eps) {
  const Mat<S> out = net.forward(proprio, window);
  const int ad = net.cfg.action_dim;
  PolicySample<S> s;
  s.eps = eps;
  s.mu = out.topRows(ad);
  const Mat<S> raw = out.bottomRows(ad);
  const S lo = static_cast<S>(net.cfg.logstd_min), hi = static_cast<S>(net.cfg.logstd_max);
  s.logstd = raw.unaryExpr([lo, hi](S v) { return std::clamp(v, lo, hi); });
  s.clamp_mask = raw.unaryExpr([lo, hi](S v) { return (v > lo && v < hi) ? S(1) : S(0); });
  const Mat<S> sigma = s.logstd.unaryExpr([](S v) { return std::exp(v); });
  s.pre = s.mu + sigma.cwiseProduct(eps);
  s.action = s.pre.unaryExpr([](S v) { return std::tanh(v); });
  if (!s.action.allFinite())
    throw std::runtime_error("policy_sample: non-finite network output");

  // log N(pre; mu, sigma) - log(1 - tanh(pre)^2), accumulated over actions.
  // The squash correction uses the stable form 2*(log2 - x - softplus(-2x)).
  const S log2pi = static_cast<S>(1.8378770664093454836);
  const S ln2 = static_cast<S>(0.6931471805599453094);
  s.logp = RowVec<S>::Zero(s.action.cols());
  for (Eigen::Index n = 0; n < s.action.cols(); ++n) {
    S acc = S(0);
    for (int i = 0; i < ad; ++i) {
      const S e = eps(i, n);
      acc += S(-0.5) * (e * e + log2pi) - s.logstd(i, n);
      acc -= S(2) * (ln2 - s.pre(i, n) - softplus(S(-2) * s.pre(i, n)));
    }
    s.logp(n) = acc;
  }
  return s;
}

/// Draws eps from rng, then samples. Deterministic mode squashes the mean.
template <class S>
PolicySample<S> policy_sample(PolicyNet<S>& net, const Mat<S>& proprio, const Mat<S>& window,
                              Rng& rng, bool deterministic = false) {
  const int ad = net.cfg.action_dim;
  Mat<S> eps = Mat<S>::Zero(ad, proprio.cols());
  if (!deterministic)
    for (Eigen::Index n = 0; n < eps.cols(); ++n)
      for (int i = 0; i < ad; ++i) eps(i, n) = static_cast<S>(rng.gaussian());
  return policy_sample_with_eps(net, proprio, window, eps);
}

/// Backpropagates d(loss)/d(action) and d(loss)/d(logp) through the sample
/// into the policy parameters. Returns input gradients.
template <class S>
std::pair<Mat<S>, Mat<S>> policy_sample_backward(PolicyNet<S>& net, const PolicySample<S>& s,
                                                 const Mat<S>& daction,
                                                 const RowVec<S>& dlogp) {
  const int ad = net.cfg.action_dim;
  const Eigen::Index n = s.action.cols();
  Mat<S> dpre(ad, n), dlogstd(ad, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    for (int i = 0; i < ad; ++i) {
      const S a = s.action(i, c);
      S dp = daction(i, c) * (S(1) - a * a);  // through tanh
      dp += dlogp(c) * S(2) * a;              // squash correction term
      dpre(i, c) = dp;
      const S sig_eps = s.pre(i, c) - s.mu(i, c);
      dlogstd(i, c) = (dp * sig_eps - dlogp(c)) * s.clamp_mask(i, c);
    }
  }
  Mat<S> dout(2 * ad, n);
  dout.topRows(ad) = dpre;
  dout.bottomRows(ad) = dlogstd;
  return net.backward(dout);
}

/// Twin-critic body: the same two encoders with the action appended ahead of
/// the head; scalar output per sample.
template <class S>
struct QNet {
  NnConfig cfg;
  Encoders<S> enc;
  Dense<S> h1, h2;
  Dense<S> fc1, fc2;

  void init(const NnConfig& c, Rng& rng) {
    cfg = c;
    if (c.use_tcn) {
      enc.init(c, rng);
      h1.init(2 * c.feature_dim + c.action_dim, c.head_hidden, Act::kRelu, rng);
      h2.init(c.head_hidden, 1, Act::kLinear, rng);
    } else {
      fc1.init(c.proprio_dim + c.window_flat() + c.action_dim, c.proprio_hidden, Act::kRelu, rng);
      fc2.init(c.proprio_hidden, c.head_hidden, Act::kRelu, rng);
      h2.init(c.head_hidden, 1, Act::kLinear, rng);
    }
  }

  RowVec<S> forward(const Mat<S>& proprio, const Mat<S>& window, const Mat<S>& action) {
    Mat<S> y;
    if (cfg.use_tcn) {
      const Mat<S> feat = enc.forward(proprio, window);
      Mat<S> x(feat.rows() + action.rows(), feat.cols());
      x.topRows(feat.rows()) = feat;
      x.bottomRows(action.rows()) = action;
      y = h2.forward(h1.forward(x));
    } else {
      const Mat<S> flat = flatten_window(window, cfg.window_len);
      Mat<S> x(proprio.rows() + flat.rows() + action.rows(), proprio.cols());
      x.topRows(proprio.rows()) = proprio;
      x.middleRows(proprio.rows(), flat.rows()) = flat;
      x.bottomRows(action.rows()) = action;
      y = h2.forward(fc2.forward(fc1.forward(x)));
    }
    return y.row(0);
  }

  struct InputGrads {
    Mat<S> dproprio, dwindow, daction;
  };

  InputGrads backward(const RowVec<S>& dq) {
    Mat<S> dy(1, dq.cols());
    dy.row(0) = dq;
    InputGrads g;
    if (cfg.use_tcn) {
      const Mat<S> dx = h1.backward(h2.backward(dy));
      const Mat<S> dfeat = dx.topRows(2 * cfg.feature_dim);
      g.daction = dx.bottomRows(cfg.action_dim);
      auto [dp, dw] = enc.backward(dfeat);
      g.dproprio = dp;
      g.dwindow = dw;
    } else {
      const Mat<S> dx = fc1.backward(fc2.backward(h2.backward(dy)));
      g.dproprio = dx.topRows(cfg.proprio_dim);
      g.dwindow = unflatten_window(Mat<S>(dx.middleRows(cfg.proprio_dim, cfg.window_flat())),
                                   cfg.window_len, cfg.window_channels);
      g.daction = dx.bottomRows(cfg.action_dim);
    }
    return g;
  }

  void collect(const std::string& prefix, std::vector<ParamRef<S>>& out) {
    if (cfg.use_tcn) {
      enc.collect(prefix + ".enc", out);
      h1.collect(prefix + ".h1", out);
      h2.collect(prefix + ".h2", out);
    } else {
      fc1.collect(prefix + ".fc1", out);
      fc2.collect(prefix + ".fc2", out);
      h2.collect(prefix + ".h2", out);
    }
  }
};

template <class S>
void zero_grads(std::vector<ParamRef<S>>& params) {
  for (auto& p : params) p.grad->setZero();
}

/// target <- rho*target + (1-rho)*online, element-wise over matched tensors.
template <class S>
void polyak_update(std::vector<ParamRef<S>>& target, std::vector<ParamRef<S>>& online,
                   double rho) {
  if (target.size() != online.size())
    throw std::invalid_argument("polyak_update: parameter count mismatch");
  for (size_t i = 0; i < target.size(); ++i) {
    if (target[i].value->rows() != online[i].value->rows() ||
        target[i].value->cols() != online[i].value->cols())
      throw std::invalid_argument("polyak_update: shape mismatch at " + target[i].name);
    *target[i].value =
        static_cast<S>(rho) * (*target[i].value) + static_cast<S>(1.0 - rho) * (*online[i].value);
  }
}

template <class S>
void copy_params(std::vector<ParamRef<S>>& dst, std::vector<ParamRef<S>>& src) {
  polyak_update(dst, src, 0.0);
}

/// Adam with bias correction; moment buffers are indexed by the parameter
/// collection order, which is stable for a fixed architecture.
template <class S>
struct Adam {
  double lr = 3e-4, beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
  long long t = 0;
  std::vector<Mat<S>> m, v;

  void step(std::vector<ParamRef<S>>& params) {
    if (m.empty()) {
      for (auto& p : params) {
        m.push_back(Mat<S>::Zero(p.value->rows(), p.value->cols()));
        v.push_back(Mat<S>::Zero(p.value->rows(), p.value->cols()));
      }
    }
    ++t;
    const S c1 = static_cast<S>(1.0 / (1.0 - std::pow(beta1, static_cast<double>(t))));
    const S c2 = static_cast<S>(1.0 / (1.0 - std::pow(beta2, static_cast<double>(t))));
    for (size_t i = 0; i < params.size(); ++i) {
      const Mat<S>& g = *params[i].grad;
      m[i] = static_cast<S>(beta1) * m[i] + static_cast<S>(1.0 - beta1) * g;
      v[i] = static_cast<S>(beta2) * v[i] + static_cast<S>(1.0 - beta2) * g.cwiseProduct(g);
      Mat<S> denom = (v[i] * c2).cwiseSqrt().array() + static_cast<S>(eps);
      *params[i].value -= static_cast<S>(lr) * (m[i] * c1).cwiseQuotient(denom);
    }
  }
};

struct GradCheckReport {
  double max_rel_error = 0.0;
  std::string worst_param;
  int worst_index = -1;
};

/// Central finite differences against analytic gradients for a scalar loss.
/// eval() recomputes the loss; compute_grads() zeroes and refills the grads.
/// Relative error uses max(|analytic|, |fd|, 1e-3) as denominator. Probes
/// every coefficient unless max_probes_per_tensor caps it (sampled via rng).
GradCheckReport grad_check(std::vector<ParamRef<double>>& params,
                           const std::function<double()>& eval,
                           const std::function<void()>& compute_grads, double eps,
                           int max_probes_per_tensor, Rng& rng);

}  // namespace pih::nn
