#include "pih/replay.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace pih {

namespace {

template <class T>
void write_pod(std::ostream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T read_pod(std::istream& in) {
  T v;
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw std::runtime_error("replay: truncated stream");
  return v;
}

void write_matf(std::ostream& out, const Eigen::MatrixXf& m) {
  write_pod(out, static_cast<int64_t>(m.rows()));
  write_pod(out, static_cast<int64_t>(m.cols()));
  out.write(reinterpret_cast<const char*>(m.data()),
            static_cast<std::streamsize>(sizeof(float) * m.size()));
}

Eigen::MatrixXf read_matf(std::istream& in) {
  const int64_t r = read_pod<int64_t>(in);
  const int64_t c = read_pod<int64_t>(in);
  Eigen::MatrixXf m(r, c);
  in.read(reinterpret_cast<char*>(m.data()),
          static_cast<std::streamsize>(sizeof(float) * m.size()));
  if (!in) throw std::runtime_error("replay: truncated matrix");
  return m;
}

void write_vecf(std::ostream& out, const Eigen::VectorXf& v) {
  write_pod(out, static_cast<int64_t>(v.size()));
  out.write(reinterpret_cast<const char*>(v.data()),
            static_cast<std::streamsize>(sizeof(float) * v.size()));
}

Eigen::VectorXf read_vecf(std::istream& in) {
  const int64_t n = read_pod<int64_t>(in);
  Eigen::VectorXf v(n);
  in.read(reinterpret_cast<char*>(v.data()),
          static_cast<std::streamsize>(sizeof(float) * v.size()));
  if (!in) throw std::runtime_error("replay: truncated vector");
  return v;
}

}  // namespace

SumTree::SumTree(int64_t capacity) : capacity_(capacity) {
  if (capacity <= 0) throw std::invalid_argument("SumTree: capacity must be > 0");
  base_ = 1;
  while (base_ < capacity) base_ <<= 1;
  nodes_.assign(static_cast<size_t>(2 * base_), 0.0);
}

void SumTree::set(int64_t idx, double value) {
  if (idx < 0 || idx >= capacity_) throw std::out_of_range("SumTree: index out of range");
  int64_t node = base_ + idx;
  nodes_[static_cast<size_t>(node)] = value;
  node >>= 1;
  while (node >= 1) {
    nodes_[static_cast<size_t>(node)] =
        nodes_[static_cast<size_t>(2 * node)] + nodes_[static_cast<size_t>(2 * node + 1)];
    node >>= 1;
  }
}

int64_t SumTree::find_prefix(double mass) const {
  int64_t node = 1;
  while (node < base_) {
    const double left = nodes_[static_cast<size_t>(2 * node)];
    if (mass < left) {
      node = 2 * node;
    } else {
      mass -= left;
      node = 2 * node + 1;
    }
  }
  int64_t idx = node - base_;
  if (idx >= capacity_) idx = capacity_ - 1;
  return idx;
}

double SumTree::leaf_sum() const {
  double s = 0.0;
  for (int64_t i = 0; i < capacity_; ++i) s += nodes_[static_cast<size_t>(base_ + i)];
  return s;
}

ReplayBuffer::ReplayBuffer(int64_t capacity, double per_alpha)
    : capacity_(capacity), per_alpha_(per_alpha), tree_(capacity) {
  if (capacity <= 0) throw std::invalid_argument("ReplayBuffer: capacity must be > 0");
  if (per_alpha < 0.0) throw std::invalid_argument("ReplayBuffer: alpha must be >= 0");
}

void ReplayBuffer::put(const Transition& t, double priority) {
  if (!storage_.empty()) {
    const Transition& ref = storage_.front();
    if (t.proprio.size() != ref.proprio.size() || t.action.size() != ref.action.size() ||
        t.window.rows() != ref.window.rows() || t.window.cols() != ref.window.cols() ||
        t.next_proprio.size() != ref.next_proprio.size() ||
        t.next_window.rows() != ref.next_window.rows() ||
        t.next_window.cols() != ref.next_window.cols())
      throw std::invalid_argument("ReplayBuffer: transition shape mismatch");
  }
  if (!std::isfinite(t.reward)) throw std::invalid_argument("ReplayBuffer: non-finite reward");

  if (size() < capacity_) {
    storage_.push_back(t);
    priorities_.push_back(priority);
  } else {
    storage_[static_cast<size_t>(next_)] = t;
    priorities_[static_cast<size_t>(next_)] = priority;
  }
  tree_.set(next_, std::pow(priority, per_alpha_));
  max_seen_priority_ = std::max(max_seen_priority_, priority);
  next_ = (next_ + 1) % capacity_;
}

void ReplayBuffer::insert(const Transition& t) { put(t, max_seen_priority_); }

void ReplayBuffer::insert(const Transition& t, double priority) {
  if (!(priority > 0.0)) throw std::invalid_argument("ReplayBuffer: priority must be > 0");
  put(t, priority);
}

std::optional<SampleResult> ReplayBuffer::sample(int64_t n, double beta, Rng& rng) const {
  if (size() < n || n <= 0) return std::nullopt;
  const double total = tree_.total();
  if (!(total > 0.0)) return std::nullopt;

  SampleResult res;
  res.indices.reserve(static_cast<size_t>(n));
  res.weights.reserve(static_cast<size_t>(n));
  const double N = static_cast<double>(size());
  double max_w = 0.0;
  for (int64_t i = 0; i < n; ++i) {
    const int64_t idx = tree_.find_prefix(rng.uniform() * total);
    const double p = tree_.get(idx) / total;
    const double w = std::pow(N * p, -beta);
    res.indices.push_back(idx);
    res.weights.push_back(w);
    max_w = std::max(max_w, w);
  }
  if (max_w > 0.0)
    for (double& w : res.weights) w /= max_w;
  return res;
}

void ReplayBuffer::update_priorities(const std::vector<int64_t>& indices,
                                     const std::vector<double>& priorities) {
  if (indices.size() != priorities.size())
    throw std::invalid_argument("update_priorities: size mismatch");
  for (size_t i = 0; i < indices.size(); ++i) {
    const double p = priorities[i];
    if (!(p > 0.0)) throw std::invalid_argument("update_priorities: priority must be > 0");
    priorities_[static_cast<size_t>(indices[i])] = p;
    tree_.set(indices[i], std::pow(p, per_alpha_));
    max_seen_priority_ = std::max(max_seen_priority_, p);
  }
}

void ReplayBuffer::save(std::ostream& out) const {
  write_pod(out, capacity_);
  write_pod(out, per_alpha_);
  write_pod(out, max_seen_priority_);
  write_pod(out, next_);
  write_pod(out, static_cast<int64_t>(storage_.size()));
  for (size_t i = 0; i < storage_.size(); ++i) {
    const Transition& t = storage_[i];
    write_vecf(out, t.proprio);
    write_matf(out, t.window);
    write_vecf(out, t.action);
    write_pod(out, t.reward);
    write_vecf(out, t.next_proprio);
    write_matf(out, t.next_window);
    write_pod(out, static_cast<uint8_t>(t.terminal));
    write_pod(out, static_cast<uint8_t>(t.done));
    write_pod(out, priorities_[i]);
  }
}

void ReplayBuffer::load(std::istream& in) {
  const int64_t cap = read_pod<int64_t>(in);
  if (cap != capacity_) throw std::runtime_error("replay: capacity mismatch on load");
  per_alpha_ = read_pod<double>(in);
  max_seen_priority_ = read_pod<double>(in);
  next_ = read_pod<int64_t>(in);
  const int64_t n = read_pod<int64_t>(in);
  storage_.clear();
  priorities_.clear();
  tree_ = SumTree(capacity_);
  for (int64_t i = 0; i < n; ++i) {
    Transition t;
    t.proprio = read_vecf(in);
    t.window = read_matf(in);
    t.action = read_vecf(in);
    t.reward = read_pod<float>(in);
    t.next_proprio = read_vecf(in);
    t.next_window = read_matf(in);
    t.terminal = read_pod<uint8_t>(in) != 0;
    t.done = read_pod<uint8_t>(in) != 0;
    const double p = read_pod<double>(in);
    storage_.push_back(std::move(t));
    priorities_.push_back(p);
    tree_.set(i, std::pow(p, per_alpha_));
  }
}

}  // namespace pih
