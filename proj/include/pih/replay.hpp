#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "pih/rng.hpp"

namespace pih {

/// One stored step. `terminal` is true only for genuine terminal endings
/// (success, collision); episodes cut by the step limit keep bootstrapping.
struct Transition {
  Eigen::VectorXf proprio;
  Eigen::MatrixXf window;  // channels x window_len
  Eigen::VectorXf action;
  float reward = 0.0f;
  Eigen::VectorXf next_proprio;
  Eigen::MatrixXf next_window;
  bool terminal = false;
  bool done = false;
};

/// Complete binary tree over leaf masses with exact subtree sums, O(log n)
/// update and prefix-mass lookup.
class SumTree {
 public:
  explicit SumTree(int64_t capacity);

  void set(int64_t idx, double value);
  double get(int64_t idx) const { return nodes_[static_cast<size_t>(base_ + idx)]; }
  double total() const { return nodes_[1]; }
  int64_t capacity() const { return capacity_; }

  /// Index of the leaf holding the given prefix mass in [0, total()).
  int64_t find_prefix(double mass) const;

  /// Recomputed sum over leaves, for consistency checks.
  double leaf_sum() const;

 private:
  int64_t capacity_;
  int64_t base_;  // first leaf slot
  std::vector<double> nodes_;
};

struct SampleResult {
  std::vector<int64_t> indices;
  std::vector<double> weights;  // importance weights, max-normalized
};

/// Ring storage with proportional prioritized sampling: leaf mass is
/// priority^alpha, importance weights are (N * P(i))^-beta.
class ReplayBuffer {
 public:
  ReplayBuffer(int64_t capacity, double per_alpha);

  /// Stores with the maximum priority seen so far (1 when empty).
  void insert(const Transition& t);
  /// Stores with an explicit priority; rejects priority <= 0.
  void insert(const Transition& t, double priority);

  /// Draws n independent proportional samples, or nullopt while size < n.
  std::optional<SampleResult> sample(int64_t n, double beta, Rng& rng) const;

  void update_priorities(const std::vector<int64_t>& indices,
                         const std::vector<double>& priorities);

  const Transition& at(int64_t idx) const { return storage_[static_cast<size_t>(idx)]; }
  double priority_at(int64_t idx) const { return priorities_[static_cast<size_t>(idx)]; }
  int64_t size() const { return static_cast<int64_t>(storage_.size()); }
  int64_t capacity() const { return capacity_; }
  double per_alpha() const { return per_alpha_; }
  double max_seen_priority() const { return max_seen_priority_; }
  const SumTree& tree() const { return tree_; }

  void save(std::ostream& out) const;
  void load(std::istream& in);

 private:
  void put(const Transition& t, double priority);

  int64_t capacity_;
  double per_alpha_;
  double max_seen_priority_ = 1.0;
  int64_t next_ = 0;  // ring insertion slot
  std::vector<Transition> storage_;
  std::vector<double> priorities_;  // raw, pre-exponent
  SumTree tree_;
};

}  // namespace pih
