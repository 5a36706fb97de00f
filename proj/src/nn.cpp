#include "pih/nn.hpp"

#include <algorithm>

namespace pih::nn {

GradCheckReport grad_check(std::vector<ParamRef<double>>& params,
                           const std::function<double()>& eval,
                           const std::function<void()>& compute_grads, double eps,
                           int max_probes_per_tensor, Rng& rng) {
  compute_grads();
  std::vector<Mat<double>> analytic;
  analytic.reserve(params.size());
  for (auto& p : params) analytic.push_back(*p.grad);

  GradCheckReport rep;
  for (size_t pi = 0; pi < params.size(); ++pi) {
    Mat<double>& value = *params[pi].value;
    const Eigen::Index total = value.size();
    std::vector<Eigen::Index> probes;
    if (max_probes_per_tensor <= 0 || total <= max_probes_per_tensor) {
      probes.resize(static_cast<size_t>(total));
      for (Eigen::Index i = 0; i < total; ++i) probes[static_cast<size_t>(i)] = i;
    } else {
      for (int i = 0; i < max_probes_per_tensor; ++i)
        probes.push_back(rng.uniform_int(0, static_cast<int>(total) - 1));
    }
    for (Eigen::Index idx : probes) {
      const double save = value(idx);
      value(idx) = save + eps;
      const double fp = eval();
      value(idx) = save - eps;
      const double fm = eval();
      value(idx) = save;
      const double fd = (fp - fm) / (2.0 * eps);
      const double an = analytic[pi](idx);
      const double denom = std::max({std::abs(fd), std::abs(an), 1e-3});
      const double rel = std::abs(fd - an) / denom;
      if (rel > rep.max_rel_error) {
        rep.max_rel_error = rel;
        rep.worst_param = params[pi].name;
        rep.worst_index = static_cast<int>(idx);
      }
    }
  }
  return rep;
}

}  // namespace pih::nn
