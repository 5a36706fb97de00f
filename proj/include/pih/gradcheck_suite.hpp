#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pih {

struct GradCheckCase {
  std::string name;
  double max_rel_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// Finite-difference verification (64-bit, central differences, eps=1e-6)
/// of every layer type plus the full policy and SAC losses on small
/// randomized networks.
std::vector<GradCheckCase> run_grad_check_suite(uint64_t seed = 7);

/// Prints one line per case; returns the number of failures.
int print_grad_check_suite(std::ostream& out, uint64_t seed = 7);

}  // namespace pih
