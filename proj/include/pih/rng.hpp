#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace pih {

/// Seeded RNG with a serializable stream. Gaussian draws use Box-Muller
/// without caching the spare value, so a restored stream continues exactly
/// where the saved one stopped.
class Rng {
 public:
  explicit Rng(uint64_t seed = 0) : gen_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return (gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [lo, hi], both inclusive.
  int uniform_int(int lo, int hi) {
    const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(gen_() % span);
  }

  double gaussian() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
  }

  /// Zero-mean gaussian with the given sigma, rejected until |x| <= bound.
  double gaussian_trunc(double sigma, double bound) {
    if (sigma <= 0.0 || bound <= 0.0) return 0.0;
    for (;;) {
      const double x = sigma * gaussian();
      if (std::abs(x) <= bound) return x;
    }
  }

  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }

  uint64_t next_u64() { return gen_(); }

  std::string serialize() const;
  void deserialize(const std::string& s);

 private:
  std::mt19937_64 gen_;
};

}  // namespace pih
