#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace lcadm {

// Deterministic uniform generator. Values are derived from the raw mt19937_64
// stream rather than std:: distributions, so sequences are identical across
// standard-library implementations.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  double log_uniform(double a, double b) {
    return a * std::exp(uniform() * std::log(b / a));
  }

  int integer(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

private:
  std::mt19937_64 gen_;
};

}  // namespace lcadm
