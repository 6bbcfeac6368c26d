#pragma once

#include <cmath>
#include <cstdint>

namespace tnorms {

// Deterministic random stream (splitmix64 core, Box-Muller gaussians).
// All randomized routines derive their streams from a user seed plus a
// task index, so results are reproducible bit-for-bit across runs and
// independent of scheduling order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  // stream for task `index` under master `seed`
  static Rng derived(std::uint64_t seed, std::uint64_t index) {
    Rng r(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
    r.next_u64();
    return r;
  }

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in (0, 1]
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  int uniform_int(int n) {  // in [0, n)
    return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n));
  }

  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace tnorms
