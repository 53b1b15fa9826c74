#pragma once

#include <cmath>
#include <cstdint>

namespace csdecay {

// Counter-based generator: output i is a pure function of (seed, i), built
// from the splitmix64 output mix. Streams can be split by deriving child
// seeds, which keeps parallel Monte Carlo batches reproducible regardless
// of scheduling.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

  // Child stream for batch/worker `index`.
  static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return mix(seed ^ mix(index + 1));
  }

  std::uint64_t next_u64() { return mix(seed_ + (++counter_) * 0x9e3779b97f4a7c15ull); }

  // Uniform in (0,1); never returns 0, so log() is safe.
  double next_uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller. Draws are paired; the cached second
  // value preserves the counter sequence semantics for fixed seeds.
  double next_normal() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    cached_ = r * std::sin(theta);
    has_cached_ = true;
    return r * std::cos(theta);
  }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace csdecay
