#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace rewardlab {

/// SplitMix64 mixing step, used only to derive seeds.
constexpr uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Deterministic seed splitting: one root seed plus a stream id per purpose
/// and a running index within the stream. Every randomized component derives
/// its seed this way, so independent pieces never share a generator state.
constexpr uint64_t derive_seed(uint64_t root, uint64_t stream, uint64_t index) {
  return splitmix64(splitmix64(root + 0x9E3779B97F4A7C15ull * (stream + 1)) + index);
}

/// mt19937_64 has a standardized output sequence; converting the raw draws
/// ourselves (instead of going through std distributions) keeps results
/// bit-identical across standard-library implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in (0, 1]; safe as a log() argument.
  double next_open() { return 1.0 - next_double(); }

  /// Uniform integer in [0, n).
  int next_index(int n) {
    int k = static_cast<int>(next_double() * n);
    return k >= n ? n - 1 : k;
  }

  bool bernoulli(double p) { return next_double() < p; }

  /// Samples an index from an (unnormalized is fine) nonnegative weight row.
  int categorical(std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    double u = next_double() * total;
    double acc = 0.0;
    for (size_t i = 0; i + 1 < weights.size(); ++i) {
      acc += weights[i];
      if (u < acc) return static_cast<int>(i);
    }
    return static_cast<int>(weights.size()) - 1;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace rewardlab
