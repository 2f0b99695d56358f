#pragma once

#include <cstdint>
#include <random>

namespace slln {

/// SplitMix64 finalizer. Fixed forever: replication seeds depend on it.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Seed of replication `index` under `master_seed`.
constexpr std::uint64_t child_seed(std::uint64_t master_seed, std::uint64_t index) {
  return mix64(master_seed + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

/// Uniform stream on the open interval (0, 1) with 53-bit resolution. The
/// bit-to-double mapping is done here rather than through
/// std::uniform_real_distribution so output is identical across standard
/// libraries.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }
  std::uint64_t bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace slln
