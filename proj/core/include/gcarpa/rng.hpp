#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace gcarpa {

/// Counter-based SplitMix64 stream.
///
/// Output i of the stream with seed s is mix64(s + (i + 1) * 0x9E3779B97F4A7C15),
/// so a (seed, counter) pair fully determines every draw on every platform.
/// Normals use Box-Muller on two consecutive uniforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t counter() const { return counter_; }

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal.
  double normal();
  /// Uniform integer in [0, bound), bound > 0, without modulo bias.
  std::uint64_t uniform_index(std::uint64_t bound);
  /// k distinct indices from [0, n), in draw order (partial Fisher-Yates).
  std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k);

  /// Independent stream for sub-task `index` (e.g. one start of a sweep).
  static Rng derive(std::uint64_t seed, std::uint64_t index);

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t mix64(std::uint64_t z);

}  // namespace gcarpa
