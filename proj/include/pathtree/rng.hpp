#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace pathtree {

/// Seed plus stream id; (seed, stream) fully determines every draw.
struct RngSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  [[nodiscard]] RngSeed substream(std::uint64_t id) const;
};

/// mt19937_64 seeded through splitmix64. The uniform conversions below are
/// written out instead of using <random> distributions, whose output is
/// implementation-defined, so samples are identical across toolchains.
class Rng {
 public:
  explicit Rng(RngSeed seed);

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform in (0, 1]; safe to take the log of.
  double uniform_open_zero() { return 1.0 - uniform(); }

  bool bernoulli(double p) { return uniform() < p; }

  /// Uniform integer in [0, n) by rejection (n > 0).
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace pathtree
