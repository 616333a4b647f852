#include "pathtree/rng.hpp"

namespace pathtree {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

RngSeed RngSeed::substream(std::uint64_t id) const {
  std::uint64_t state = stream ^ (id * 0xd1342543de82ef95ULL);
  return {seed, splitmix64(state)};
}

Rng::Rng(RngSeed seed) {
  std::uint64_t state = seed.seed;
  const std::uint64_t a = splitmix64(state);
  state ^= seed.stream;
  const std::uint64_t b = splitmix64(state);
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  engine_.seed(seq);
}

std::uint64_t Rng::below(std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

}  // namespace pathtree
