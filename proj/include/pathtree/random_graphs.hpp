#pragma once

#include <cstddef>
#include <cstdint>

#include "pathtree/combinatorics.hpp"
#include "pathtree/graph.hpp"
#include "pathtree/rng.hpp"

namespace pathtree {

/// Above this node count the samplers switch from per-pair Bernoulli draws
/// to geometric skipping. Both produce the same distribution.
inline constexpr std::size_t kDensePairSamplingLimit = 2000;

/// Undirected unit-weight Chung-Lu realization: pair {i,j} with probability
/// d_i d_j / S, self-loop at i with probability min(1, d_i^2 / S).
/// Throws InadmissibleSequence when d_max^2 > S.
Graph sample_chung_lu(const DegreeSequence& seq, RngSeed seed);

/// G(n, p) with p = avg_degree / (n - 1), unit weights, no self-loops.
Graph sample_erdos_renyi(std::size_t n, double avg_degree, RngSeed seed);

struct McmcConfig {
  std::size_t n = 800;
  double target_avg = 8.0;
  double target_ratio = 12.0;   // desired S2/S
  std::size_t hub_count = 4;    // entries pinned to sqrt(S)
  double tolerance = 1e-3;      // relative |S2/S - target|
  std::uint64_t max_iters = 20'000'000;
  double min_degree = 1.0;
};

/// Lowest S2/S reachable under `cfg` (every non-hub at the same degree).
double mcmc_min_ratio(const McmcConfig& cfg);
/// Highest S2/S reachable under `cfg` (non-hubs packed at sqrt(S)).
double mcmc_max_ratio(const McmcConfig& cfg);

/// Random expected-degree sequence with fixed sum n * target_avg, pinned hubs
/// and S2/S within tolerance of the target. Mass moves between non-hub
/// entries are accepted only when they bring S2/S strictly closer to the
/// target. Throws InfeasibleConfig or TargetUnreachable.
DegreeSequence mcmc_degree_sequence(const McmcConfig& cfg, RngSeed seed);

/// Checks every output constraint of `mcmc_degree_sequence` on `seq`.
bool satisfies(const McmcConfig& cfg, const DegreeSequence& seq);

}  // namespace pathtree
