#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "pathtree/graph.hpp"
#include "pathtree/path.hpp"
#include "pathtree/rng.hpp"

namespace pathtree {

/// Box-plot summary. Quartiles use linear interpolation between order
/// statistics at position q * (count - 1).
struct SummaryStats {
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  double mean = 0.0;
  std::size_t count = 0;
};

SummaryStats summarize(std::span<const double> samples);

/// Set of deleted edges; undirected sets identify (u,v) with (v,u).
class EdgeSet {
 public:
  explicit EdgeSet(bool directed = false) : directed_(directed) {}
  void insert(NodeId u, NodeId v) { keys_.insert(key(u, v)); }
  [[nodiscard]] bool contains(NodeId u, NodeId v) const { return keys_.count(key(u, v)) != 0; }
  [[nodiscard]] std::size_t size() const noexcept { return keys_.size(); }

 private:
  [[nodiscard]] std::uint64_t key(NodeId u, NodeId v) const {
    if (!directed_ && u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | v;
  }
  bool directed_;
  std::unordered_set<std::uint64_t> keys_;
};

/// Fraction of paths with no edge in `deleted`. Throws EmptyCollection.
double surviving_fraction(std::span<const Path> paths, const EdgeSet& deleted);

// ---------------------------------------------------------------------------
// Ratio of walks to simple paths on Chung-Lu graphs.

struct RatioConfig {
  std::size_t n = 800;
  double avg_degree = 8.0;
  std::vector<double> ratio_targets{12.0, 14.0, 16.0};
  std::size_t sequences_per_target = 10;
  std::size_t pairs_per_graph = 10;
  std::size_t min_pair_degree = 5;
  std::vector<int> offsets{2, 3, 4};
  std::uint64_t seed = 0;
  std::size_t hub_count = 4;
  double mcmc_tolerance = 1e-3;
  std::uint64_t max_paths = 20'000'000;
  std::uint64_t max_tree_nodes = 100'000'000;
  std::size_t jobs = 1;
};

struct RatioSample {
  double ratio_target = 0.0;
  int offset = 0;
  std::size_t sequence_id = 0;
  std::size_t pair_id = 0;
  NodeId source = 0;
  NodeId target = 0;
  std::uint64_t n_walks = 0;
  std::uint64_t n_simple = 0;
  double ratio = 0.0;      // n_walks / n_simple; only meaningful when status == "ok"
  std::string status;      // "ok", "no-simple", "budget"
};

struct RatioGroup {
  double ratio_target = 0.0;
  int offset = 0;
  SummaryStats stats;
  std::size_t skipped = 0;  // budget or zero-simple samples left out of stats
};

struct RatioReport {
  std::vector<RatioSample> samples;
  std::vector<RatioGroup> groups;      // per (ratio_target, offset)
  std::vector<RatioGroup> by_offset;   // pooled over targets; ratio_target = 0
  std::vector<double> achieved_ratios; // S2/S of each generated sequence
};

RatioReport ratio_experiment(const RatioConfig& cfg);

// ---------------------------------------------------------------------------
// Survival of almost-shortest path collections under random edge deletion.

struct DeletionConfig {
  std::vector<double> p_values{0.01, 0.02, 0.03, 0.04, 0.05, 0.06, 0.07, 0.08, 0.09, 0.10};
  std::size_t trials_per_p = 20;
  std::size_t pair_count = 20;
  std::size_t pair_degree_floor = 10;
  int slack = 3;
  bool simple_only = true;
  std::uint64_t max_paths = 20'000'000;
  std::uint64_t max_tree_nodes = 100'000'000;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  std::size_t curve_pairs = 5;
};

struct DeletionPair {
  NodeId source = 0;
  NodeId target = 0;
  Length distance = 0.0;
  std::uint64_t collection_size = 0;
};

struct DeletionSample {
  double p = 0.0;
  std::size_t pair_id = 0;
  std::size_t trial = 0;
  double fraction = 0.0;
};

struct DeletionReport {
  std::vector<DeletionPair> pairs;
  std::vector<DeletionSample> samples;       // ordered by (p, pair, trial)
  std::vector<SummaryStats> stats;           // per p, pooled over pairs and trials
  std::vector<std::vector<double>> curves;   // [curve pair][p] median fraction
  std::size_t rejected_pairs = 0;            // budget failures that were resampled
};

DeletionReport edge_deletion_experiment(const Graph& graph, const DeletionConfig& cfg);

/// Source 0 and target 1 joined by `count` internally disjoint paths of
/// `length` unit edges each.
Graph parallel_paths_graph(std::size_t count, std::size_t length);

}  // namespace pathtree
