#include "pathtree/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "parallel.hpp"
#include "pathtree/error.hpp"
#include "pathtree/path_enum.hpp"
#include "pathtree/random_graphs.hpp"

namespace pathtree {

SummaryStats summarize(std::span<const double> samples) {
  if (samples.empty()) throw Error(ErrorCode::kEmptyCollection, "no samples to summarize");
  std::vector<double> v(samples.begin(), samples.end());
  std::sort(v.begin(), v.end());
  auto quantile = [&](double q) {
    const double pos = q * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
  };
  SummaryStats s;
  s.count = v.size();
  s.min = v.front();
  s.max = v.back();
  s.q1 = quantile(0.25);
  s.median = quantile(0.5);
  s.q3 = quantile(0.75);
  s.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  return s;
}

double surviving_fraction(std::span<const Path> paths, const EdgeSet& deleted) {
  if (paths.empty()) throw Error(ErrorCode::kEmptyCollection, "no paths to assess");
  std::size_t alive = 0;
  for (const Path& p : paths) {
    bool ok = true;
    for (std::size_t i = 0; ok && i + 1 < p.nodes.size(); ++i) {
      ok = !deleted.contains(p.nodes[i], p.nodes[i + 1]);
    }
    alive += ok ? 1 : 0;
  }
  return static_cast<double>(alive) / static_cast<double>(paths.size());
}

namespace {

// Stamp-based distinctness check; avoids allocating per path.
class SimpleChecker {
 public:
  explicit SimpleChecker(std::size_t n) : stamp_(n, 0) {}
  bool operator()(std::span<const NodeId> nodes) {
    if (++generation_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      generation_ = 1;
    }
    for (const NodeId v : nodes) {
      if (stamp_[v] == generation_) return false;
      stamp_[v] = generation_;
    }
    return true;
  }

 private:
  std::vector<std::uint32_t> stamp_;
  std::uint32_t generation_ = 0;
};

struct PairPick {
  NodeId source;
  NodeId target;
  Length distance;
};

std::vector<NodeId> nodes_with_degree(const Graph& g, std::size_t floor) {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (g.degree(v) >= floor) out.push_back(v);
  }
  return out;
}

// Draws distinct unordered pairs of eligible, mutually reachable nodes.
class PairSampler {
 public:
  PairSampler(const Graph& g, std::size_t degree_floor, RngSeed seed)
      : graph_(g), eligible_(nodes_with_degree(g, degree_floor)), rng_(seed) {}

  std::optional<PairPick> next(std::size_t max_attempts) {
    if (eligible_.size() < 2) return std::nullopt;
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
      const NodeId s = eligible_[rng_.below(eligible_.size())];
      const NodeId t = eligible_[rng_.below(eligible_.size())];
      if (s == t) continue;
      if (!used_.insert({std::min(s, t), std::max(s, t)}).second) continue;
      const DistanceMap dist = shortest_distances(graph_, s, Direction::kFromSource);
      if (dist[t] == kInfinity) continue;
      return PairPick{s, t, dist[t]};
    }
    return std::nullopt;
  }

 private:
  const Graph& graph_;
  std::vector<NodeId> eligible_;
  Rng rng_;
  std::set<std::pair<NodeId, NodeId>> used_;
};

struct OffsetCounts {
  std::vector<std::uint64_t> walks;
  std::vector<std::uint64_t> simple;
};

OffsetCounts count_by_offset(const Graph& g, const PathTree& tree, Length distance,
                             std::span<const int> offsets, Length epsilon) {
  OffsetCounts c{std::vector<std::uint64_t>(offsets.size(), 0),
                 std::vector<std::uint64_t>(offsets.size(), 0)};
  SimpleChecker is_simple_walk(g.node_count());
  tree.for_each_path([&](std::span<const NodeId> nodes, Length length) {
    const bool simple = is_simple_walk(nodes);
    for (std::size_t k = 0; k < offsets.size(); ++k) {
      if (length <= distance + offsets[k] + epsilon) {
        ++c.walks[k];
        if (simple) ++c.simple[k];
      }
    }
  });
  return c;
}

}  // namespace

RatioReport ratio_experiment(const RatioConfig& cfg) {
  if (cfg.offsets.empty() || cfg.ratio_targets.empty()) {
    throw Error(ErrorCode::kRangeViolation, "ratio experiment needs targets and offsets");
  }
  for (const int o : cfg.offsets) {
    if (o <= 0) throw Error(ErrorCode::kRangeViolation, "offsets must be positive");
  }
  if (cfg.min_pair_degree < 1) throw Error(ErrorCode::kRangeViolation, "min_pair_degree must be >= 1");

  const std::size_t units = cfg.ratio_targets.size() * cfg.sequences_per_target;
  std::vector<std::vector<RatioSample>> per_unit(units);
  std::vector<double> achieved(units, 0.0);
  const int max_offset = *std::max_element(cfg.offsets.begin(), cfg.offsets.end());
  const RngSeed root{cfg.seed, 0};

  detail::parallel_for(units, cfg.jobs, [&](std::size_t u) {
    const std::size_t ti = u / cfg.sequences_per_target;
    const std::size_t si = u % cfg.sequences_per_target;
    const RngSeed unit = root.substream(ti).substream(si);

    McmcConfig mc;
    mc.n = cfg.n;
    mc.target_avg = cfg.avg_degree;
    mc.target_ratio = cfg.ratio_targets[ti];
    mc.hub_count = cfg.hub_count;
    mc.tolerance = cfg.mcmc_tolerance;
    const DegreeSequence seq = mcmc_degree_sequence(mc, unit.substream(0));
    achieved[u] = seq.ratio();
    const Graph g = sample_chung_lu(seq, unit.substream(1));

    PairSampler sampler(g, cfg.min_pair_degree, unit.substream(2));
    auto& out = per_unit[u];
    for (std::size_t pair_id = 0; pair_id < cfg.pairs_per_graph; ++pair_id) {
      const auto pick = sampler.next(1000);
      if (!pick) break;
      PathQuery q;
      q.source = pick->source;
      q.target = pick->target;
      q.max_paths = cfg.max_paths;
      q.max_tree_nodes = cfg.max_tree_nodes;

      std::vector<RatioSample> rows(cfg.offsets.size());
      for (std::size_t k = 0; k < cfg.offsets.size(); ++k) {
        rows[k] = RatioSample{cfg.ratio_targets[ti], cfg.offsets[k], si, pair_id,
                              pick->source, pick->target, 0, 0, 0.0, "budget"};
      }
      auto fill = [&](std::size_t k, std::uint64_t walks, std::uint64_t simple) {
        rows[k].n_walks = walks;
        rows[k].n_simple = simple;
        if (simple == 0) {
          rows[k].status = "no-simple";
        } else {
          rows[k].status = "ok";
          rows[k].ratio = static_cast<double>(walks) / static_cast<double>(simple);
        }
      };
      try {
        q.bound = pick->distance + max_offset;
        const PathTree tree = grow_path_tree(g, q);
        const auto counts = count_by_offset(g, tree, pick->distance, cfg.offsets, q.epsilon);
        for (std::size_t k = 0; k < cfg.offsets.size(); ++k) fill(k, counts.walks[k], counts.simple[k]);
      } catch (const BudgetExceeded&) {
        // Retry offsets one at a time; the smaller bounds may still fit.
        for (std::size_t k = 0; k < cfg.offsets.size(); ++k) {
          try {
            q.bound = pick->distance + cfg.offsets[k];
            const PathTree tree = grow_path_tree(g, q);
            const int single[] = {cfg.offsets[k]};
            const auto counts = count_by_offset(g, tree, pick->distance, single, q.epsilon);
            fill(k, counts.walks[0], counts.simple[0]);
          } catch (const BudgetExceeded&) {
          }
        }
      }
      out.insert(out.end(), rows.begin(), rows.end());
    }
  });

  RatioReport report;
  report.achieved_ratios = achieved;
  for (auto& rows : per_unit) {
    report.samples.insert(report.samples.end(), rows.begin(), rows.end());
  }

  auto group = [&](double target, int offset, bool pooled) {
    RatioGroup g;
    g.ratio_target = pooled ? 0.0 : target;
    g.offset = offset;
    std::vector<double> values;
    for (const auto& s : report.samples) {
      if (s.offset != offset || (!pooled && s.ratio_target != target)) continue;
      if (s.status == "ok") {
        values.push_back(s.ratio);
      } else {
        ++g.skipped;
      }
    }
    if (!values.empty()) g.stats = summarize(values);
    return g;
  };
  for (const double target : cfg.ratio_targets) {
    for (const int offset : cfg.offsets) report.groups.push_back(group(target, offset, false));
  }
  for (const int offset : cfg.offsets) report.by_offset.push_back(group(0.0, offset, true));
  return report;
}

namespace {

// Almost-shortest collection of one pair, flattened to local edge indices.
struct Collection {
  std::vector<std::size_t> offsets{0};
  std::vector<std::uint32_t> edges;
  std::size_t edge_universe = 0;

  [[nodiscard]] std::size_t size() const { return offsets.size() - 1; }
};

Collection collect(const Graph& g, const PathTree& tree, bool simple_only) {
  Collection c;
  std::vector<std::int64_t> local(g.edge_count(), -1);
  SimpleChecker is_simple_walk(g.node_count());
  tree.for_each_path([&](std::span<const NodeId> nodes, Length) {
    if (simple_only && !is_simple_walk(nodes)) return;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
      const auto idx = g.find_arc(nodes[i], nodes[i + 1]);
      const std::uint32_t edge = g.out_arc(*idx).edge;
      if (local[edge] < 0) local[edge] = static_cast<std::int64_t>(c.edge_universe++);
      c.edges.push_back(static_cast<std::uint32_t>(local[edge]));
    }
    c.offsets.push_back(c.edges.size());
  });
  return c;
}

double survive_trial(const Collection& c, double p, RngSeed seed, std::vector<char>& deleted) {
  Rng rng(seed);
  deleted.assign(c.edge_universe, 0);
  for (auto& flag : deleted) flag = rng.bernoulli(p) ? 1 : 0;
  std::size_t alive = 0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    bool ok = true;
    for (std::size_t e = c.offsets[k]; ok && e < c.offsets[k + 1]; ++e) ok = !deleted[c.edges[e]];
    alive += ok ? 1 : 0;
  }
  return static_cast<double>(alive) / static_cast<double>(c.size());
}

}  // namespace

DeletionReport edge_deletion_experiment(const Graph& graph, const DeletionConfig& cfg) {
  for (const double p : cfg.p_values) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::kRangeViolation, "p must lie in [0, 1]");
  }
  if (cfg.trials_per_p < 1) throw Error(ErrorCode::kRangeViolation, "trials_per_p must be >= 1");
  if (cfg.slack < 0) throw Error(ErrorCode::kRangeViolation, "slack must be nonnegative");

  DeletionReport report;
  std::vector<Collection> collections;
  PairSampler sampler(graph, cfg.pair_degree_floor, RngSeed{cfg.seed, 0});
  const std::size_t max_attempts = 1000 + 100 * cfg.pair_count;
  std::size_t attempts = 0;
  while (collections.size() < cfg.pair_count && attempts++ < max_attempts) {
    const auto pick = sampler.next(1000);
    if (!pick) break;
    PathQuery q;
    q.source = pick->source;
    q.target = pick->target;
    q.bound = pick->distance + cfg.slack;
    q.max_paths = cfg.max_paths;
    q.max_tree_nodes = cfg.max_tree_nodes;
    try {
      const PathTree tree = grow_path_tree(graph, q);
      Collection c = collect(graph, tree, cfg.simple_only);
      if (c.size() == 0) continue;
      report.pairs.push_back({pick->source, pick->target, pick->distance, c.size()});
      collections.push_back(std::move(c));
    } catch (const BudgetExceeded&) {
      ++report.rejected_pairs;
    }
  }
  if (collections.size() < cfg.pair_count) {
    throw Error(ErrorCode::kInsufficientPairs,
                "found " + std::to_string(collections.size()) + " of " +
                    std::to_string(cfg.pair_count) + " pairs with degree >= " +
                    std::to_string(cfg.pair_degree_floor));
  }

  const std::size_t np = cfg.p_values.size();
  const std::size_t pairs = collections.size();
  // fractions[pair][p][trial]
  std::vector<std::vector<std::vector<double>>> fractions(
      pairs, std::vector<std::vector<double>>(np, std::vector<double>(cfg.trials_per_p)));
  const RngSeed trial_root{cfg.seed, 1};
  detail::parallel_for(pairs, cfg.jobs, [&](std::size_t i) {
    std::vector<char> scratch;
    for (std::size_t k = 0; k < np; ++k) {
      for (std::size_t j = 0; j < cfg.trials_per_p; ++j) {
        const RngSeed s = trial_root.substream(i).substream(k).substream(j);
        fractions[i][k][j] = survive_trial(collections[i], cfg.p_values[k], s, scratch);
      }
    }
  });

  for (std::size_t k = 0; k < np; ++k) {
    std::vector<double> pooled;
    for (std::size_t i = 0; i < pairs; ++i) {
      for (std::size_t j = 0; j < cfg.trials_per_p; ++j) {
        report.samples.push_back({cfg.p_values[k], i, j, fractions[i][k][j]});
        pooled.push_back(fractions[i][k][j]);
      }
    }
    report.stats.push_back(summarize(pooled));
  }
  for (std::size_t i = 0; i < std::min(cfg.curve_pairs, pairs); ++i) {
    std::vector<double> curve;
    for (std::size_t k = 0; k < np; ++k) curve.push_back(summarize(fractions[i][k]).median);
    report.curves.push_back(std::move(curve));
  }
  return report;
}

Graph parallel_paths_graph(std::size_t count, std::size_t length) {
  if (length == 0 || (length == 1 && count > 1)) {
    throw Error(ErrorCode::kRangeViolation, "parallel paths need length >= 2 (or a single edge)");
  }
  std::vector<EdgeRecord> edges;
  std::uint64_t next = 2;
  for (std::size_t c = 0; c < count; ++c) {
    std::uint64_t prev = 0;
    for (std::size_t k = 1; k < length; ++k) {
      edges.push_back({prev, next, 1.0});
      prev = next++;
    }
    edges.push_back({prev, 1, 1.0});
  }
  return Graph::build(edges, false, 2);
}

}  // namespace pathtree
