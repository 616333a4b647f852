#pragma once

#include <span>
#include <vector>

#include "pathtree/graph.hpp"
#include "pathtree/path_enum.hpp"
#include "pathtree/types.hpp"

namespace pathtree {

/// Shortest-path tree toward `target`. Tree edges are (b, next_hop[b]).
struct ShortestPathTree {
  NodeId target = 0;
  std::vector<NodeId> next_hop;  // kNoNode for the target and unreachable nodes
  DistanceMap dist_to_target;

  /// True iff (b, a) is a tree edge, i.e. a is b's next hop toward the target.
  [[nodiscard]] bool has_edge(NodeId b, NodeId a) const { return next_hop[b] == a; }
};

/// Next hop = the out-neighbor minimizing w(b,a) + d(a,t); lowest id among
/// minimizers (within epsilon).
ShortestPathTree build_shortest_path_tree(const Graph& graph, NodeId target,
                                          Length epsilon = kDefaultEpsilon);

/// d_NBP(a -> b, t) for every arc, indexed like the graph's out-arc array:
/// the length of the shortest nonbacktracking walk that starts with arc (a,b)
/// and ends at t, or +inf if none exists.
class NbpDistanceMap {
 public:
  NbpDistanceMap() = default;
  NbpDistanceMap(NodeId target, std::vector<Length> values)
      : target_(target), values_(std::move(values)) {}

  [[nodiscard]] NodeId target() const noexcept { return target_; }
  [[nodiscard]] Length at_arc(std::size_t arc_index) const { return values_[arc_index]; }
  /// Value for arc (a,b); +inf if the arc does not exist.
  [[nodiscard]] Length value(const Graph& graph, NodeId a, NodeId b) const;
  [[nodiscard]] std::span<const Length> values() const noexcept { return values_; }

 private:
  NodeId target_ = 0;
  std::vector<Length> values_;
};

/// Evaluates the nonbacktracking distance recursion bottom-up over the tree
/// in O(m + n).
NbpDistanceMap nbp_distances(const Graph& graph, const ShortestPathTree& tree);

/// Out-arcs of every node ordered by d_NBP(a -> n, t), ties by ascending id.
class NbpAdjacency {
 public:
  struct Entry {
    NodeId node = 0;
    Length weight = 0.0;
    Length nbp = 0.0;
  };

  NbpAdjacency(const Graph& graph, const NbpDistanceMap& distances);

  [[nodiscard]] std::span<const Entry> out(NodeId a) const {
    return {entries_.data() + offsets_[a], entries_.data() + offsets_[a + 1]};
  }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Entry> entries_;
};

/// Forward growth from the source; extension by n is admitted iff n differs
/// from the node two steps back and d_NBP(x_m -> n, t) fits the remaining
/// budget. The returned tree is forward (rooted at the source).
PathTree grow_nbp_tree(const Graph& graph, const NbpAdjacency& adjacency, const PathQuery& query);

/// Every nonbacktracking walk from source to target of length <= bound.
std::vector<Path> nbp_pathfind(const Graph& graph, const PathQuery& query);

}  // namespace pathtree
