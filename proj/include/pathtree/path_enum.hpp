#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pathtree/graph.hpp"
#include "pathtree/path.hpp"
#include "pathtree/types.hpp"

namespace pathtree {

struct PathQuery {
  NodeId source = 0;
  NodeId target = 0;
  Length bound = 0.0;  // D: upper bound on walk length
  std::uint64_t max_paths = 100'000'000;
  std::uint64_t max_tree_nodes = 100'000'000;
  Length epsilon = kDefaultEpsilon;
};

/// Search tree of a bounded-length walk enumeration.
///
/// Each tree node stands for a partial walk: following parent links from a
/// node to the root spells out that walk in the graph. The backward tree
/// built by `grow_path_tree` is rooted at the target and its parent chains
/// read source -> target; a forward tree (nonbacktracking search) is rooted
/// at the source and its chains are reversed on extraction.
class PathTree {
 public:
  static constexpr std::uint32_t kNoParent = std::numeric_limits<std::uint32_t>::max();

  struct Node {
    std::uint32_t parent = kNoParent;
    NodeId id = 0;
    Length trackdistance = 0.0;
  };

  PathTree() = default;
  PathTree(NodeId root_id, bool forward) : forward_(forward) {
    nodes_.push_back({kNoParent, root_id, 0.0});
  }

  [[nodiscard]] std::size_t size() const noexcept { return nodes_.size(); }
  [[nodiscard]] const Node& node(std::size_t i) const { return nodes_[i]; }
  [[nodiscard]] std::span<const Node> nodes() const noexcept { return nodes_; }
  /// Tree nodes whose chain to the root is a complete output walk.
  [[nodiscard]] std::span<const std::uint32_t> path_ends() const noexcept { return ends_; }
  [[nodiscard]] std::size_t path_count() const noexcept { return ends_.size(); }
  [[nodiscard]] bool forward() const noexcept { return forward_; }

  [[nodiscard]] std::size_t leaf_count() const;
  /// Largest number of graph nodes on any output walk (0 when empty).
  [[nodiscard]] std::size_t max_path_nodes() const;

  /// Materializes the walk ending at tree node `end` in source -> target order.
  [[nodiscard]] Path path_at(std::uint32_t end) const;

  /// Visits every output walk in tree-construction order without storing
  /// them all. `fn(std::span<const NodeId>, Length)`.
  template <typename Fn>
  void for_each_path(Fn&& fn) const {
    std::vector<NodeId> buffer;
    for (const std::uint32_t end : ends_) {
      fill(end, buffer);
      fn(std::span<const NodeId>(buffer), nodes_[end].trackdistance);
    }
  }

  [[nodiscard]] std::vector<Path> paths() const;

  std::uint32_t add(std::uint32_t parent, NodeId id, Length trackdistance) {
    nodes_.push_back({parent, id, trackdistance});
    return static_cast<std::uint32_t>(nodes_.size() - 1);
  }
  void mark_end(std::uint32_t node) { ends_.push_back(node); }

 private:
  void fill(std::uint32_t end, std::vector<NodeId>& buffer) const;

  bool forward_ = false;
  std::vector<Node> nodes_;
  std::vector<std::uint32_t> ends_;
};

/// Checks query shape against the graph; throws DegenerateQuery or
/// RangeViolation.
void validate_query(const Graph& graph, const PathQuery& query);

/// Builds the backward path tree for `query` from precomputed from-source
/// distances and the matching sorted in-adjacency.
PathTree grow_path_tree(const Graph& graph, const SortedAdjacency& adjacency,
                        const DistanceMap& dist_from_source, const PathQuery& query);

/// Convenience: distances, sorting, and tree growth in one call.
PathTree grow_path_tree(const Graph& graph, const PathQuery& query);

/// Every walk from source to target of length <= bound (+ epsilon), in tree
/// construction order.
std::vector<Path> pathfind(const Graph& graph, const PathQuery& query);

enum class WalkMode { kWalk, kNonbacktracking, kSimple };

struct BruteForceOptions {
  Length epsilon = kDefaultEpsilon;
  std::size_t max_nodes = 64;  // guard; raise explicitly for larger graphs
};

/// Exhaustive depth-first enumeration of walks with at least one edge from
/// `source` ending at `target`, pruned only on accumulated length. Walks may
/// pass through the target and continue. `source == target` is allowed here.
std::vector<Path> brute_force_walks(const Graph& graph, NodeId source, NodeId target,
                                    Length bound, WalkMode mode,
                                    const BruteForceOptions& options = {});

}  // namespace pathtree
