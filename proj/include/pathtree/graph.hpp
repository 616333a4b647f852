#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pathtree/types.hpp"

namespace pathtree {

/// One input record `u v weight`. Ids are wide so overflow can be reported.
struct EdgeRecord {
  std::uint64_t u = 0;
  std::uint64_t v = 0;
  Length weight = 1.0;
};

/// A directed arc as seen from one endpoint. `edge` is the id of the input
/// record it came from; both arcs of an undirected edge share it.
struct Arc {
  NodeId node = 0;
  Length weight = 0.0;
  std::uint32_t edge = 0;
};

/// Immutable weighted graph with CSR out- and in-adjacency. Undirected edges
/// are stored as two mirrored arcs (one arc for a self-loop). Adjacency lists
/// are ordered by neighbor id.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from edge records. Node count is max id + 1, or
  /// `min_nodes` if larger. Throws NonPositiveWeight, DuplicateEdge,
  /// IdOverflow.
  static Graph build(std::span<const EdgeRecord> records, bool directed,
                     std::size_t min_nodes = 0);

  [[nodiscard]] std::size_t node_count() const noexcept { return out_offsets_.empty() ? 0 : out_offsets_.size() - 1; }
  [[nodiscard]] std::size_t arc_count() const noexcept { return out_arcs_.size(); }
  [[nodiscard]] std::size_t edge_count() const noexcept { return edges_.size(); }
  [[nodiscard]] bool directed() const noexcept { return directed_; }

  [[nodiscard]] std::span<const Arc> out(NodeId u) const {
    return {out_arcs_.data() + out_offsets_[u], out_arcs_.data() + out_offsets_[u + 1]};
  }
  [[nodiscard]] std::span<const Arc> in(NodeId v) const {
    return {in_arcs_.data() + in_offsets_[v], in_arcs_.data() + in_offsets_[v + 1]};
  }

  /// Global index of the first out-arc of `u`; out(u)[k] has index
  /// out_begin(u) + k. Used to attach per-arc data.
  [[nodiscard]] std::size_t out_begin(NodeId u) const { return out_offsets_[u]; }
  [[nodiscard]] const Arc& out_arc(std::size_t index) const { return out_arcs_[index]; }

  [[nodiscard]] std::size_t degree(NodeId u) const { return out_offsets_[u + 1] - out_offsets_[u]; }

  /// Index of arc (u,v) in the global out-arc array, if present.
  [[nodiscard]] std::optional<std::size_t> find_arc(NodeId u, NodeId v) const;
  [[nodiscard]] bool has_arc(NodeId u, NodeId v) const { return find_arc(u, v).has_value(); }
  [[nodiscard]] std::optional<Length> weight(NodeId u, NodeId v) const;

  /// Input records after validation, in input order; index = edge id.
  [[nodiscard]] std::span<const EdgeRecord> edges() const noexcept { return edges_; }

 private:
  bool directed_ = false;
  std::vector<std::size_t> out_offsets_{0};
  std::vector<Arc> out_arcs_;
  std::vector<std::size_t> in_offsets_{0};
  std::vector<Arc> in_arcs_;
  std::vector<EdgeRecord> edges_;
};

enum class Direction { kFromSource, kToTarget };

/// Single-anchor shortest distances; +inf marks unreachable nodes.
struct DistanceMap {
  NodeId anchor = 0;
  Direction direction = Direction::kFromSource;
  std::vector<Length> dist;

  [[nodiscard]] Length operator[](NodeId v) const { return dist[v]; }
};

/// Dijkstra from `anchor` along arcs (kFromSource) or against them
/// (kToTarget, i.e. distances *to* the anchor).
DistanceMap shortest_distances(const Graph& graph, NodeId anchor, Direction direction);

/// An in-neighbor entry with its ordering key d(source, node) + w(node, x).
struct KeyedArc {
  NodeId node = 0;
  Length weight = 0.0;
  Length key = 0.0;
};

/// Per-node in-neighbors sorted by key, ties by ascending id; unreachable
/// neighbors (infinite key) last.
class SortedAdjacency {
 public:
  [[nodiscard]] std::span<const KeyedArc> in(NodeId x) const {
    return {arcs_.data() + offsets_[x], arcs_.data() + offsets_[x + 1]};
  }
  [[nodiscard]] std::size_t node_count() const noexcept { return offsets_.size() - 1; }

 private:
  friend SortedAdjacency sorted_in_neighbors(const Graph&, const DistanceMap&);
  std::vector<std::size_t> offsets_{0};
  std::vector<KeyedArc> arcs_;
};

SortedAdjacency sorted_in_neighbors(const Graph& graph, const DistanceMap& dist_from_source);

}  // namespace pathtree
