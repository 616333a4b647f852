#pragma once

#include <span>
#include <vector>

#include "pathtree/graph.hpp"
#include "pathtree/types.hpp"

namespace pathtree {

/// A walk from nodes.front() to nodes.back() with its accumulated length.
struct Path {
  std::vector<NodeId> nodes;
  Length length = 0.0;

  [[nodiscard]] std::size_t edge_count() const { return nodes.empty() ? 0 : nodes.size() - 1; }
  friend bool operator==(const Path&, const Path&) = default;
};

// All nodes distinct.
bool is_simple(std::span<const NodeId> nodes);
inline bool is_simple(const Path& p) { return is_simple(p.nodes); }

// No immediate reversal: nodes[i] != nodes[i+2] for every i.
bool is_nonbacktracking(std::span<const NodeId> nodes);
inline bool is_nonbacktracking(const Path& p) { return is_nonbacktracking(p.nodes); }

/// Stable subsequence of the simple paths.
std::vector<Path> filter_simple(std::span<const Path> paths);

/// Sum of arc weights along `nodes`, or +inf if some step is not an arc.
Length walk_length(const Graph& graph, std::span<const NodeId> nodes);

}  // namespace pathtree
