#include "pathtree/path.hpp"

#include <algorithm>

namespace pathtree {

bool is_simple(std::span<const NodeId> nodes) {
  // Paths are short; sorting a copy beats hashing for typical lengths.
  std::vector<NodeId> sorted(nodes.begin(), nodes.end());
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

bool is_nonbacktracking(std::span<const NodeId> nodes) {
  for (std::size_t i = 0; i + 2 < nodes.size(); ++i) {
    if (nodes[i] == nodes[i + 2]) return false;
  }
  return true;
}

std::vector<Path> filter_simple(std::span<const Path> paths) {
  std::vector<Path> out;
  for (const Path& p : paths) {
    if (is_simple(p)) out.push_back(p);
  }
  return out;
}

Length walk_length(const Graph& graph, std::span<const NodeId> nodes) {
  Length total = 0.0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const auto w = graph.weight(nodes[i], nodes[i + 1]);
    if (!w) return kInfinity;
    total += *w;
  }
  return total;
}

}  // namespace pathtree
