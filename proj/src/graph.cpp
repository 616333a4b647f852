#include "pathtree/graph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <string>
#include <unordered_set>
#include <utility>

#include "pathtree/error.hpp"

namespace pathtree {

namespace {

std::uint64_t pair_key(std::uint64_t a, std::uint64_t b) { return (a << 32) | b; }

void fill_csr(std::size_t n, std::vector<std::pair<NodeId, Arc>>& entries,
              std::vector<std::size_t>& offsets, std::vector<Arc>& arcs) {
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second.node < b.second.node;
  });
  offsets.assign(n + 1, 0);
  for (const auto& [owner, arc] : entries) ++offsets[owner + 1];
  for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
  arcs.clear();
  arcs.reserve(entries.size());
  for (const auto& entry : entries) arcs.push_back(entry.second);
}

}  // namespace

Graph Graph::build(std::span<const EdgeRecord> records, bool directed, std::size_t min_nodes) {
  Graph g;
  g.directed_ = directed;
  std::size_t n = min_nodes;
  for (const auto& r : records) {
    if (r.u >= kNoNode || r.v >= kNoNode) {
      throw Error(ErrorCode::kIdOverflow, "node id exceeds 32-bit range");
    }
    if (!(r.weight > 0.0) || !std::isfinite(r.weight)) {
      throw Error(ErrorCode::kNonPositiveWeight,
                  "edge (" + std::to_string(r.u) + "," + std::to_string(r.v) +
                      ") has non-positive weight");
    }
    n = std::max<std::size_t>(n, std::max(r.u, r.v) + 1);
  }
  if (records.size() >= std::numeric_limits<std::uint32_t>::max()) {
    throw Error(ErrorCode::kIdOverflow, "too many edges");
  }

  std::unordered_set<std::uint64_t> seen;
  seen.reserve(records.size() * 2);
  std::vector<std::pair<NodeId, Arc>> out_entries;
  std::vector<std::pair<NodeId, Arc>> in_entries;
  out_entries.reserve(records.size() * (directed ? 1 : 2));
  in_entries.reserve(out_entries.capacity());

  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto u = static_cast<NodeId>(records[i].u);
    const auto v = static_cast<NodeId>(records[i].v);
    const Length w = records[i].weight;
    const auto id = static_cast<std::uint32_t>(i);
    const std::uint64_t key = directed ? pair_key(u, v) : pair_key(std::min(u, v), std::max(u, v));
    if (!seen.insert(key).second) {
      throw Error(ErrorCode::kDuplicateEdge,
                  "duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    }
    out_entries.push_back({u, Arc{v, w, id}});
    in_entries.push_back({v, Arc{u, w, id}});
    if (!directed && u != v) {
      out_entries.push_back({v, Arc{u, w, id}});
      in_entries.push_back({u, Arc{v, w, id}});
    }
  }
  g.edges_.assign(records.begin(), records.end());
  fill_csr(n, out_entries, g.out_offsets_, g.out_arcs_);
  fill_csr(n, in_entries, g.in_offsets_, g.in_arcs_);
  return g;
}

std::optional<std::size_t> Graph::find_arc(NodeId u, NodeId v) const {
  const auto arcs = out(u);
  const auto it = std::lower_bound(arcs.begin(), arcs.end(), v,
                                   [](const Arc& a, NodeId x) { return a.node < x; });
  if (it == arcs.end() || it->node != v) return std::nullopt;
  return out_offsets_[u] + static_cast<std::size_t>(it - arcs.begin());
}

std::optional<Length> Graph::weight(NodeId u, NodeId v) const {
  if (auto idx = find_arc(u, v)) return out_arcs_[*idx].weight;
  return std::nullopt;
}

DistanceMap shortest_distances(const Graph& graph, NodeId anchor, Direction direction) {
  DistanceMap result;
  result.anchor = anchor;
  result.direction = direction;
  result.dist.assign(graph.node_count(), kInfinity);
  if (anchor >= graph.node_count()) {
    throw Error(ErrorCode::kRangeViolation, "anchor not in graph");
  }

  using Item = std::pair<Length, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  result.dist[anchor] = 0.0;
  heap.push({0.0, anchor});
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > result.dist[u]) continue;
    const auto arcs = direction == Direction::kFromSource ? graph.out(u) : graph.in(u);
    for (const Arc& a : arcs) {
      const Length nd = d + a.weight;
      if (nd < result.dist[a.node]) {
        result.dist[a.node] = nd;
        heap.push({nd, a.node});
      }
    }
  }
  return result;
}

SortedAdjacency sorted_in_neighbors(const Graph& graph, const DistanceMap& dist_from_source) {
  SortedAdjacency adj;
  const std::size_t n = graph.node_count();
  adj.offsets_.assign(n + 1, 0);
  adj.arcs_.reserve(graph.arc_count());
  for (NodeId x = 0; x < n; ++x) {
    const auto begin = adj.arcs_.size();
    for (const Arc& a : graph.in(x)) {
      adj.arcs_.push_back({a.node, a.weight, dist_from_source[a.node] + a.weight});
    }
    // In-lists arrive ordered by id, so a stable sort keeps the id tie-break.
    std::stable_sort(adj.arcs_.begin() + static_cast<std::ptrdiff_t>(begin), adj.arcs_.end(),
                     [](const KeyedArc& a, const KeyedArc& b) { return a.key < b.key; });
    adj.offsets_[x + 1] = adj.arcs_.size();
  }
  return adj;
}

}  // namespace pathtree
