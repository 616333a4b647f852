#include "pathtree/nonbacktracking.hpp"

#include <algorithm>

#include "pathtree/error.hpp"

namespace pathtree {

ShortestPathTree build_shortest_path_tree(const Graph& graph, NodeId target, Length epsilon) {
  ShortestPathTree tree;
  tree.target = target;
  tree.dist_to_target = shortest_distances(graph, target, Direction::kToTarget);
  const auto& dist = tree.dist_to_target.dist;
  tree.next_hop.assign(graph.node_count(), kNoNode);
  for (NodeId b = 0; b < graph.node_count(); ++b) {
    if (b == target || dist[b] == kInfinity) continue;
    // Out-lists are id-ordered, so the first arc within epsilon of the
    // optimum is the lowest-id minimizer. Requiring dist[a] < dist[b] keeps
    // the next-hop relation acyclic.
    for (const Arc& arc : graph.out(b)) {
      if (arc.weight + dist[arc.node] <= dist[b] + epsilon && dist[arc.node] < dist[b]) {
        tree.next_hop[b] = arc.node;
        break;
      }
    }
  }
  return tree;
}

Length NbpDistanceMap::value(const Graph& graph, NodeId a, NodeId b) const {
  if (auto idx = graph.find_arc(a, b)) return values_[*idx];
  return kInfinity;
}

NbpDistanceMap nbp_distances(const Graph& graph, const ShortestPathTree& tree) {
  const std::size_t n = graph.node_count();
  const auto& dist = tree.dist_to_target.dist;

  // Tree children of each node: {n : next_hop[n] == b}.
  std::vector<std::size_t> child_offsets(n + 1, 0);
  for (NodeId v = 0; v < n; ++v) {
    if (tree.next_hop[v] != kNoNode) ++child_offsets[tree.next_hop[v] + 1];
  }
  for (std::size_t i = 0; i < n; ++i) child_offsets[i + 1] += child_offsets[i];
  std::vector<NodeId> children(child_offsets[n]);
  {
    auto cursor = child_offsets;
    for (NodeId v = 0; v < n; ++v) {
      if (tree.next_hop[v] != kNoNode) children[cursor[tree.next_hop[v]]++] = v;
    }
  }

  // BFS order from the target; reversed, every node follows its children.
  std::vector<NodeId> order;
  order.reserve(n);
  order.push_back(tree.target);
  for (std::size_t head = 0; head < order.size(); ++head) {
    const NodeId b = order[head];
    for (std::size_t k = child_offsets[b]; k < child_offsets[b + 1]; ++k) order.push_back(children[k]);
  }

  // continuation[b]: shortest nonbacktracking continuation from b to t given
  // the walk arrived from next_hop[b]; only defined for nodes with a next hop.
  std::vector<Length> continuation(n, kInfinity);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const NodeId b = *it;
    const NodeId back = tree.next_hop[b];
    if (back == kNoNode) continue;
    Length best = kInfinity;
    for (const Arc& arc : graph.out(b)) {
      if (arc.node == back) continue;
      const Length rest = tree.next_hop[arc.node] == b ? continuation[arc.node] : dist[arc.node];
      best = std::min(best, arc.weight + rest);
    }
    continuation[b] = best;
  }

  std::vector<Length> values(graph.arc_count(), kInfinity);
  for (NodeId a = 0; a < n; ++a) {
    const auto arcs = graph.out(a);
    const std::size_t base = graph.out_begin(a);
    for (std::size_t k = 0; k < arcs.size(); ++k) {
      const NodeId b = arcs[k].node;
      const Length rest = tree.next_hop[b] == a ? continuation[b] : dist[b];
      values[base + k] = arcs[k].weight + rest;
    }
  }
  return NbpDistanceMap(tree.target, std::move(values));
}

NbpAdjacency::NbpAdjacency(const Graph& graph, const NbpDistanceMap& distances) {
  const std::size_t n = graph.node_count();
  offsets_.assign(n + 1, 0);
  entries_.reserve(graph.arc_count());
  for (NodeId a = 0; a < n; ++a) {
    const auto arcs = graph.out(a);
    const std::size_t base = graph.out_begin(a);
    const auto begin = entries_.size();
    for (std::size_t k = 0; k < arcs.size(); ++k) {
      entries_.push_back({arcs[k].node, arcs[k].weight, distances.at_arc(base + k)});
    }
    std::stable_sort(entries_.begin() + static_cast<std::ptrdiff_t>(begin), entries_.end(),
                     [](const Entry& x, const Entry& y) { return x.nbp < y.nbp; });
    offsets_[a + 1] = entries_.size();
  }
}

PathTree grow_nbp_tree(const Graph& graph, const NbpAdjacency& adjacency, const PathQuery& query) {
  validate_query(graph, query);
  PathTree tree(query.source, /*forward=*/true);
  for (std::size_t i = 0; i < tree.size(); ++i) {
    const PathTree::Node l = tree.node(i);
    const NodeId previous = l.parent == PathTree::kNoParent ? kNoNode : tree.node(l.parent).id;
    const Length budget = query.bound - l.trackdistance + query.epsilon;
    for (const auto& cand : adjacency.out(l.id)) {
      if (cand.nbp > budget) break;
      if (cand.node == previous) continue;
      if (tree.size() >= query.max_tree_nodes) {
        throw BudgetExceeded(ErrorCode::kTreeBudgetExceeded, tree.path_count(), tree.size());
      }
      const auto z = tree.add(static_cast<std::uint32_t>(i), cand.node,
                              l.trackdistance + cand.weight);
      if (cand.node == query.target) {
        if (tree.path_count() >= query.max_paths) {
          throw BudgetExceeded(ErrorCode::kPathBudgetExceeded, tree.path_count(), tree.size());
        }
        tree.mark_end(z);
      }
    }
  }
  return tree;
}

std::vector<Path> nbp_pathfind(const Graph& graph, const PathQuery& query) {
  validate_query(graph, query);
  const ShortestPathTree spt = build_shortest_path_tree(graph, query.target, query.epsilon);
  const NbpDistanceMap nbp = nbp_distances(graph, spt);
  const NbpAdjacency adjacency(graph, nbp);
  return grow_nbp_tree(graph, adjacency, query).paths();
}

}  // namespace pathtree
