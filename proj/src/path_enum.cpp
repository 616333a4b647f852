#include "pathtree/path_enum.hpp"

#include <algorithm>
#include <string>

#include "pathtree/error.hpp"

namespace pathtree {

std::size_t PathTree::leaf_count() const {
  std::vector<char> has_child(nodes_.size(), 0);
  for (const Node& n : nodes_) {
    if (n.parent != kNoParent) has_child[n.parent] = 1;
  }
  return static_cast<std::size_t>(std::count(has_child.begin(), has_child.end(), 0));
}

std::size_t PathTree::max_path_nodes() const {
  // Parents precede children, so depths fill in one forward pass.
  std::vector<std::uint32_t> depth(nodes_.size(), 1);
  for (std::size_t i = 1; i < nodes_.size(); ++i) depth[i] = depth[nodes_[i].parent] + 1;
  std::size_t best = 0;
  for (const auto end : ends_) best = std::max<std::size_t>(best, depth[end]);
  return best;
}

void PathTree::fill(std::uint32_t end, std::vector<NodeId>& buffer) const {
  buffer.clear();
  for (std::uint32_t cur = end; cur != kNoParent; cur = nodes_[cur].parent) {
    buffer.push_back(nodes_[cur].id);
  }
  if (forward_) std::reverse(buffer.begin(), buffer.end());
}

Path PathTree::path_at(std::uint32_t end) const {
  Path p;
  fill(end, p.nodes);
  p.length = nodes_[end].trackdistance;
  return p;
}

std::vector<Path> PathTree::paths() const {
  std::vector<Path> out;
  out.reserve(ends_.size());
  for (const auto end : ends_) out.push_back(path_at(end));
  return out;
}

void validate_query(const Graph& graph, const PathQuery& query) {
  const auto n = graph.node_count();
  if (query.source >= n || query.target >= n) {
    throw Error(ErrorCode::kRangeViolation, "source or target not in graph");
  }
  if (query.source == query.target) {
    throw Error(ErrorCode::kDegenerateQuery, "source and target must differ");
  }
  if (!(query.bound >= 0.0)) {
    throw Error(ErrorCode::kRangeViolation, "bound must be nonnegative");
  }
  if (query.max_paths == 0 || query.max_tree_nodes == 0) {
    throw Error(ErrorCode::kRangeViolation, "budgets must be positive");
  }
  if (!(query.epsilon >= 0.0)) {
    throw Error(ErrorCode::kRangeViolation, "epsilon must be nonnegative");
  }
}

PathTree grow_path_tree(const Graph& graph, const SortedAdjacency& adjacency,
                        const DistanceMap& dist_from_source, const PathQuery& query) {
  validate_query(graph, query);
  (void)dist_from_source;  // folded into the adjacency keys

  PathTree tree(query.target, /*forward=*/false);
  // Children are appended behind their parents, so scanning the node array
  // in index order is exactly FIFO processing of the queue.
  for (std::size_t i = 0; i < tree.size(); ++i) {
    const PathTree::Node l = tree.node(i);
    const Length budget = query.bound - l.trackdistance + query.epsilon;
    for (const KeyedArc& cand : adjacency.in(l.id)) {
      if (cand.key > budget) break;  // sorted: every later candidate is farther
      if (tree.size() >= query.max_tree_nodes) {
        throw BudgetExceeded(ErrorCode::kTreeBudgetExceeded, tree.path_count(), tree.size());
      }
      const auto z = tree.add(static_cast<std::uint32_t>(i), cand.node,
                              cand.weight + l.trackdistance);
      if (cand.node == query.source) {
        if (tree.path_count() >= query.max_paths) {
          throw BudgetExceeded(ErrorCode::kPathBudgetExceeded, tree.path_count(), tree.size());
        }
        tree.mark_end(z);
      }
    }
  }
  return tree;
}

PathTree grow_path_tree(const Graph& graph, const PathQuery& query) {
  validate_query(graph, query);
  const DistanceMap dist = shortest_distances(graph, query.source, Direction::kFromSource);
  const SortedAdjacency adjacency = sorted_in_neighbors(graph, dist);
  return grow_path_tree(graph, adjacency, dist, query);
}

std::vector<Path> pathfind(const Graph& graph, const PathQuery& query) {
  return grow_path_tree(graph, query).paths();
}

namespace {

struct WalkSearch {
  const Graph& graph;
  NodeId target;
  Length limit;
  WalkMode mode;
  std::vector<NodeId> stack;
  std::vector<char> on_stack;
  std::vector<Path> out;

  void extend(Length length) {
    const NodeId cur = stack.back();
    if (stack.size() > 1 && cur == target) out.push_back({stack, length});
    for (const Arc& a : graph.out(cur)) {
      const Length next = length + a.weight;
      if (next > limit) continue;
      if (mode == WalkMode::kNonbacktracking && stack.size() >= 2 &&
          stack[stack.size() - 2] == a.node) {
        continue;
      }
      if (mode == WalkMode::kSimple && on_stack[a.node]) continue;
      stack.push_back(a.node);
      ++on_stack[a.node];
      extend(next);
      --on_stack[a.node];
      stack.pop_back();
    }
  }
};

}  // namespace

std::vector<Path> brute_force_walks(const Graph& graph, NodeId source, NodeId target,
                                    Length bound, WalkMode mode,
                                    const BruteForceOptions& options) {
  if (graph.node_count() > options.max_nodes) {
    throw Error(ErrorCode::kGuardViolation,
                "brute force limited to " + std::to_string(options.max_nodes) + " nodes");
  }
  if (source >= graph.node_count() || target >= graph.node_count()) {
    throw Error(ErrorCode::kRangeViolation, "source or target not in graph");
  }
  WalkSearch search{graph, target, bound + options.epsilon, mode, {source}, {}, {}};
  search.on_stack.assign(graph.node_count(), 0);
  search.on_stack[source] = 1;
  search.extend(0.0);
  return std::move(search.out);
}

}  // namespace pathtree
