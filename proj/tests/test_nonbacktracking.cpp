#include <doctest.h>

#include <random>
#include <set>
#include <vector>

#include "oracles.hpp"
#include "pathtree/error.hpp"
#include "pathtree/nonbacktracking.hpp"
#include "pathtree/path.hpp"

using namespace pathtree;
using namespace pathtree::testing;

namespace {

PathQuery query(NodeId s, NodeId t, Length d) {
  PathQuery q;
  q.source = s;
  q.target = t;
  q.bound = d;
  return q;
}

}  // namespace

TEST_CASE("shortest path tree: examples") {
  // a=0 b=1 t=2
  const Graph path = Graph::build(std::vector<EdgeRecord>{{0, 1}, {1, 2}}, false);
  const auto pt = build_shortest_path_tree(path, 2);
  CHECK(pt.next_hop[0] == 1);
  CHECK(pt.next_hop[1] == 2);
  CHECK(pt.next_hop[2] == kNoNode);

  const auto tt = build_shortest_path_tree(triangle_graph(), 2);
  CHECK(tt.next_hop[0] == 2);
  CHECK(tt.next_hop[1] == 2);

  // square s=0 a=1 b=2 t=3: tie broken toward the lower id.
  const Graph sq = Graph::build(std::vector<EdgeRecord>{{0, 1}, {1, 3}, {0, 2}, {2, 3}}, false);
  CHECK(build_shortest_path_tree(sq, 3).next_hop[0] == 1);

  const Graph two = Graph::build(std::vector<EdgeRecord>{{0, 1}, {2, 3}}, false);
  const auto ut = build_shortest_path_tree(two, 1);
  CHECK(ut.next_hop[2] == kNoNode);
  CHECK(ut.dist_to_target[2] == kInfinity);
}

TEST_CASE("shortest path tree invariants on random graphs") {
  std::mt19937_64 rng(99);
  for (int round = 0; round < 200; ++round) {
    const auto c = random_corpus_case(rng);
    const auto tree = build_shortest_path_tree(c.graph, c.target);
    for (NodeId b = 0; b < c.graph.node_count(); ++b) {
      const NodeId a = tree.next_hop[b];
      if (a == kNoNode) {
        CHECK((b == c.target || tree.dist_to_target[b] == kInfinity));
        continue;
      }
      CHECK(tree.dist_to_target[b] ==
            doctest::Approx(*c.graph.weight(b, a) + tree.dist_to_target[a]));
      NodeId x = b;
      for (std::size_t steps = 0; x != c.target; ++steps) {
        REQUIRE(steps < c.graph.node_count());
        x = tree.next_hop[x];
      }
    }
  }
}

TEST_CASE("nbp_distances: examples") {
  const Graph tri = triangle_graph();
  const auto tv = nbp_distances(tri, build_shortest_path_tree(tri, 2));
  CHECK(tv.value(tri, 2, 0) == 3.0);  // (t,s,u,t)
  CHECK(tv.value(tri, 0, 2) == 1.0);
  CHECK(tv.value(tri, 0, 1) == 2.0);

  const Graph path = Graph::build(std::vector<EdgeRecord>{{0, 1}, {1, 2}}, false);
  const auto pv = nbp_distances(path, build_shortest_path_tree(path, 2));
  CHECK(pv.value(path, 1, 0) == kInfinity);
  CHECK(pv.value(path, 0, 1) == 2.0);
  CHECK(pv.value(path, 2, 1) == kInfinity);
}

TEST_CASE("nbp_distances agrees with the arc-state Dijkstra oracle") {
  std::mt19937_64 rng(4242);
  for (int round = 0; round < 500; ++round) {
    const auto c = random_corpus_case(rng);
    const Graph& g = c.graph;
    const auto tree = build_shortest_path_tree(g, c.target);
    const auto nbp = nbp_distances(g, tree);
    for (NodeId a = 0; a < g.node_count(); ++a) {
      for (const Arc& arc : g.out(a)) {
        const Length got = nbp.value(g, a, arc.node);
        const Length want = nbp_state_dijkstra(g, a, arc.node, c.target);
        if (want == kInfinity) {
          CHECK(got == kInfinity);
        } else {
          CHECK(got == doctest::Approx(want).epsilon(1e-12));
        }
        // Lower bound by the ordinary distance, with equality off the tree.
        const Length simple = arc.weight + tree.dist_to_target[arc.node];
        CHECK(got >= simple - 1e-9);
        if (!tree.has_edge(arc.node, a)) {
          if (simple == kInfinity) {
            CHECK(got == kInfinity);
          } else {
            CHECK(got == doctest::Approx(simple));
          }
        }
      }
    }
  }
}

TEST_CASE("nbp_pathfind: examples") {
  const Graph tri = triangle_graph();
  CHECK(as_set(nbp_pathfind(tri, query(0, 2, 3))) ==
        std::set<std::vector<NodeId>>{{0, 2}, {0, 1, 2}});
  const Graph ref = reference_graph();
  CHECK(as_set(nbp_pathfind(ref, query(S, T, 3))) == as_set(pathfind(ref, query(S, T, 3))));
  CHECK(nbp_pathfind(ref, query(S, T, 1)).empty());
  CHECK_THROWS_AS(nbp_pathfind(ref, query(S, S, 3)), Error);
}

TEST_CASE("nbp_pathfind equals brute-force nonbacktracking walks") {
  std::mt19937_64 rng(777);
  for (int round = 0; round < 300; ++round) {
    const auto c = random_corpus_case(rng);
    const auto d = shortest_distances(c.graph, c.source, Direction::kFromSource);
    const Length bound = d[c.target] + static_cast<double>(rng() % 5);
    const auto got = nbp_pathfind(c.graph, query(c.source, c.target, bound));
    const auto want =
        brute_force_walks(c.graph, c.source, c.target, bound, WalkMode::kNonbacktracking);
    CHECK(got.size() == want.size());
    CHECK(as_set(got) == as_set(want));
    const auto all = as_set(pathfind(c.graph, query(c.source, c.target, bound)));
    for (const auto& p : got) {
      CHECK(is_nonbacktracking(p));
      CHECK(all.count(p.nodes) == 1);
      CHECK(walk_length(c.graph, p.nodes) == doctest::Approx(p.length));
    }
  }
}

TEST_CASE("nbp_pathfind respects budgets") {
  // Cycle of length 3 plus tail: many nonbacktracking loops under a large bound.
  const Graph g = Graph::build(std::vector<EdgeRecord>{{0, 1}, {1, 2}, {2, 0}, {2, 3}}, false);
  auto q = query(0, 3, 30);
  q.max_paths = 3;
  CHECK_THROWS_AS(nbp_pathfind(g, q), BudgetExceeded);
}
