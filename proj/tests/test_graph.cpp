#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "pathtree/error.hpp"
#include "pathtree/graph.hpp"

using namespace pathtree;
using namespace pathtree::testing;

namespace {

ErrorCode build_error(const std::vector<EdgeRecord>& edges, bool directed) {
  try {
    (void)Graph::build(edges, directed);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kParseError;
}

}  // namespace

TEST_CASE("build: empty input gives an empty graph") {
  const Graph g = Graph::build(std::vector<EdgeRecord>{}, false);
  CHECK(g.node_count() == 0);
  CHECK(g.arc_count() == 0);
}

TEST_CASE("build: reference graph has 7 nodes and 20 arcs") {
  const Graph g = reference_graph();
  CHECK(g.node_count() == 7);
  CHECK(g.arc_count() == 20);
  CHECK(g.edge_count() == 10);
  CHECK(g.has_arc(C, T));
  CHECK(g.has_arc(T, C));
  CHECK_FALSE(g.has_arc(S, T));
}

TEST_CASE("build: validation errors") {
  CHECK(build_error({{0, 1, 0.0}}, false) == ErrorCode::kNonPositiveWeight);
  CHECK(build_error({{0, 1, -2.0}}, true) == ErrorCode::kNonPositiveWeight);
  CHECK(build_error({{0, 1, std::numeric_limits<double>::quiet_NaN()}}, true) ==
        ErrorCode::kNonPositiveWeight);
  CHECK(build_error({{0, 1, 1.0}, {1, 0, 2.0}}, false) == ErrorCode::kDuplicateEdge);
  CHECK(build_error({{0, 1, 1.0}, {0, 1, 1.0}}, true) == ErrorCode::kDuplicateEdge);
  CHECK(build_error({{0, std::uint64_t{1} << 40, 1.0}}, true) == ErrorCode::kIdOverflow);
  // Antiparallel arcs are distinct in a directed graph.
  CHECK_NOTHROW(Graph::build(std::vector<EdgeRecord>{{0, 1}, {1, 0}}, true));
}

TEST_CASE("build: self-loop is a single arc; min_nodes pads isolated nodes") {
  const Graph g = Graph::build(std::vector<EdgeRecord>{{2, 2, 1.5}, {0, 1}}, false, 5);
  CHECK(g.node_count() == 5);
  CHECK(g.arc_count() == 3);
  CHECK(g.weight(2, 2) == doctest::Approx(1.5));
  CHECK(g.degree(4) == 0);
}

TEST_CASE("in/out views are consistent") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 50; ++round) {
    const auto c = random_corpus_case(rng);
    const Graph& g = c.graph;
    std::size_t in_total = 0;
    for (NodeId v = 0; v < g.node_count(); ++v) {
      for (const Arc& a : g.in(v)) {
        ++in_total;
        REQUIRE(g.weight(a.node, v).has_value());
        CHECK(*g.weight(a.node, v) == a.weight);
      }
      const auto out = g.out(v);
      CHECK(std::is_sorted(out.begin(), out.end(),
                           [](const Arc& x, const Arc& y) { return x.node < y.node; }));
      if (!g.directed()) {
        std::vector<std::pair<NodeId, Length>> o, i;
        for (const Arc& a : g.out(v)) o.push_back({a.node, a.weight});
        for (const Arc& a : g.in(v)) i.push_back({a.node, a.weight});
        std::sort(o.begin(), o.end());
        std::sort(i.begin(), i.end());
        CHECK(o == i);
      }
    }
    CHECK(in_total == g.arc_count());
  }
}

TEST_CASE("shortest_distances: examples") {
  const Graph single = Graph::build(std::vector<EdgeRecord>{}, false, 1);
  CHECK(shortest_distances(single, 0, Direction::kFromSource).dist == std::vector<Length>{0.0});

  const Graph g = reference_graph();
  const auto d = shortest_distances(g, S, Direction::kFromSource);
  CHECK(d[C] == 1.0);
  CHECK(d[A] == 2.0);
  CHECK(d[T] == 2.0);

  const Graph two = Graph::build(std::vector<EdgeRecord>{{0, 1}, {2, 3}}, false);
  const auto d2 = shortest_distances(two, 0, Direction::kFromSource);
  CHECK(d2[1] == 1.0);
  CHECK(d2[2] == kInfinity);
  CHECK(d2[3] == kInfinity);

  CHECK_THROWS_AS(shortest_distances(two, 7, Direction::kFromSource), Error);
}

TEST_CASE("shortest_distances: directed to-target uses reversed arcs") {
  const Graph g = Graph::build(std::vector<EdgeRecord>{{0, 1, 2.0}, {1, 2, 3.0}}, true);
  const auto to = shortest_distances(g, 2, Direction::kToTarget);
  CHECK(to[0] == 5.0);
  CHECK(to[1] == 3.0);
  const auto from = shortest_distances(g, 2, Direction::kFromSource);
  CHECK(from[0] == kInfinity);
}

TEST_CASE("shortest_distances matches Bellman-Ford and the triangle inequality") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 200; ++round) {
    const auto c = random_corpus_case(rng);
    const auto d = shortest_distances(c.graph, c.source, Direction::kFromSource);
    CHECK(d.dist == bellman_ford(c.graph, c.source));
    for (NodeId u = 0; u < c.graph.node_count(); ++u) {
      for (const Arc& a : c.graph.out(u)) CHECK(d[a.node] <= d[u] + a.weight + 1e-9);
    }
  }
}

TEST_CASE("sorted_in_neighbors: ordering and tie-break") {
  // x=0 with in-neighbours 1 (key 3) and 2 (key 1).
  const Graph g = Graph::build(
      std::vector<EdgeRecord>{{3, 1, 2.0}, {3, 2, 0.5}, {1, 0, 1.0}, {2, 0, 0.5}}, true);
  const auto d = shortest_distances(g, 3, Direction::kFromSource);
  const auto adj = sorted_in_neighbors(g, d);
  REQUIRE(adj.in(0).size() == 2);
  CHECK(adj.in(0)[0].node == 2);
  CHECK(adj.in(0)[1].node == 1);
  CHECK(adj.in(0)[0].key == doctest::Approx(1.0));
  CHECK(adj.in(0)[1].key == doctest::Approx(3.0));

  const Graph f = reference_graph();
  const auto fa = sorted_in_neighbors(f, shortest_distances(f, S, Direction::kFromSource));
  const auto t_in = fa.in(T);
  REQUIRE(t_in.size() == 3);
  CHECK(t_in[0].node == C);
  CHECK(t_in[1].node == A);
  CHECK(t_in[2].node == B);
  CHECK(t_in[0].key == 2.0);
  CHECK(t_in[1].key == 3.0);
  CHECK(t_in[2].key == 3.0);
}

TEST_CASE("sorted_in_neighbors: permutation with nondecreasing keys, unreachable last") {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 100; ++round) {
    const auto c = random_corpus_case(rng);
    const auto d = shortest_distances(c.graph, c.source, Direction::kFromSource);
    const auto adj = sorted_in_neighbors(c.graph, d);
    for (NodeId x = 0; x < c.graph.node_count(); ++x) {
      const auto sorted = adj.in(x);
      std::vector<NodeId> a, b;
      for (const auto& k : sorted) a.push_back(k.node);
      for (const auto& k : c.graph.in(x)) b.push_back(k.node);
      std::sort(a.begin(), a.end());
      CHECK(a == b);
      for (std::size_t i = 0; i < sorted.size(); ++i) {
        CHECK(sorted[i].key == d[sorted[i].node] + sorted[i].weight);
        if (i > 0) {
          CHECK(sorted[i - 1].key <= sorted[i].key);
          if (sorted[i - 1].key == sorted[i].key) CHECK(sorted[i - 1].node < sorted[i].node);
        }
      }
    }
  }
}
