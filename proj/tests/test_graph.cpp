#include <gtest/gtest.h>

#include <sstream>

#include "mec/generators.hpp"
#include "mec/graph.hpp"
#include "mec/rng.hpp"

using namespace mec;

namespace {

Graph k4_with_pendant() {
  return Graph::from_edges(5, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {0, 4}});
}

Graph random_graph(int n, double p, uint64_t seed) {
  Rng rng(seed);
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (uniform01(rng) < p) es.emplace_back(i, j);
  return Graph::from_edges(n, es);
}

// all-pairs distances by Floyd-Warshall, independent of the BFS code
std::vector<std::vector<int>> apsp(const Graph& g) {
  const int n = g.n(), INF = 1 << 20;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, INF));
  for (int i = 0; i < n; ++i) d[i][i] = 0;
  for (auto e : g.edges()) d[e.u][e.v] = d[e.v][e.u] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

}  // namespace

TEST(GraphCore, RejectsLoopsAndParallelEdges) {
  EXPECT_THROW(Graph::from_edges(3, {{0, 0}}), GraphError);
  EXPECT_THROW(Graph::from_edges(3, {{0, 1}, {1, 0}}), GraphError);
  EXPECT_THROW(Graph::from_edges(2, {{0, 2}}), GraphError);
}

TEST(GraphCore, AdjacencyIsSymmetricAndDeltaIsExact) {
  Graph g = random_graph(30, 0.2, 7);
  int maxdeg = 0;
  for (Vertex v = 0; v < g.n(); ++v) {
    maxdeg = std::max(maxdeg, g.degree(v));
    for (Vertex w : g.neighbors(v)) {
      EXPECT_NE(v, w);
      EXPECT_TRUE(g.adjacent(w, v));
    }
  }
  EXPECT_EQ(g.delta(), maxdeg);
}

TEST(GraphCore, KNeighborhoodExamples) {
  EXPECT_EQ(k_neighborhood(path_graph(4), {0}, 2), (VertexSet{0, 1, 2}));
  EXPECT_TRUE(k_neighborhood(cycle_graph(5), {}, 5).empty());
  EXPECT_EQ(k_neighborhood(cycle_graph(6), {0}, 3).size(), 6u);
  EXPECT_THROW(k_neighborhood(cycle_graph(6), {0}, -1), GraphError);
}

TEST(GraphCore, KNeighborhoodIsMonotone) {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    Graph g = random_graph(25, 0.1, seed);
    for (int k = 0; k < 5; ++k) EXPECT_TRUE(is_subset(k_neighborhood(g, {0, 3}, k), k_neighborhood(g, {0, 3}, k + 1)));
  }
}

TEST(GraphCore, SparseDenseOnSixCycle) {
  Graph c6 = cycle_graph(6);
  auto a = check_sparse_dense(c6, {0, 3}, 2);
  EXPECT_TRUE(a.sparse);
  // every vertex of C6 is within distance 1 of {0,3}, so the set is 2-dense
  EXPECT_TRUE(a.dense);
  auto b = check_sparse_dense(c6, {0, 3}, 1);
  EXPECT_TRUE(b.sparse);
  EXPECT_TRUE(b.dense);
  auto c = check_sparse_dense(c6, {0, 3}, 3);
  EXPECT_FALSE(c.sparse);
  auto z = check_sparse_dense(c6, {0}, 2);
  EXPECT_FALSE(z.dense);
}

TEST(GraphCore, SparseDenseEdgeCases) {
  Graph g = cycle_graph(5);
  VertexSet all{0, 1, 2, 3, 4};
  EXPECT_FALSE(check_sparse_dense(g, all, 1).sparse);
  EXPECT_TRUE(check_sparse_dense(g, all, 1).dense);
  Graph empty4(4);
  EXPECT_TRUE(check_sparse_dense(empty4, {0, 1, 2, 3}, 1).sparse);
  EXPECT_TRUE(check_sparse_dense(g, {}, 3).sparse);
  EXPECT_FALSE(check_sparse_dense(g, {}, 3).dense);
  EXPECT_TRUE(check_sparse_dense(Graph(0), {}, 0).dense);
}

TEST(GraphCore, SparseDenseAgreesWithAllPairsOracle) {
  Rng rng(99);
  for (uint64_t seed = 0; seed < 40; ++seed) {
    int n = 5 + static_cast<int>(seed % 60);
    Graph g = random_graph(n, 3.0 / n, seed);
    auto d = apsp(g);
    VertexSet a;
    for (Vertex v = 0; v < n; ++v)
      if (uniform01(rng) < 0.2) a.push_back(v);
    for (int r = 0; r <= 4; ++r) {
      bool sparse = true, dense = true;
      for (Vertex x : a)
        for (Vertex y : a)
          if (x != y && d[x][y] <= r) sparse = false;
      for (Vertex v = 0; v < n; ++v) {
        int best = 1 << 20;
        for (Vertex x : a) best = std::min(best, d[v][x]);
        if (best > r) dense = false;
      }
      auto got = check_sparse_dense(g, a, r);
      EXPECT_EQ(got.sparse, sparse) << "seed " << seed << " r " << r;
      EXPECT_EQ(got.dense, dense) << "seed " << seed << " r " << r;
    }
  }
}

TEST(GraphCore, EdgeBoundaryExamples) {
  EXPECT_EQ(edge_boundary(k4_with_pendant(), {0, 1, 2, 3}).count, 1u);
  EXPECT_EQ(edge_boundary(cycle_graph(6), {0, 1, 2}).count, 2u);
  EXPECT_EQ(edge_boundary(star_graph(5), {0}).count, 5u);
}

TEST(GraphCore, EdgeBoundaryMatchesDegreeSum) {
  Rng rng(3);
  for (uint64_t seed = 0; seed < 30; ++seed) {
    Graph g = random_graph(30, 0.15, seed);
    VertexSet a;
    for (Vertex v = 0; v < g.n(); ++v)
      if (uniform01(rng) < 0.4) a.push_back(v);
    size_t degsum = 0;
    for (Vertex v : a) degsum += static_cast<size_t>(g.degree(v));
    auto b = edge_boundary(g, a);
    EXPECT_EQ(b.count, degsum - 2 * internal_edge_count(g, a));
    for (auto e : b.edges) EXPECT_NE(contains(a, e.u), contains(a, e.v));
  }
}

TEST(GraphCore, ConnectedComponentsExamples) {
  Graph two_triangles = Graph::from_edges(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  auto c = connected_components(two_triangles);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0], (VertexSet{0, 1, 2}));
  EXPECT_EQ(c[1], (VertexSet{3, 4, 5}));
  EXPECT_EQ(connected_components(Graph(4)).size(), 4u);
  EXPECT_EQ(connected_components(cycle_graph(10)).size(), 1u);
}

TEST(GraphCore, MatchingRejectsOverlap) {
  Graph g = path_graph(3);
  EXPECT_THROW(Matching::from_edges(g, {{0, 1}, {1, 2}}), GraphError);
  EXPECT_THROW(Matching::from_edges(g, {{0, 2}}), GraphError);
  Matching m = Matching::from_edges(g, {{0, 1}});
  EXPECT_TRUE(m.valid_in(g));
  EXPECT_EQ(m.partner(1), 0);
  EXPECT_FALSE(m.covered(2));
}

TEST(GraphCore, EdgeListParsing) {
  std::istringstream in("# a square\n0 1\n1 2\n\n2 3 # trailing\n3 0\n");
  auto d = parse_edge_list(in);
  EXPECT_EQ(d.n, 4);
  EXPECT_EQ(d.edges.size(), 4u);
  std::istringstream hdr("n 6\n0 1\n");
  EXPECT_EQ(parse_edge_list(hdr).n, 6);
  std::istringstream bad("0 1\n1 x\n");
  try {
    parse_edge_list(bad);
    FAIL();
  } catch (const GraphError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  std::istringstream dup("0 1\n1 0\n");
  EXPECT_THROW(parse_edge_list(dup), GraphError);
}

TEST(GraphCore, EdgeListRoundTrip) {
  Graph g = random_graph(20, 0.2, 5);
  std::istringstream in(to_edge_list(g));
  auto d = parse_edge_list(in);
  Graph h = Graph::from_edges(d.n, d.edges);
  EXPECT_EQ(h.edges(), g.edges());
  EXPECT_EQ(h.n(), g.n());
}

TEST(GraphCore, WithoutEdgesProducesNewGraph) {
  Graph g = cycle_graph(5);
  Graph h = g.without_edges({{0, 1}});
  EXPECT_EQ(g.num_edges(), 5u);
  EXPECT_EQ(h.num_edges(), 4u);
  EXPECT_FALSE(h.adjacent(0, 1));
}
