#include <gtest/gtest.h>

#include "mec/coloring.hpp"
#include "mec/generators.hpp"
#include "mec/oracle.hpp"
#include "mec/rng.hpp"
#include "mec/vizing.hpp"

using namespace mec;

namespace {

Graph random_graph(int n, double p, uint64_t seed) {
  Rng rng(seed);
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (uniform01(rng) < p) es.emplace_back(i, j);
  return Graph::from_edges(n, es);
}

// independent of is_proper: count colors at each vertex by edge scan
bool proper_by_scan(const Graph& g, const EdgeColoring& c) {
  if (c.size() != g.num_edges()) return false;
  for (Vertex v = 0; v < g.n(); ++v) {
    std::vector<int> seen;
    for (Vertex w : g.neighbors(v)) {
      auto it = c.find(Edge(v, w));
      if (it == c.end()) return false;
      seen.push_back(it->second);
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return false;
  }
  return true;
}

}  // namespace

TEST(Vizing, Examples) {
  auto c5 = vizing_color(cycle_graph(5));
  EXPECT_TRUE(proper_by_scan(cycle_graph(5), c5));
  EXPECT_EQ(distinct_colors(c5), 3);

  auto k4 = vizing_color(complete_graph(4));
  EXPECT_TRUE(proper_by_scan(complete_graph(4), k4));
  EXPECT_LE(max_color(k4), 4);

  auto star = vizing_color(star_graph(6));
  EXPECT_EQ(distinct_colors(star), 6);

  EXPECT_TRUE(vizing_color(Graph(3)).empty());
}

TEST(Vizing, RandomGraphsUseAtMostDeltaPlusOne) {
  for (uint64_t seed = 0; seed < 60; ++seed) {
    Graph g = random_graph(8 + static_cast<int>(seed % 40), 0.1 + 0.01 * static_cast<double>(seed % 30), seed);
    auto c = vizing_color(g);
    EXPECT_TRUE(proper_by_scan(g, c)) << seed;
    EXPECT_TRUE(is_proper(g, c));
    EXPECT_LE(max_color(c), g.delta() + 1) << seed;
  }
}

TEST(Vizing, FournierWhenMaxDegreeVerticesIndependent) {
  // a 3-regular base with pendant vertices planted far apart: Delta = 4 vertices are independent
  for (uint64_t seed = 0; seed < 15; ++seed) {
    auto base = random_regular(60, 3, false, seed);
    auto planted = plant_high_degree(base, 2, 0.2, seed);
    auto c = fournier_color(planted.graph);
    ASSERT_TRUE(c.has_value()) << seed;
    EXPECT_TRUE(proper_by_scan(planted.graph, *c));
    EXPECT_LE(max_color(*c), planted.graph.delta());
  }
  // Petersen: 3-regular so every vertex has max degree; precondition fails
  EXPECT_FALSE(fournier_color(petersen_graph()).has_value());
  // odd cycle with one chord-free pendant: Delta=3 at a single vertex
  Graph c5p = Graph::from_edges(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 5}});
  auto c = fournier_color(c5p);
  ASSERT_TRUE(c.has_value());
  EXPECT_TRUE(proper_by_scan(c5p, *c));
  EXPECT_LE(max_color(*c), 3);
}

TEST(Vizing, KonigOnBipartite) {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    auto inst = random_regular(40, 2 + static_cast<int>(seed % 4), true, seed);
    auto c = konig_color(inst.graph);
    EXPECT_TRUE(proper_by_scan(inst.graph, c));
    EXPECT_EQ(max_color(c), inst.d);
  }
  EXPECT_EQ(max_color(konig_color(complete_bipartite(3, 5))), 5);
  EXPECT_THROW(konig_color(cycle_graph(5)), GraphError);
}

TEST(Vizing, MisraGriesRespectsPalette) {
  // an odd cycle has no 2-colouring, so a palette of 2 must be refused
  EXPECT_FALSE(misra_gries(cycle_graph(5), 2, default_order(cycle_graph(5))).has_value());
}

TEST(CompleteColoring, StaysInsidePalette) {
  for (uint64_t s = 0; s < 20; ++s) {
    for (bool bip : {true, false}) {
      auto g = random_regular(60, 3 + static_cast<int>(s % 3), bip, s).graph;
      EdgeColoring full = bip ? konig_color(g) : vizing_color(g);
      // drop every fifth edge and refill
      EdgeColoring partial;
      int i = 0;
      for (const auto& [e, c] : full)
        if (i++ % 5) partial[e] = c;
      auto done = complete_coloring(g, partial);
      EXPECT_TRUE(oracle::verify_proper(g, done));
      EXPECT_EQ(done.size(), g.num_edges());
      EXPECT_LE(max_color(done), std::max(max_color(partial), bip ? g.delta() : g.delta() + 1));
    }
  }
  auto p3 = path_graph(3);
  EXPECT_THROW(complete_coloring(p3, {{Edge(0, 1), 1}, {Edge(1, 2), 1}}), GraphError);
}
