#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "mec/enumerate.hpp"
#include "mec/generators.hpp"
#include "mec/matching_engine.hpp"
#include "mec/oracle.hpp"
#include "mec/rng.hpp"
#include "mec/vizing.hpp"

using namespace mec;

namespace {

// canonical key by trying every permutation
uint64_t brute_key(int n, const std::vector<std::vector<char>>& adj) {
  std::vector<int> p(static_cast<size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  uint64_t best = ~uint64_t{0};
  do {
    uint64_t bits = 0;
    int b = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j, ++b)
        if (adj[static_cast<size_t>(p[static_cast<size_t>(i)])][static_cast<size_t>(p[static_cast<size_t>(j)])]) bits |= uint64_t{1} << b;
    best = std::min(best, bits);
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

}  // namespace

TEST(Oracle, ChromaticIndexBaselines) {
  EXPECT_EQ(oracle::brute_chromatic_index(cycle_graph(6)).value, 2);
  EXPECT_EQ(oracle::brute_chromatic_index(cycle_graph(5)).value, 3);
  EXPECT_EQ(oracle::brute_chromatic_index(complete_graph(4)).value, 3);
  auto p = oracle::brute_chromatic_index(petersen_graph());
  EXPECT_EQ(p.value, 4);
  EXPECT_TRUE(oracle::verify_proper(petersen_graph(), p.witness));
  EXPECT_EQ(oracle::brute_chromatic_index(Graph(3)).value, 0);
  EXPECT_THROW(oracle::brute_chromatic_index(complete_graph(8)), GraphError);
}

TEST(Oracle, AugmentingPathExamples) {
  auto e = make_instance(path_graph(2), 1);
  auto p = oracle::brute_augmenting_path(e, {}, Matching(2), 3);
  ASSERT_TRUE(p.has_value());
  EXPECT_EQ(*p, (std::vector<Vertex>{0, 1}));

  auto c6 = make_instance(cycle_graph(6), 2);
  EXPECT_FALSE(oracle::brute_augmenting_path(c6, {}, Matching::from_edges(c6.graph, {{0, 1}, {2, 3}, {4, 5}}), 9));
  EXPECT_THROW(oracle::brute_augmenting_path(rotation_cycle(61), {}, Matching(61), 3), GraphError);
}

TEST(Oracle, UnhappyDefinitionAgreesWithEngine) {
  for (uint64_t seed = 0; seed < 30; ++seed) {
    auto inst = random_regular(40, 3, seed % 2 == 0, seed);
    auto k = build_K(inst, 1, 10);
    Rng rng(seed);
    auto es = inst.graph.edges();
    shuffle_in_place(rng, es);
    Matching m(inst.graph.n());
    for (size_t i = 0; i < es.size() / 3; ++i)
      if (!m.covered(es[i].u) && !m.covered(es[i].v)) m.add(es[i].u, es[i].v);
    EXPECT_EQ(oracle::unhappy_from_definition(inst, k.K, m), unhappy_set(inst, k, m));
  }
}

TEST(Oracle, TutteExamplesAndCrossCheck) {
  EXPECT_TRUE(tutte_check(cycle_graph(5), {}).exists);
  auto k4p = Graph::from_edges(5, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {0, 4}});
  EXPECT_TRUE(tutte_check(k4p, {0, 1, 2, 3}).exists);
  auto claw = tutte_check(star_graph(3), {1, 2, 3});
  EXPECT_FALSE(claw.exists);
  EXPECT_EQ(claw.violating_set, (VertexSet{0}));
  EXPECT_THROW(tutte_check(cycle_graph(21), {}), GraphError);

  Rng rng(17);
  for (uint64_t seed = 0; seed < 150; ++seed) {
    int n = 4 + static_cast<int>(seed % 11);
    std::vector<Edge> es;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (uniform01(rng) < 0.25) es.emplace_back(i, j);
    Graph g = Graph::from_edges(n, es);
    VertexSet Z;
    for (Vertex v = 0; v < n; ++v)
      if (uniform01(rng) < 0.6) Z.push_back(v);
    auto t = tutte_check(g, Z);
    EXPECT_EQ(t.exists, oracle::exhaustive_cover_exists(g, Z)) << seed;
    if (t.exists) {
      ASSERT_TRUE(t.witness.has_value());
      for (Vertex z : Z) EXPECT_TRUE(t.witness->covered(z));
    } else {
      // the certificate re-checks: more odd components inside Z than |S|
      uint32_t S = 0, Zm = 0;
      for (Vertex s : t.violating_set) S |= 1u << s;
      for (Vertex z : Z) Zm |= 1u << z;
      EXPECT_GT(odd_components_inside(g, S, Zm), static_cast<int>(t.violating_set.size()));
    }
  }
}

TEST(Oracle, VerifyProper) {
  auto c6 = cycle_graph(6);
  EdgeColoring alt;
  for (auto e : c6.edges()) alt[e] = (std::min(e.u, e.v) == 0 && std::max(e.u, e.v) == 5) ? 2 : (e.u % 2 == 0 ? 1 : 2);
  EXPECT_TRUE(oracle::verify_proper(c6, alt));
  EdgeColoring bad = alt;
  bad[Edge(0, 1)] = 2;
  EXPECT_FALSE(oracle::verify_proper(c6, bad));
  EXPECT_TRUE(oracle::verify_proper(c6, std::vector<std::vector<Edge>>{{{0, 1}, {2, 3}}, {{1, 2}}}));
  EXPECT_FALSE(oracle::verify_proper(c6, std::vector<std::vector<Edge>>{{{0, 1}, {1, 2}}}));
}

TEST(Oracle, EnumerationCounts) {
  auto all = connected_graphs_up_to(7, 3);
  EXPECT_EQ(all[1].size(), 1u);
  EXPECT_EQ(all[2].size(), 1u);
  EXPECT_EQ(all[3].size(), 2u);
  EXPECT_EQ(all[4].size(), 6u);
  EXPECT_EQ(all[5].size(), 10u);
  // n = 6 against a brute-force count over all labelled graphs
  std::set<uint64_t> keys;
  const int n = 6;
  for (uint32_t mask = 0; mask < (1u << 15); ++mask) {
    std::vector<Edge> es;
    int b = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j, ++b)
        if (mask >> b & 1u) es.emplace_back(i, j);
    Graph g = Graph::from_edges(n, es);
    if (g.delta() > 3 || connected_components(g).size() != 1) continue;
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (auto e : es) adj[e.u][e.v] = adj[e.v][e.u] = 1;
    keys.insert(brute_key(n, adj));
  }
  EXPECT_EQ(all[6].size(), keys.size());
  for (const auto& level : all)
    for (const Graph& g : level) {
      EXPECT_LE(g.delta(), 3);
      EXPECT_EQ(connected_components(g).size(), 1u);
    }
}

TEST(Oracle, CanonicalFormIsInvariant) {
  Rng rng(3);
  for (uint64_t seed = 0; seed < 50; ++seed) {
    auto g = random_regular(10, 3, seed % 2 == 0, seed).graph;
    std::vector<Vertex> perm(10);
    std::iota(perm.begin(), perm.end(), 0);
    shuffle_in_place(rng, perm);
    std::vector<Edge> es;
    for (auto e : g.edges()) es.emplace_back(perm[static_cast<size_t>(e.u)], perm[static_cast<size_t>(e.v)]);
    EXPECT_EQ(canonical_form(g), canonical_form(Graph::from_edges(10, es)));
  }
  EXPECT_FALSE(canonical_form(cycle_graph(6)) == canonical_form(Graph::from_edges(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}})));
}

TEST(Oracle, EngineAgreesOnSmallEnumeration) {
  auto all = connected_graphs_up_to(8, 3);
  int runs = 0;
  for (const auto& level : all)
    for (const Graph& g : level) {
      if (g.num_edges() == 0) continue;
      auto inst = make_instance(g, g.delta());
      auto k = build_K(inst, 1, 10);
      EngineParams p;
      p.n0 = 7;
      auto st = run_rounds(inst, k, p);
      EXPECT_FALSE(oracle::brute_augmenting_path(inst, k.K, st.matching, p.n0).has_value());
      ++runs;
    }
  EXPECT_GT(runs, 200);
}

TEST(Oracle, VizingWithinOracleBounds) {
  auto all = connected_graphs_up_to(7, 3);
  for (const auto& level : all)
    for (const Graph& g : level) {
      auto c = vizing_color(g);
      EXPECT_TRUE(oracle::verify_proper(g, c));
      EXPECT_GE(distinct_colors(c), oracle::brute_chromatic_index(g).value);
      EXPECT_LE(max_color(c), g.delta() + 1);
    }
}
