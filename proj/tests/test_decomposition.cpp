#include <gtest/gtest.h>

#include <map>
#include <set>

#include "mec/decomposition.hpp"
#include "mec/generators.hpp"
#include "mec/oracle.hpp"
#include "mec/rng.hpp"

using namespace mec;

namespace {

// degree census written independently of verify_orientation
bool census_ok(const Graph& g, const Orientation& o, bool disjoint = false) {
  std::multiset<std::pair<Vertex, Vertex>> und;
  for (const auto& f : o.arcs) {
    std::map<Vertex, int> out, in;
    for (auto [u, v] : f) {
      out[u]++;
      in[v]++;
      und.insert({std::min(u, v), std::max(u, v)});
    }
    for (auto& [v, c] : out)
      if (c > 1 || (disjoint && in.count(v))) return false;
    for (auto& [v, c] : in)
      if (c > 1) return false;
  }
  std::multiset<std::pair<Vertex, Vertex>> want;
  for (const Edge& e : g.edges()) want.insert({e.u, e.v});
  return und == want;
}

size_t largest_comp(int n, const std::vector<Edge>& es) {
  // union-find, separate from connected_components
  std::vector<int> p(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<size_t>(i)] = i;
  auto find = [&](int x) {
    while (p[static_cast<size_t>(x)] != x) x = p[static_cast<size_t>(x)] = p[static_cast<size_t>(p[static_cast<size_t>(x)])];
    return x;
  };
  for (const Edge& e : es) p[static_cast<size_t>(find(e.u))] = find(e.v);
  std::map<int, size_t> sz;
  std::set<Vertex> touched;
  for (const Edge& e : es) touched.insert(e.u), touched.insert(e.v);
  size_t best = 0;
  for (Vertex v : touched) best = std::max(best, ++sz[find(v)]);
  return best;
}

Graph random_bounded(int n, int maxdeg, double p, uint64_t seed) {
  Rng rng(seed);
  std::vector<int> deg(static_cast<size_t>(n), 0);
  std::vector<Edge> es;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (uniform01(rng) < p && deg[static_cast<size_t>(u)] < maxdeg && deg[static_cast<size_t>(v)] < maxdeg) {
        es.emplace_back(u, v);
        ++deg[static_cast<size_t>(u)];
        ++deg[static_cast<size_t>(v)];
      }
  return Graph::from_edges(n, es);
}

}  // namespace

TEST(Orient, Examples) {
  auto c6 = cycle_graph(6);
  auto o = orient_into_functions(c6, 2, sparse_labeling(c6, 2));
  EXPECT_LE(o.k(), 2);
  EXPECT_TRUE(census_ok(c6, o));

  auto k4 = complete_graph(4);
  o = orient_into_functions(k4, 3, sparse_labeling(k4, 2));
  EXPECT_LE(o.k(), 3);
  EXPECT_TRUE(census_ok(k4, o));
  EXPECT_TRUE(verify_orientation(k4, o));

  auto e = Graph::from_edges(2, {{0, 1}});
  o = orient_into_functions(e, 1, sparse_labeling(e, 2));
  ASSERT_EQ(o.k(), 1);
  EXPECT_EQ(o.arcs[0].size(), 1u);
}

TEST(Orient, RandomGraphsStayWithinD) {
  for (int d = 1; d <= 6; ++d)
    for (uint64_t s = 0; s < 15; ++s) {
      auto g = random_bounded(40, d, 0.15, 100 * d + s);
      auto o = orient_into_functions(g, d, sparse_labeling(g, 2));
      EXPECT_LE(o.k(), d);
      EXPECT_TRUE(census_ok(g, o)) << "d=" << d << " seed=" << s;
    }
}

TEST(Orient, Preconditions) {
  auto k4 = complete_graph(4);
  EXPECT_THROW(orient_into_functions(k4, 2, sparse_labeling(k4, 2)), GraphError);
  auto c6 = cycle_graph(6);
  EXPECT_THROW(orient_into_functions(c6, 2, labeling_from({1, 2, 1, 2, 1, 2}, 2)), GraphError);
}

TEST(Greedy, Examples) {
  auto p4 = path_graph(4);
  auto m = greedy_matchings(p4);
  EXPECT_EQ(m.size(), 2u);
  EXPECT_TRUE(oracle::verify_proper(p4, m));
  auto k4 = complete_graph(4);
  m = greedy_matchings(k4);
  EXPECT_LE(m.size(), 5u);
  EXPECT_TRUE(oracle::verify_proper(k4, m));
  EXPECT_TRUE(greedy_matchings(Graph(5)).empty());
}

TEST(Greedy, BoundOnRandomGraphs) {
  for (uint64_t s = 0; s < 30; ++s) {
    auto g = random_bounded(50, 2 + static_cast<int>(s % 5), 0.2, s);
    auto m = greedy_matchings(g);
    EXPECT_LE(static_cast<int>(m.size()), std::max(0, 2 * g.delta() - 1));
    EXPECT_TRUE(oracle::verify_proper(g, m));
    size_t total = 0;
    for (auto& c : m) total += c.size();
    EXPECT_EQ(total, g.num_edges());
  }
}

TEST(Breaker, LongCycle) {
  auto c = cycle_graph(60).edges();
  auto r = matching_breaker(60, {c}, {}, {8, 16});
  std::set<Edge> M(r.M.begin(), r.M.end());
  std::vector<Edge> rest;
  for (const Edge& e : c)
    if (!M.count(e)) rest.push_back(e);
  EXPECT_LE(largest_comp(60, rest), 20u);
  EXPECT_EQ(r.largest[1], largest_comp(60, rest));
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.bound, 36u);
}

TEST(Breaker, SmallCases) {
  auto r = matching_breaker(2, {{Edge(0, 1)}}, {}, {8});
  EXPECT_LE(r.largest[1], 2u);
  EXPECT_TRUE(r.ok);

  std::vector<Edge> f0, f1;
  auto c8 = cycle_graph(8).edges();
  for (const Edge& e : c8) (std::min(e.u, e.v) % 2 == 0 && !(e.u == 0 && e.v == 7) ? f0 : f1).push_back(e);
  ASSERT_EQ(f0.size(), 4u);
  r = matching_breaker(8, {f1}, f0, default_breaker_schedule());
  EXPECT_TRUE(r.ok);
  EXPECT_LE(r.largest[0], r.bound);
  EXPECT_THROW(matching_breaker(8, {f1}, c8, {8}), GraphError);
  EXPECT_THROW(matching_breaker(8, {c8}, f0, {8}), GraphError);
  EXPECT_THROW(matching_breaker(8, {f1}, f0, {}), GraphError);
}

TEST(Breaker, RandomDegreeTwoFamilies) {
  for (uint64_t s = 0; s < 20; ++s) {
    const int n = 300;
    auto inst = random_regular(n, 4, false, s);
    auto classes = color_classes(edge_color(inst, ColorMode::General).colors);
    std::vector<std::vector<Edge>> F;
    for (size_t i = 0; i + 2 < classes.size(); i += 2) {
      auto f = classes[i];
      f.insert(f.end(), classes[i + 1].begin(), classes[i + 1].end());
      F.push_back(f);
    }
    auto F0 = classes.back();
    auto r = matching_breaker(n, F, F0, default_breaker_schedule());
    EXPECT_LE(Graph::from_edges(n, r.M).delta(), 1);
    std::set<Edge> M(r.M.begin(), r.M.end());
    auto f0m = F0;
    f0m.insert(f0m.end(), r.M.begin(), r.M.end());
    EXPECT_EQ(largest_comp(n, f0m), r.largest[0]);
    for (size_t j = 0; j < F.size(); ++j) {
      std::vector<Edge> rest;
      for (const Edge& e : F[j])
        if (!M.count(e)) rest.push_back(e);
      EXPECT_EQ(largest_comp(n, rest), r.largest[j + 1]);
    }
    EXPECT_TRUE(r.ok) << "seed " << s;
    // a short schedule may miss the bound but must say so
    auto short_run = matching_breaker(n, F, F0, {4});
    bool within = true;
    for (size_t x : short_run.largest) within = within && x <= short_run.bound;
    EXPECT_EQ(short_run.ok, within);
  }
}

TEST(Generators, Examples) {
  auto c8 = make_instance(cycle_graph(8), 2);
  auto rel = generator_count(c8, true);
  EXPECT_GE(rel.maps.k(), 1);
  EXPECT_LE(rel.maps.k(), 2);
  EXPECT_TRUE(rel.regenerates);
  auto st = generator_count(c8, false);
  EXPECT_LE(st.maps.k(), 3);
  EXPECT_TRUE(st.regenerates);
  EXPECT_TRUE(census_ok(c8.graph, st.maps, true));

  auto k33 = make_instance(complete_bipartite(3, 3), 3);
  st = generator_count(k33, false);
  EXPECT_LE(st.maps.k(), 4);
  EXPECT_TRUE(census_ok(k33.graph, st.maps, true));

  auto pm = make_instance(Graph::from_edges(6, {{0, 1}, {2, 3}, {4, 5}}), 1);
  EXPECT_EQ(generator_count(pm, false).maps.k(), 1);
  EXPECT_EQ(generator_count(pm, true).maps.k(), 1);
}

TEST(Generators, ClassTwoNeedsDeltaPlusOne) {
  auto c5 = make_instance(cycle_graph(5), 2);
  ASSERT_EQ(oracle::brute_chromatic_index(c5.graph).value, 3);
  auto st = generator_count(c5, false);
  EXPECT_GE(st.maps.k(), 3);
  EXPECT_TRUE(st.regenerates);
}

TEST(Generators, RandomInstancesRegenerate) {
  for (uint64_t s = 0; s < 10; ++s) {
    for (bool bip : {true, false}) {
      auto inst = random_regular(200, 3 + static_cast<int>(s % 3), bip, s);
      for (bool relaxed : {false, true}) {
        auto r = generator_count(inst, relaxed);
        EXPECT_TRUE(r.regenerates);
        EXPECT_TRUE(census_ok(inst.graph, r.maps, !relaxed));
        EXPECT_TRUE(r.within_bound) << r.maps.k() << " > " << r.bound;
      }
    }
  }
}

TEST(Generators, TextAndCsv) {
  auto r = generator_count(make_instance(path_graph(3), 2), false);
  auto txt = maps_text(r.maps);
  EXPECT_NE(txt.find("map 1: "), std::string::npos);
  EXPECT_NE(txt.find(" -> "), std::string::npos);
  auto csv = generator_report_csv(r);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "relaxed,maps,bound,within_bound,classes,exceptional_edges,regenerates,breaker_largest,breaker_bound");
}
