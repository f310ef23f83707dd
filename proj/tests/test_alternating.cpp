#include <gtest/gtest.h>

#include <functional>

#include "mec/alternating.hpp"
#include "mec/generators.hpp"
#include "mec/matching_engine.hpp"
#include "mec/rng.hpp"

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

Matching random_maximal_matching(const Graph& g, uint64_t seed) {
  Rng rng(seed);
  auto es = g.edges();
  shuffle_in_place(rng, es);
  Matching m(g.n());
  for (auto e : es)
    if (!m.covered(e.u) && !m.covered(e.v)) m.add(e.u, e.v);
  return m;
}

// Every simple path from `src` inside `allowed`, up to max_len edges, reported with its length.
// Alternation is checked afterwards, so this enumerator shares nothing with the library DFS.
void all_simple_paths(const Graph& g, Vertex src, int max_len, const std::vector<char>& allowed,
                      const std::function<void(const std::vector<Vertex>&)>& f) {
  std::vector<Vertex> path{src};
  std::vector<char> on(static_cast<size_t>(g.n()), 0);
  on[static_cast<size_t>(src)] = 1;
  std::function<void()> rec = [&]() {
    f(path);
    if (static_cast<int>(path.size()) - 1 >= max_len) return;
    for (Vertex v : g.neighbors(path.back())) {
      if (on[static_cast<size_t>(v)] || (!allowed.empty() && !allowed[static_cast<size_t>(v)])) continue;
      on[static_cast<size_t>(v)] = 1;
      path.push_back(v);
      rec();
      path.pop_back();
      on[static_cast<size_t>(v)] = 0;
    }
  };
  rec();
}

// first edge unmatched, then alternate
bool weakly_alternating(const Matching& m, const std::vector<Vertex>& p) {
  for (size_t i = 0; i + 1 < p.size(); ++i)
    if (m.has(p[i], p[i + 1]) != (i % 2 == 1)) return false;
  return true;
}

void brute_profile(const Graph& g, const Matching& m, const VertexSet& U, int max_len, std::vector<int>& odd,
                   std::vector<int>& even) {
  odd.assign(static_cast<size_t>(g.n()), -1);
  even.assign(static_cast<size_t>(g.n()), -1);
  for (Vertex u : U) {
    if (m.covered(u)) continue;
    all_simple_paths(g, u, max_len, {}, [&](const std::vector<Vertex>& p) {
      int len = static_cast<int>(p.size()) - 1;
      if (len == 0 || !weakly_alternating(m, p)) return;
      auto& best = (len % 2 ? odd : even)[static_cast<size_t>(p.back())];
      if (best < 0 || len < best) best = len;
    });
  }
}

bool has_descendant_property(const Graph& g, const Matching& m, Vertex x, const VertexSet& D, int budget) {
  auto allowed = to_mask(g.n(), D);
  allowed[static_cast<size_t>(x)] = 1;
  std::vector<int> odd(static_cast<size_t>(g.n()), -1), even(static_cast<size_t>(g.n()), -1);
  all_simple_paths(g, x, budget, allowed, [&](const std::vector<Vertex>& p) {
    int len = static_cast<int>(p.size()) - 1;
    if (len == 0 || !weakly_alternating(m, p)) return;
    auto& best = (len % 2 ? odd : even)[static_cast<size_t>(p.back())];
    if (best < 0 || len < best) best = len;
  });
  for (Vertex y : D) {
    int o = odd[static_cast<size_t>(y)], e = even[static_cast<size_t>(y)];
    if (o < 0 || e < 0 || o + e > budget) return false;
  }
  return true;
}

// union of all subsets of `cand` with the descendant property
VertexSet brute_family(const Graph& g, const Matching& m, Vertex x, const VertexSet& cand, int budget) {
  VertexSet best;
  const size_t k = cand.size();
  for (uint32_t mask = 1; mask < (1u << k); ++mask) {
    VertexSet D;
    for (size_t i = 0; i < k; ++i)
      if (mask >> i & 1u) D.push_back(cand[i]);
    if (has_descendant_property(g, m, x, D, budget)) best = set_union(best, D);
  }
  return best;
}

Instance c5_instance() { return make_instance(cycle_graph(5), 2); }

}  // namespace

TEST(Alternating, SingleStepExample) {
  auto inst = make_instance(path_graph(3), 2);
  Matching m = Matching::from_edges(inst.graph, {{1, 2}});
  auto s = alternating_bfs(inst, m, {0}, 1);
  EXPECT_EQ(s.Htilde, (VertexSet{1}));
  EXPECT_EQ(s.Ttilde, (VertexSet{2}));
  EXPECT_TRUE(s.O.empty());
}

TEST(Alternating, PerfectMatchingIsEmpty) {
  auto inst = make_instance(cycle_graph(6), 2);
  Matching m = Matching::from_edges(inst.graph, {{0, 1}, {2, 3}, {4, 5}});
  auto s = alternating_bfs(inst, m, {}, 3);
  EXPECT_TRUE(s.X.empty());
  EXPECT_EQ(s.O.size(), 6u);
}

TEST(Alternating, OddCycleBuildsBoth) {
  auto inst = c5_instance();
  Matching m = Matching::from_edges(inst.graph, {{1, 2}, {3, 4}});
  auto U = unhappy_set(inst, make_kcontext(inst, {}), m);
  ASSERT_EQ(U, (VertexSet{0}));
  EXPECT_TRUE(alternating_bfs(inst, m, U, 1).B.empty());
  for (int n = 2; n <= 4; ++n) EXPECT_FALSE(alternating_bfs(inst, m, U, n).B.empty()) << n;
}

TEST(Alternating, OddCycleFamily) {
  auto inst = c5_instance();
  Matching m = Matching::from_edges(inst.graph, {{1, 2}, {3, 4}});
  DiagnosticParams p;
  p.n0 = 5;
  auto run = diagnose(inst, make_kcontext(inst, {}), m.edges(), p);
  ASSERT_TRUE(run.matching_valid);
  const auto& L = run.ledgers[2];
  EXPECT_EQ(L.stubborn, (VertexSet{0}));
  EXPECT_EQ(L.age.at(0), 2);
  // the stubborn edge 0-1 closes the cycle, so 1 is a descendant of 0
  EXPECT_TRUE(contains(L.family.at(0), 1));
  EXPECT_EQ(L.family.at(0), (VertexSet{1, 2, 3, 4}));
  EXPECT_EQ(brute_family(inst.graph, m, 0, set_difference(run.states[2].X, {0}), 5), L.family.at(0));
  auto claims = check_structural_claims(run);
  EXPECT_TRUE(all_claims_pass(claims)) << claims_csv(claims);
}

TEST(Alternating, NoBMeansNoStubborn) {
  auto inst = make_instance(path_graph(6), 2);
  Matching m = Matching::from_edges(inst.graph, {{1, 2}, {3, 4}});
  auto prof = alternating_profile(inst.graph, m, {0}, 8);
  auto L = stubborn_and_families(inst.graph, m, prof, state_at(prof, 2), state_at(prof, 3), 12);
  EXPECT_TRUE(L.stubborn.empty());
  EXPECT_TRUE(L.family.empty());
}

TEST(Alternating, ProfileMatchesBruteForce) {
  for (uint64_t seed = 0; seed < 40; ++seed) {
    Graph g = random_graph(10 + static_cast<int>(seed % 8), 0.3, seed);
    Matching m = random_maximal_matching(g, seed + 100);
    VertexSet U;
    for (Vertex v = 0; v < g.n(); ++v)
      if (!m.covered(v) && (v + static_cast<int>(seed)) % 2 == 0) U.push_back(v);
    std::vector<int> odd, even;
    brute_profile(g, m, U, 7, odd, even);
    auto prof = alternating_profile(g, m, U, 7);
    EXPECT_EQ(prof.min_odd, odd) << seed;
    EXPECT_EQ(prof.min_even, even) << seed;
  }
}

TEST(Alternating, FamiliesMatchBruteForce) {
  int checked = 0;
  for (uint64_t seed = 0; seed < 200 && checked < 40; ++seed) {
    Graph g = random_graph(9 + static_cast<int>(seed % 6), 0.35, seed);
    Matching m = random_maximal_matching(g, seed + 7);
    VertexSet U;
    for (Vertex v = 0; v < g.n(); ++v)
      if (!m.covered(v)) U.push_back(v);
    auto prof = alternating_profile(g, m, U, 8);
    const FamilyLedger* prev = nullptr;
    std::vector<FamilyLedger> ls;
    for (int n = 0; n < 4; ++n) {
      ls.push_back(stubborn_and_families(g, m, prof, state_at(prof, n), state_at(prof, n + 1), 12, prev));
      prev = &ls.back();
      auto s = state_at(prof, n);
      for (const auto& [x, F] : ls.back().family) {
        VertexSet cand = set_difference(s.X, {x});
        if (cand.size() > 12) continue;
        int budget = 2 * ls.back().age.at(x) + 1;
        EXPECT_EQ(brute_family(g, m, x, cand, budget), F) << "seed " << seed << " n " << n << " x " << x;
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 5);
}

TEST(Alternating, ClaimsHoldOnEngineRuns) {
  int stubborn_seen = 0;
  for (uint64_t seed = 0; seed < 24; ++seed) {
    int d = 2 + static_cast<int>(seed % 2);
    auto base = random_regular(60 + 10 * static_cast<int>(seed % 4), d, false, seed);
    Instance inst = seed % 3 == 0 ? plant_high_degree(base, 4, 0.05, seed) : base;
    auto k = seed % 2 ? build_K(inst, 1, 10) : make_kcontext(inst, {});
    EngineParams ep;
    ep.n0 = 9;
    auto st = run_rounds(inst, k, ep, initial_matching(inst, 8).matching);
    ASSERT_TRUE(st.verified_no_augmenting);
    DiagnosticParams dp;
    dp.n0 = 9;
    dp.c_tilde = 3;
    auto run = diagnose(inst, k, st.matching.edges(), dp);
    auto claims = check_structural_claims(run);
    EXPECT_TRUE(all_claims_pass(claims)) << "seed " << seed << "\n" << claims_csv(claims);
    for (const auto& L : run.ledgers) stubborn_seen += static_cast<int>(L.stubborn.size());
    EXPECT_NEAR(run.growth[0], static_cast<double>(run.U.size()) / inst.graph.n(), 1e-12);
  }
  EXPECT_GT(stubborn_seen, 0);
}

TEST(Alternating, BipartiteRunsHaveNoB) {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    auto inst = random_regular(80, 3, true, seed);
    auto k = make_kcontext(inst, {});
    EngineParams ep;
    ep.n0 = 9;
    auto st = run_rounds(inst, k, ep);
    DiagnosticParams dp;
    auto run = diagnose(inst, k, st.matching.edges(), dp);
    auto claims = check_structural_claims(run);
    EXPECT_TRUE(all_claims_pass(claims)) << claims_csv(claims);
    for (int n = 0; 4 * n - 1 <= dp.n0; ++n) EXPECT_TRUE(run.states[static_cast<size_t>(n)].B.empty());
  }
}

TEST(Alternating, GrowthTrivialCases) {
  auto inst = make_instance(cycle_graph(6), 2);
  auto run = diagnose(inst, make_kcontext(inst, {}), {{0, 1}, {2, 3}, {4, 5}}, {});
  for (double v : run.growth) EXPECT_EQ(v, 0.0);
}

TEST(Alternating, CorruptedMatchingIsReported) {
  auto inst = c5_instance();
  auto run = diagnose(inst, make_kcontext(inst, {}), {{0, 1}, {1, 2}}, {});
  EXPECT_FALSE(run.matching_valid);
  auto claims = check_structural_claims(run);
  ASSERT_EQ(claims.size(), 1u);
  EXPECT_EQ(claims[0].status, ClaimStatus::Fail);
  EXPECT_NE(claims[0].witness.find("vertex 1"), std::string::npos);

  auto run2 = diagnose(inst, make_kcontext(inst, {}), {{0, 2}}, {});
  EXPECT_FALSE(run2.matching_valid);
}

TEST(Alternating, ExpansionCheckExamples) {
  auto star = make_instance(star_graph(3), 3);
  auto v = expansion_check(star, {0}, 0, {1, 3});
  EXPECT_TRUE(v.precondition_ok);
  EXPECT_TRUE(v.holds);
  EXPECT_EQ(v.boundary, 2u);

  auto c12 = make_instance(cycle_graph(12), 2);
  auto w = expansion_check(c12, {0, 4, 8}, 1, {1, 2});
  EXPECT_TRUE(w.precondition_ok);
  EXPECT_EQ(w.boundary, 2u);
  EXPECT_DOUBLE_EQ(w.threshold, 1.0);
  EXPECT_TRUE(w.holds);

  EXPECT_TRUE(expansion_check(c12, {0, 4, 8}, 1, {}).holds);
  auto bad = expansion_check(c12, {0}, 1, {3});
  EXPECT_FALSE(bad.precondition_ok);
  EXPECT_FALSE(bad.error.empty());
  EXPECT_FALSE(expansion_check(c12, {0, 4, 8}, 1, {0, 1}).precondition_ok);
}

TEST(Alternating, EdgeExpansionHoldsOnRandomSubsets) {
  Rng rng(5);
  for (uint64_t seed = 0; seed < 10; ++seed) {
    auto inst = random_regular(100, 3, false, seed);
    auto k = build_K(inst, 1, 10);
    int r = density_radius(inst.graph, k.K) - 1;
    ASSERT_GE(r, 0);
    VertexSet W;
    for (Vertex v = 0; v < 100; ++v)
      if (!contains(k.K, v) && uniform01(rng) < 0.3) W.push_back(v);
    auto e = expansion_check(inst, k.K, r, W);
    EXPECT_TRUE(e.precondition_ok);
    EXPECT_TRUE(e.holds);
  }
}
