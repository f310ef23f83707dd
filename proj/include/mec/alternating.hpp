#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "graph.hpp"
#include "matching_engine.hpp"

namespace mec {

// Shortest odd and even alternating path lengths from U, per vertex, up to max_len.
// Paths are simple, start at an unmatched vertex of U with an unmatched edge and alternate.
// -1 means no such path within the cap. min_even ignores the trivial length-0 path.
struct AlternatingProfile {
  int max_len = 0;
  VertexSet U;
  std::vector<int> min_odd;
  std::vector<int> min_even;
};

namespace detail {

// Enumerates simple weakly-alternating paths from `src` (first edge unmatched) inside `allowed`
// (all vertices when empty) and records the shortest odd and even arrival lengths.
inline void alternating_dfs(const Graph& g, const Matching& m, Vertex src, int max_len, const std::vector<char>& allowed,
                            std::vector<int>& min_odd, std::vector<int>& min_even) {
  std::vector<char> on(static_cast<size_t>(g.n()), 0);
  on[static_cast<size_t>(src)] = 1;
  auto ok = [&](Vertex v) { return allowed.empty() || allowed[static_cast<size_t>(v)]; };
  auto note = [](std::vector<int>& best, Vertex v, int len) {
    int& b = best[static_cast<size_t>(v)];
    if (b < 0 || len < b) b = len;
  };
  auto rec = [&](auto&& self, Vertex w, int len) -> void {
    if (len >= max_len) return;
    for (Vertex v : g.neighbors(w)) {
      if (on[static_cast<size_t>(v)] || !ok(v) || m.has(w, v)) continue;
      note(min_odd, v, len + 1);
      if (!m.covered(v) || len + 2 > max_len) continue;
      Vertex p = m.partner(v);
      if (on[static_cast<size_t>(p)] || !ok(p)) continue;
      note(min_even, p, len + 2);
      on[static_cast<size_t>(v)] = on[static_cast<size_t>(p)] = 1;
      self(self, p, len + 2);
      on[static_cast<size_t>(v)] = on[static_cast<size_t>(p)] = 0;
    }
  };
  rec(rec, src, 0);
}

}  // namespace detail

inline AlternatingProfile alternating_profile(const Graph& g, const Matching& m, const VertexSet& U, int max_len) {
  AlternatingProfile p;
  p.max_len = max_len;
  p.U = U;
  p.min_odd.assign(static_cast<size_t>(g.n()), -1);
  p.min_even.assign(static_cast<size_t>(g.n()), -1);
  for (Vertex u : U)
    if (!m.covered(u)) detail::alternating_dfs(g, m, u, max_len, {}, p.min_odd, p.min_even);
  return p;
}

struct SearchState {
  int n = 0;
  VertexSet U, Htilde, Ttilde, H, T, B, O, X;
};

inline SearchState state_at(const AlternatingProfile& prof, int n) {
  if (n < 0 || 2 * n > prof.max_len) throw GraphError("state_at: depth outside the profile");
  SearchState s;
  s.n = n;
  s.U = prof.U;
  const int N = static_cast<int>(prof.min_odd.size());
  for (Vertex v = 0; v < N; ++v) {
    int o = prof.min_odd[static_cast<size_t>(v)], e = prof.min_even[static_cast<size_t>(v)];
    if (o >= 1 && o <= 2 * n - 1) s.Htilde.push_back(v);
    if (e >= 2 && e <= 2 * n) s.Ttilde.push_back(v);
  }
  s.H = set_difference(s.Htilde, s.Ttilde);
  s.T = set_difference(s.Ttilde, s.Htilde);
  s.B = set_intersection(s.Htilde, s.Ttilde);
  s.X = set_union(s.U, set_union(s.Htilde, s.Ttilde));
  VertexSet all(static_cast<size_t>(N));
  for (Vertex v = 0; v < N; ++v) all[static_cast<size_t>(v)] = v;
  s.O = set_difference(all, s.X);
  return s;
}

inline SearchState alternating_bfs(const Instance& inst, const Matching& m, const VertexSet& U, int n) {
  if (!m.valid_in(inst.graph)) throw GraphError("alternating_bfs: invalid matching");
  return state_at(alternating_profile(inst.graph, m, U, std::max(0, 2 * n)), n);
}

// ---------------------------------------------------------------------------
// Stubborn vertices and families

struct FamilyLedger {
  int n = 0;
  int c_tilde = 12;
  VertexSet stubborn;
  std::map<Vertex, int> age;
  std::map<Vertex, VertexSet> family;
  std::map<Vertex, int> e;  // expansion counter; absent means 0
  VertexSet TM, TB, TE, TG;

  int e_of(Vertex x) const {
    auto it = e.find(x);
    return it == e.end() ? 0 : it->second;
  }
};

// Largest D within `candidates` such that each y in D is reached from x by an odd and an even
// weakly-alternating path inside D ∪ {x} with total length <= budget. Pruning from the top
// reaches the greatest fixed point.
inline VertexSet largest_descendant_set(const Graph& g, const Matching& m, Vertex x, VertexSet candidates, int budget) {
  candidates = set_difference(candidates, {x});
  if (budget < 3) return {};
  auto ball = bfs_distances(g, {x}, budget - 1);
  VertexSet D;
  for (Vertex v : candidates)
    if (ball[static_cast<size_t>(v)] >= 0) D.push_back(v);
  std::vector<int> odd(static_cast<size_t>(g.n())), even(static_cast<size_t>(g.n()));
  while (!D.empty()) {
    auto allowed = to_mask(g.n(), D);
    allowed[static_cast<size_t>(x)] = 1;
    std::fill(odd.begin(), odd.end(), -1);
    std::fill(even.begin(), even.end(), -1);
    detail::alternating_dfs(g, m, x, budget - 1, allowed, odd, even);
    VertexSet keep;
    for (Vertex y : D) {
      int o = odd[static_cast<size_t>(y)], e = even[static_cast<size_t>(y)];
      if (o > 0 && e > 0 && o + e <= budget) keep.push_back(y);
    }
    if (keep.size() == D.size()) break;
    D = std::move(keep);
  }
  return D;
}

inline bool family_expanding(const Graph& g, const VertexSet& F, const VertexSet& B) {
  auto inF = to_mask(g.n(), F), inB = to_mask(g.n(), B);
  for (Vertex v : F)
    for (Vertex w : g.neighbors(v))
      if (inB[static_cast<size_t>(w)] && !inF[static_cast<size_t>(w)]) return true;
  return false;
}

// Ledger at depth n. `prev` is the ledger at n-1 (for the expansion counters); `next` must be
// the state at n+1.
inline FamilyLedger stubborn_and_families(const Graph& g, const Matching& m, const AlternatingProfile& prof,
                                          const SearchState& cur, const SearchState& next, int c_tilde,
                                          const FamilyLedger* prev = nullptr) {
  if (next.n != cur.n + 1) throw GraphError("stubborn_and_families needs consecutive states");
  FamilyLedger L;
  L.n = cur.n;
  L.c_tilde = c_tilde;
  if (prev) {
    L.e = prev->e;
    for (Vertex x : prev->TE) ++L.e[x];
  }
  const VertexSet TU = set_union(cur.T, cur.U);
  auto inB = to_mask(g.n(), cur.B);
  for (Vertex x : TU) {
    bool near_b = false;
    for (Vertex w : g.neighbors(x)) near_b |= inB[static_cast<size_t>(w)] != 0;
    if (near_b && !contains(next.Htilde, x)) L.stubborn.push_back(x);
  }
  L.TM = set_difference(TU, L.stubborn);
  const VertexSet cand = cur.X;
  for (Vertex x : L.stubborn) {
    int a = contains(cur.U, x) ? cur.n : cur.n - prof.min_even[static_cast<size_t>(x)] / 2;
    L.age[x] = a;
    VertexSet F = largest_descendant_set(g, m, x, cand, 2 * a + 1);
    L.family[x] = F;
    if (static_cast<int>(F.size()) >= c_tilde) L.TB.push_back(x);
    else if (!F.empty() && family_expanding(g, F, cur.B)) L.TE.push_back(x);
    else L.TG.push_back(x);
  }
  return L;
}

// I(n) = (|X_n| + |B_n| + ½ Σ_{x∈X_n} e_n(x)) / N
inline double growth_value(const SearchState& s, const FamilyLedger& L, int N) {
  if (N == 0) return 0.0;
  double esum = 0;
  for (const auto& [x, c] : L.e)
    if (contains(s.X, x)) esum += c;
  return (static_cast<double>(s.X.size()) + static_cast<double>(s.B.size()) + 0.5 * esum) / N;
}

// ---------------------------------------------------------------------------
// Edge expansion of sets avoiding a dense set

struct ExpansionVerdict {
  bool precondition_ok = true;
  std::string error;
  bool holds = false;
  size_t boundary = 0;
  double threshold = 0;
};

inline ExpansionVerdict expansion_check(const Instance& inst, const VertexSet& Q, int r, const VertexSet& W) {
  ExpansionVerdict v;
  const Graph& g = inst.graph;
  if (r < 0) {
    v.precondition_ok = false;
    v.error = "radius must be non-negative";
    return v;
  }
  if (!is_dense(g, Q, r + 1)) {
    v.precondition_ok = false;
    v.error = "Q is not " + std::to_string(r + 1) + "-dense";
    return v;
  }
  if (!set_intersection(normalized(W), normalized(Q)).empty()) {
    v.precondition_ok = false;
    v.error = "W intersects Q";
    return v;
  }
  v.boundary = edge_boundary(g, normalized(W)).count;
  v.threshold = std::pow(static_cast<double>(inst.d), -r) * static_cast<double>(W.size());
  v.holds = static_cast<double>(v.boundary) + 1e-12 >= v.threshold;
  return v;
}

// ---------------------------------------------------------------------------
// Diagnostic runs and claim checks

struct DiagnosticParams {
  int n0 = 9;
  int c_tilde = 12;
};

struct DiagnosticRun {
  Instance inst;
  KContext k;
  std::vector<Edge> raw_matching;
  Matching m;
  bool matching_valid = false;
  std::string invalid_witness;
  VertexSet U;
  DiagnosticParams params;
  AlternatingProfile prof;
  std::vector<SearchState> states;    // n = 0 .. S
  std::vector<FamilyLedger> ledgers;  // n = 0 .. S-1
  std::vector<double> growth;         // I(n) for n with a ledger
};

// Builds the matching from raw edges without trusting them; an overlap or a non-edge leaves
// the run marked invalid with a witness.
inline DiagnosticRun diagnose(const Instance& inst, const KContext& k, const std::vector<Edge>& edges, DiagnosticParams params) {
  DiagnosticRun run;
  run.inst = inst;
  run.k = k;
  run.raw_matching = edges;
  run.params = params;
  run.m = Matching(inst.graph.n());
  run.matching_valid = true;
  for (const Edge& e : edges) {
    if (e.u < 0 || e.v >= inst.graph.n() || !inst.graph.adjacent(e.u, e.v)) {
      run.matching_valid = false;
      run.invalid_witness = "edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " is not in the graph";
      break;
    }
    if (run.m.covered(e.u) || run.m.covered(e.v)) {
      Vertex w = run.m.covered(e.u) ? e.u : e.v;
      run.matching_valid = false;
      run.invalid_witness = "vertex " + std::to_string(w) + " is covered twice";
      break;
    }
    run.m.add(e.u, e.v);
  }
  if (!run.matching_valid) return run;
  run.U = unhappy_set(inst, k, run.m);
  const int S = params.n0 / 2 + 2;
  run.prof = alternating_profile(inst.graph, run.m, run.U, 2 * S);
  for (int n = 0; n <= S; ++n) run.states.push_back(state_at(run.prof, n));
  for (int n = 0; n < S; ++n) {
    const FamilyLedger* prev = run.ledgers.empty() ? nullptr : &run.ledgers.back();
    run.ledgers.push_back(
        stubborn_and_families(inst.graph, run.m, run.prof, run.states[static_cast<size_t>(n)],
                              run.states[static_cast<size_t>(n) + 1], params.c_tilde, prev));
    run.growth.push_back(growth_value(run.states[static_cast<size_t>(n)], run.ledgers.back(), inst.graph.n()));
  }
  return run;
}

enum class ClaimStatus { Pass, Fail, Skip };

inline const char* claim_status_name(ClaimStatus s) {
  switch (s) {
    case ClaimStatus::Pass: return "PASS";
    case ClaimStatus::Fail: return "FAIL";
    default: return "SKIP";
  }
}

struct ClaimResult {
  std::string claim;
  int n = 0;
  ClaimStatus status = ClaimStatus::Pass;
  std::string witness;
};

namespace detail {

inline std::string vid(Vertex v) { return std::to_string(v); }

}  // namespace detail

inline std::vector<ClaimResult> check_structural_claims(const DiagnosticRun& run) {
  std::vector<ClaimResult> out;
  auto add = [&](const std::string& id, int n, bool pass, const std::string& witness = "") {
    out.push_back({id, n, pass ? ClaimStatus::Pass : ClaimStatus::Fail, pass ? "" : witness});
  };
  auto skip = [&](const std::string& id, int n, const std::string& why) { out.push_back({id, n, ClaimStatus::Skip, why}); };
  add("matching-valid", 0, run.matching_valid, run.invalid_witness);
  if (!run.matching_valid) return out;

  const Graph& g = run.inst.graph;
  const Matching& m = run.m;
  const int n0 = run.params.n0;
  const int ct = run.params.c_tilde;
  const Instance& inst = run.inst;

  // set-structure checks for 1 <= n <= n0/2
  {
    VertexSet bad = set_intersection(run.k.K, run.U);
    add("K-happy", 0, bad.empty(), bad.empty() ? "" : "K vertex " + detail::vid(bad[0]) + " is unhappy");
  }
  for (int n = 1; 2 * n <= n0 && n < static_cast<int>(run.states.size()); ++n) {
    const SearchState& s = run.states[static_cast<size_t>(n)];
    std::string w;
    for (Vertex h : s.Htilde)
      if (!m.covered(h) && w.empty()) w = "vertex " + detail::vid(h) + " in H~ is uncovered";
    add("Htilde-covered", n, w.empty(), w);

    w.clear();
    for (Vertex h : s.Htilde)
      if (w.empty() && (!m.covered(h) || !contains(s.Ttilde, m.partner(h)))) w = "partner of " + detail::vid(h) + " not in T~";
    for (Vertex t : s.Ttilde)
      if (w.empty() && (!m.covered(t) || !contains(s.Htilde, m.partner(t)))) w = "partner of " + detail::vid(t) + " not in H~";
    if (w.empty() && !set_intersection(s.U, set_union(s.Htilde, s.Ttilde)).empty()) w = "U meets H~ ∪ T~";
    add("tilde-partners", n, w.empty(), w);

    w.clear();
    for (Vertex t : s.Ttilde)
      if (w.empty() && g.degree(t) < inst.d) w = "vertex " + detail::vid(t) + " in T~ has degree < d";
    add("Ttilde-full-degree", n, w.empty(), w);

    w.clear();
    for (Vertex x : run.k.K) {
      VertexSet D = star_members(inst, x);
      if (!D.empty() && is_subset(D, s.X) && set_intersection(D, s.U).empty() && w.empty())
        w = "star of " + detail::vid(x) + " inside X_n misses U";
    }
    add("star-meets-U", n, w.empty(), w);

    w.clear();
    size_t total = s.U.size() + s.H.size() + s.T.size() + s.B.size();
    if (total != s.X.size()) w = "U,H,T,B do not partition X";
    add("UHTB-partition", n, w.empty(), w);
    w.clear();
    if (!is_subset(run.states[static_cast<size_t>(n - 1)].B, s.B)) w = "B shrank";
    add("B-monotone", n, w.empty(), w);
    w.clear();
    for (Vertex t : s.T)
      if (w.empty() && !contains(s.H, m.partner(t))) w = "partner of T vertex " + detail::vid(t) + " not in H";
    for (Vertex b : s.B)
      if (w.empty() && !contains(s.B, m.partner(b))) w = "partner of B vertex " + detail::vid(b) + " not in B";
    if (w.empty() && s.H.size() != s.T.size()) w = "|H| != |T|";
    add("HT-B-partners", n, w.empty(), w);

    if (run.k.dense_at_r_prime) {
      bool dense = is_dense(g, s.O, run.k.r_prime + 1);
      add("O-dense", n, dense, "O_n is not " + std::to_string(run.k.r_prime + 1) + "-dense");
    } else {
      skip("O-dense", n, "K is not r'-dense");
    }
    if (inst.bipartite) {
      if (4 * n - 1 <= n0) add("bipartite-B-empty", n, s.B.empty(), s.B.empty() ? "" : "vertex " + detail::vid(s.B[0]) + " in B");
      else skip("bipartite-B-empty", n, "4n-1 exceeds n0");
    }
  }

  // edge and family checks need no augmenting path of length <= 2n+1
  for (int n = 0; 2 * n + 1 <= n0 && n < static_cast<int>(run.ledgers.size()); ++n) {
    const SearchState& s = run.states[static_cast<size_t>(n)];
    const SearchState& s1 = run.states[static_cast<size_t>(n) + 1];
    const FamilyLedger& L = run.ledgers[static_cast<size_t>(n)];
    const VertexSet TU = set_union(s.T, s.U);
    auto inTU = to_mask(g.n(), TU);
    std::string w;
    for (Vertex x : TU)
      for (Vertex y : g.neighbors(x))
        if (w.empty() && x < y && inTU[static_cast<size_t>(y)] && !contains(s1.B, x) && !contains(s1.B, y))
          w = "edge " + detail::vid(x) + "-" + detail::vid(y) + " inside T∪U, neither end in B_{n+1}";
    add("TU-edges-meet-B", n, w.empty(), w);

    w.clear();
    for (Vertex x : L.stubborn)
      for (Vertex y : g.neighbors(x))
        if (w.empty() && contains(s.B, y) && !contains(L.family.at(x), y))
          w = "stubborn edge " + detail::vid(x) + "-" + detail::vid(y) + " leaves the family";
    add("stubborn-edges-in-family", n, w.empty(), w);

    w.clear();
    for (const auto& [x, F] : L.family)
      if (w.empty() && !is_subset(F, s.B)) w = "family of " + detail::vid(x) + " leaves B_n";
    add("family-inside-B", n, w.empty(), w);

    w.clear();
    std::vector<int> owner(static_cast<size_t>(g.n()), -1);
    size_t famsum = 0;
    for (const auto& [x, F] : L.family) {
      famsum += F.size();
      for (Vertex v : F) {
        if (owner[static_cast<size_t>(v)] >= 0 && w.empty())
          w = "vertex " + detail::vid(v) + " in families of " + detail::vid(owner[static_cast<size_t>(v)]) + " and " + detail::vid(x);
        owner[static_cast<size_t>(v)] = x;
      }
    }
    add("families-disjoint", n, w.empty(), w);
    add("family-budget", n, famsum <= s.B.size(), "sum of family sizes exceeds |B_n|");

    w.clear();
    auto isStub = to_mask(g.n(), L.stubborn);
    for (const auto& [x, F] : L.family) {
      VertexSet adj;
      for (Vertex v : F)
        for (Vertex y : g.neighbors(v))
          if (isStub[static_cast<size_t>(y)]) adj.push_back(y);
      adj = normalized(adj);
      if (w.empty() && adj != VertexSet{x}) w = "family of " + detail::vid(x) + " has " + std::to_string(adj.size()) + " stubborn neighbours";
    }
    add("family-one-stubborn", n, w.empty(), w);

    w.clear();
    for (const auto& [x, c] : L.e)
      if (w.empty() && c > ct * ct) w = "e_n(" + detail::vid(x) + ") = " + std::to_string(c);
    add("e-count-bounded", n, w.empty(), w);

    // absorption looks c̃ steps ahead
    if (2 * (n + ct) + 1 <= n0 && n + ct < static_cast<int>(run.ledgers.size())) {
      const FamilyLedger& Lf = run.ledgers[static_cast<size_t>(n + ct)];
      w.clear();
      for (const auto& [x, F] : L.family) {
        if (static_cast<int>(F.size()) >= ct || !contains(Lf.stubborn, x)) continue;
        const VertexSet& Ff = Lf.family.at(x);
        for (Vertex v : F)
          for (Vertex y : g.neighbors(v))
            if (w.empty() && contains(s.B, y) && !contains(F, y) && !contains(Ff, y))
              w = "vertex " + detail::vid(y) + " not absorbed into the family of " + detail::vid(x);
      }
      add("family-absorbs", n, w.empty(), w);
    } else {
      skip("family-absorbs", n, "2(n+c~)+1 exceeds n0 (practical scale)");
    }
  }

  // growth invariant: non-decreasing over n <= (n0-2)/2
  for (int n = 0; 2 * n <= n0 - 2 && n + 1 < static_cast<int>(run.growth.size()); ++n) {
    double a = run.growth[static_cast<size_t>(n)], b = run.growth[static_cast<size_t>(n) + 1];
    std::ostringstream os;
    os << "I(" << n << ")=" << a << " > I(" << n + 1 << ")=" << b;
    add("growth-monotone", n, b + 1e-12 >= a, os.str());
  }
  return out;
}

inline bool all_claims_pass(const std::vector<ClaimResult>& rs) {
  return std::none_of(rs.begin(), rs.end(), [](const ClaimResult& r) { return r.status == ClaimStatus::Fail; });
}

inline std::string claims_csv(const std::vector<ClaimResult>& rs) {
  std::ostringstream os;
  os << "claim,n,status,witness\n";
  for (const auto& r : rs) {
    std::string w = r.witness;
    std::replace(w.begin(), w.end(), ',', ';');
    os << r.claim << "," << r.n << "," << claim_status_name(r.status) << "," << w << "\n";
  }
  return os.str();
}

// Sizes of the partition of T∪U and I(n), one row per ledger.
inline std::string growth_csv(const DiagnosticRun& run) {
  std::ostringstream os;
  os << "n,X,U,H,T,B,O,stubborn,TM,TB,TE,TG,I\n";
  for (size_t i = 0; i < run.ledgers.size(); ++i) {
    const auto& s = run.states[i];
    const auto& L = run.ledgers[i];
    os << s.n << "," << s.X.size() << "," << s.U.size() << "," << s.H.size() << "," << s.T.size() << "," << s.B.size()
       << "," << s.O.size() << "," << L.stubborn.size() << "," << L.TM.size() << "," << L.TB.size() << ","
       << L.TE.size() << "," << L.TG.size() << "," << run.growth[i] << "\n";
  }
  return os.str();
}

}  // namespace mec
