#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "coloring.hpp"
#include "generators.hpp"
#include "graph.hpp"
#include "matching_engine.hpp"
#include "precolor.hpp"
#include "vizing.hpp"

namespace mec {

enum class ColorMode { Bipartite, General };

inline const char* mode_name(ColorMode m) { return m == ColorMode::Bipartite ? "bipartite" : "general"; }

struct DriverParams {
  int r = 1;
  int r_prime = 10;
  int r1 = 8;
  int n0 = 9;
  int L = 100;      // components with more vertices count as infinite
  int s_max = 10;   // largest stump searched for
  int samples = 64;
  bool conjecture_mode = false;  // try d+1 colours on stumps before the proven budget
  bool check_claims = false;
  int verify_limit = 2000;
  uint64_t seed = 0;
};

// ---------------------------------------------------------------------------
// Stumps

struct Stump {
  VertexSet A;
  std::vector<Edge> boundary_edges;
  std::vector<Edge> interior_edges;
  int d = 0;
};

inline bool is_stump(const Graph& g, int d, const VertexSet& A, int L, const std::vector<int>* comp_size_of = nullptr) {
  if (A.size() < 2) return false;
  int high = 0;
  for (Vertex v : A) {
    if (g.degree(v) == d + 1) ++high;
    else if (g.degree(v) != d) return false;
  }
  if (high > 1) return false;
  if (static_cast<int>(edge_boundary(g, A).count) > d - 1) return false;
  // the component must be large and must not be A itself
  auto big = [&](int size) { return size > L && size > static_cast<int>(A.size()); };
  if (comp_size_of) return big((*comp_size_of)[static_cast<size_t>(A[0])]);
  for (const auto& c : connected_components(g))
    if (contains(c, A[0])) return big(static_cast<int>(c.size()));
  return false;
}

namespace detail {

inline std::vector<int> component_sizes_by_vertex(const Graph& g) {
  std::vector<int> out(static_cast<size_t>(g.n()), 0);
  for (const auto& c : connected_components(g))
    for (Vertex v : c) out[static_cast<size_t>(v)] = static_cast<int>(c.size());
  return out;
}

}  // namespace detail

// Every connected stump with at most s_max vertices, each listed once (sorted, in order of
// minimum vertex). Include/exclude search over frontier vertices; edges from the set to
// excluded vertices are boundary for good, so more than d-1 of them ends the branch.
inline std::vector<VertexSet> find_stumps(const Graph& g, int d, int s_max, int L) {
  std::vector<VertexSet> out;
  if (d < 1 || s_max < 2) return out;
  const int n = g.n();
  auto csize = detail::component_sizes_by_vertex(g);
  std::vector<char> state(static_cast<size_t>(n), 0);  // 1 in A, 2 excluded
  std::vector<Vertex> A;
  for (Vertex seed = 0; seed < n; ++seed) {
    const int ds = g.degree(seed);
    if ((ds != d && ds != d + 1) || csize[static_cast<size_t>(seed)] <= L) continue;
    auto out_of_play = [&](Vertex w) {
      const int dw = g.degree(w);
      return state[static_cast<size_t>(w)] == 2 || w < seed || (dw != d && dw != d + 1);
    };
    auto rec = [&](auto&& self, int perm, int bnd, int high) -> void {
      if (static_cast<int>(A.size()) >= s_max) return;
      Vertex u = -1;
      for (Vertex a : A)
        for (Vertex w : g.neighbors(a))
          if (state[static_cast<size_t>(w)] == 0 && !out_of_play(w) && (u < 0 || w < u)) u = w;
      if (u < 0) return;
      int into_a = 0, to_out = 0;
      for (Vertex w : g.neighbors(u)) {
        if (state[static_cast<size_t>(w)] == 1) ++into_a;
        else if (out_of_play(w)) ++to_out;
      }
      const int hu = g.degree(u) == d + 1 ? 1 : 0;
      // include u
      if (high + hu <= 1 && perm + to_out <= d - 1) {
        state[static_cast<size_t>(u)] = 1;
        A.push_back(u);
        const int nb = bnd + g.degree(u) - 2 * into_a;
        if (nb <= d - 1 && csize[static_cast<size_t>(seed)] > static_cast<int>(A.size())) out.push_back(normalized(A));
        self(self, perm + to_out, nb, high + hu);
        A.pop_back();
        state[static_cast<size_t>(u)] = 0;
      }
      // exclude u
      if (perm + into_a <= d - 1) {
        state[static_cast<size_t>(u)] = 2;
        self(self, perm + into_a, bnd, high);
        state[static_cast<size_t>(u)] = 0;
      }
    };
    int perm0 = 0;
    for (Vertex w : g.neighbors(seed)) perm0 += out_of_play(w) ? 1 : 0;
    if (perm0 > d - 1) continue;
    state[static_cast<size_t>(seed)] = 1;
    A.assign(1, seed);
    rec(rec, perm0, ds, ds == d + 1 ? 1 : 0);
    state[static_cast<size_t>(seed)] = 0;
    A.clear();
  }
  return out;
}

struct StumpRemoval {
  Graph graph;
  std::vector<Stump> stumps;
};

// Smallest sizes first; within a size, candidates in sorted order, each re-checked against
// the current graph so removed stumps stay vertex-disjoint. Removal never creates a stump,
// so one enumeration suffices.
inline StumpRemoval find_and_remove_stumps(const Graph& g, int d, int s_max, int L) {
  if (g.delta() > d + 1) throw GraphError("find_and_remove_stumps needs max degree <= d+1");
  StumpRemoval res;
  res.graph = g;
  auto cands = find_stumps(g, d, s_max, L);
  std::stable_sort(cands.begin(), cands.end(), [](const VertexSet& a, const VertexSet& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  std::vector<char> used(static_cast<size_t>(g.n()), 0);
  for (const auto& A : cands) {
    bool clash = false;
    for (Vertex v : A) clash |= used[static_cast<size_t>(v)] != 0;
    if (clash || !is_stump(res.graph, d, A, L)) continue;
    Stump s;
    s.A = A;
    s.d = d;
    auto inA = to_mask(g.n(), A);
    for (Vertex v : A)
      for (Vertex w : res.graph.neighbors(v)) {
        if (!inA[static_cast<size_t>(w)]) s.boundary_edges.emplace_back(v, w);
        else if (v < w) s.interior_edges.emplace_back(v, w);
      }
    std::sort(s.boundary_edges.begin(), s.boundary_edges.end());
    res.graph = res.graph.without_edges(s.interior_edges);
    for (Vertex v : A) used[static_cast<size_t>(v)] = 1;
    res.stumps.push_back(std::move(s));
  }
  return res;
}

// ---------------------------------------------------------------------------
// Finite components

struct ComponentColoring {
  VertexSet vertices;
  EdgeColoring colors;  // local colours 1..k on global edges
  std::string method;   // konig, fournier or vizing
};

struct FiniteColoring {
  std::vector<ComponentColoring> components;
  std::vector<VertexSet> rejected;  // larger than L, left for the peel
};

// Each component with at most L vertices and at least one edge, coloured on its own with
// vertices relabelled in sorted order: Konig when bipartite, else Fournier, else Vizing.
inline FiniteColoring color_finite_components(const Graph& g, int L) {
  FiniteColoring out;
  for (const auto& comp : connected_components(g)) {
    if (comp.size() < 2) continue;
    if (static_cast<int>(comp.size()) > L) {
      out.rejected.push_back(comp);
      continue;
    }
    auto [h, back] = g.induced(comp);
    ComponentColoring cc;
    cc.vertices = comp;
    EdgeColoring local;
    if (is_bipartite(h)) {
      local = konig_color(h);
      cc.method = "konig";
    } else if (auto f = fournier_color(h)) {
      local = *f;
      cc.method = "fournier";
    } else {
      local = vizing_color(h);
      cc.method = "vizing";
    }
    for (const auto& [e, c] : local) cc.colors[Edge(back[static_cast<size_t>(e.u)], back[static_cast<size_t>(e.v)])] = c;
    out.components.push_back(std::move(cc));
  }
  return out;
}

// ---------------------------------------------------------------------------
// One peel

struct PeelAudit {
  int d = 0;
  size_t matching_size = 0;
  int stumps = 0;
  int finite_components = 0;
  size_t e0_added = 0;
  int m0_retries = 0;
  long long unhappy_initial = 0;
  long long unhappy_final = 0;
  int rounds = 0;
  long long flips = 0;
  bool next_j_sparse = true;
  std::vector<std::string> warnings;
};

struct PeelResult {
  Matching matching;
  Instance next;  // level d-1
  std::vector<Edge> exceptional;
  PeelAudit audit;
};

// Initial matching around J (moving an edge at a failing J vertex to E0 and retrying), the
// augmenting rounds, then one edge per leftover unhappy vertex to E0 so the new degree-d set
// only keeps vertices the peel allows.
inline PeelResult peel_round(const Instance& inst, const DriverParams& p) {
  const int d = inst.d;
  if (d < 1) throw GraphError("peel_round needs d >= 1");
  PeelResult res;
  res.audit.d = d;
  Graph g = inst.graph;
  Instance cur = inst;
  InitialMatchingResult im;
  while (true) {
    im = initial_matching(cur, p.r1);
    for (auto& w : im.warnings) res.audit.warnings.push_back(w);
    if (im.ok) break;
    Vertex x = im.uncovered_J.front();
    Edge e(x, g.neighbors(x).front());
    res.exceptional.push_back(e);
    g = g.without_edges({e});
    cur = make_instance(g, d, inst.seed);
    ++res.audit.m0_retries;
  }
  KContext k = build_K(cur, p.r, p.r_prime, nullptr, p.r1);
  for (auto& w : k.warnings) res.audit.warnings.push_back(w);
  EngineParams ep;
  ep.n0 = p.n0;
  ep.check_claims = p.check_claims;
  ep.verify_limit = p.verify_limit;
  EngineState st = run_rounds(cur, k, ep, im.matching);
  for (auto& v : st.violations) res.audit.warnings.push_back(v);
  res.matching = st.matching;
  res.audit.matching_size = st.matching.size();
  res.audit.unhappy_initial = st.unhappy_history.front();
  res.audit.unhappy_final = static_cast<long long>(st.unhappy.size());
  res.audit.rounds = st.round;
  res.audit.flips = st.total_flips;

  // residue: G \ M must have max degree d-1 at every unhappy vertex and at most d anywhere
  const auto medges = res.matching.edges();
  std::set<Edge> gone(medges.begin(), medges.end());
  std::vector<int> deg(static_cast<size_t>(g.n()));
  for (Vertex v = 0; v < g.n(); ++v) deg[static_cast<size_t>(v)] = g.degree(v) - (res.matching.covered(v) ? 1 : 0);
  auto trim = [&](Vertex u, int target) {
    for (Vertex w : g.neighbors(u)) {
      if (deg[static_cast<size_t>(u)] <= target) break;
      Edge e(u, w);
      if (gone.count(e)) continue;
      gone.insert(e);
      res.exceptional.push_back(e);
      --deg[static_cast<size_t>(u)];
      --deg[static_cast<size_t>(w)];
    }
  };
  for (Vertex u : st.unhappy) trim(u, d - 1);
  for (Vertex v = 0; v < g.n(); ++v)
    if (deg[static_cast<size_t>(v)] > d) {
      res.audit.warnings.push_back("vertex " + std::to_string(v) + " kept degree above d after the matching");
      trim(v, d);
    }
  std::vector<Edge> drop(gone.begin(), gone.end());
  Graph next = g.without_edges(drop);
  res.next = make_instance(next, d - 1, inst.seed);
  res.audit.e0_added = res.exceptional.size();
  res.audit.next_j_sparse = is_sparse(next, res.next.J, p.r + 2);
  return res;
}

// ---------------------------------------------------------------------------
// Full colouring

struct StumpRecord {
  Stump stump;
  std::string method;  // exact, extend, extend-fallback, failed
  PrecolorRegime regime = PrecolorRegime::MaxDegreeD;
  bool conjecture_ok = false;
};

struct ColoringState {
  EdgeColoring colors;
  std::set<Edge> exceptional;
  int palette_used = 0;
  int palette_bound = 0;
  ColorMode mode = ColorMode::General;
  int n = 0;
  int d0 = 0;
  std::vector<PeelAudit> audit;
  std::vector<StumpRecord> stumps;
  std::vector<std::string> warnings;

  double exceptional_vertex_fraction() const {
    if (n == 0) return 0.0;
    std::set<Vertex> vs;
    for (const Edge& e : exceptional) vs.insert(e.u), vs.insert(e.v);
    return static_cast<double>(vs.size()) / n;
  }
};

inline int general_palette_bound(int d) { return extension_budget(d) + 1; }

namespace detail {

inline void color_stump(ColoringState& st, StumpRecord& rec, const DriverParams& p) {
  const Stump& s = rec.stump;
  // local graph: A in sorted order, then one fresh leaf per coloured boundary edge
  std::map<Vertex, Vertex> local;
  for (Vertex v : s.A) local.emplace(v, static_cast<Vertex>(local.size()));
  std::vector<Edge> es;
  std::vector<std::pair<Edge, int>> pre_global;
  for (const Edge& e : s.interior_edges) es.emplace_back(local.at(e.u), local.at(e.v));
  int leaf = static_cast<int>(s.A.size());
  std::set<int> bcolors;
  for (const Edge& e : s.boundary_edges) {
    auto it = st.colors.find(e);
    if (it == st.colors.end()) continue;
    Vertex inside = local.count(e.u) ? e.u : e.v;
    Edge le(local.at(inside), leaf++);
    es.push_back(le);
    pre_global.emplace_back(le, it->second);
    bcolors.insert(it->second);
  }
  std::vector<int> bc(bcolors.begin(), bcolors.end());
  PreColoring pc;
  pc.d = s.d;
  pc.graph = Graph::from_edges(leaf, es);
  for (auto& [le, c] : pre_global)
    pc.colored_leaves[le] = static_cast<int>(std::lower_bound(bc.begin(), bc.end(), c) - bc.begin()) + 1;

  std::optional<EdgeColoring> ext;
  if (p.conjecture_mode) {
    try {
      ext = extend_exact(pc.graph, pc.colored_leaves, s.d + 1, 2'000'000);
    } catch (const GraphError&) {
      ext.reset();
    }
    rec.conjecture_ok = ext.has_value();
    if (ext) rec.method = "exact";
  }
  if (!ext) {
    ExtensionParams ep;
    ep.samples = p.samples;
    ep.seed = p.seed ^ static_cast<uint64_t>(s.A.front());
    auto r = extend_precoloring(pc, ep);
    rec.regime = r.regime;
    rec.method = r.fallback ? "extend-fallback" : "extend";
    ext = std::move(r.coloring);
  }
  // local colours 1..k are the boundary colours; the rest go to level colours from
  // d0-d+1 upward that no boundary edge uses
  const int k = static_cast<int>(bc.size());
  std::vector<int> others;
  for (int c = st.d0 - s.d + 1; static_cast<int>(others.size()) < max_color(*ext); ++c)
    if (!bcolors.count(c)) others.push_back(c);
  std::vector<Vertex> back(static_cast<size_t>(leaf), -1);
  for (auto [gv, lv] : local) back[static_cast<size_t>(lv)] = gv;
  for (const auto& [e, c] : *ext) {
    if (back[static_cast<size_t>(e.u)] < 0 || back[static_cast<size_t>(e.v)] < 0) continue;  // a boundary leaf
    const int gc = c <= k ? bc[static_cast<size_t>(c - 1)] : others[static_cast<size_t>(c - k - 1)];
    st.colors[Edge(back[static_cast<size_t>(e.u)], back[static_cast<size_t>(e.v)])] = gc;
  }
}

}  // namespace detail

// Levels d0, d0-1, ..., 1: stump removal (general mode), clean-up of components with at most
// L vertices, then one peel whose matching takes colour d0-d+1. What is left at level 0 is a
// matching and takes colour d0+1. Stump interiors are coloured last, latest removal first.
inline ColoringState edge_color(const Instance& inst, ColorMode mode, const DriverParams& p = {}) {
  inst.validate();
  if (mode == ColorMode::Bipartite && !is_bipartite(inst.graph)) throw GraphError("bipartite mode on a graph with an odd cycle");
  if (p.n0 < 1 || p.r_prime < 1 || p.L < 1) throw GraphError("edge_color: schedule values must be positive");
  ColoringState st;
  st.mode = mode;
  st.n = inst.graph.n();
  st.d0 = inst.d;
  const int D0 = inst.d;
  st.palette_bound = mode == ColorMode::Bipartite ? D0 + 1 : general_palette_bound(D0);
  Graph g = inst.graph;
  for (int d = D0; d >= 1; --d) {
    PeelAudit level;
    level.d = d;
    if (mode == ColorMode::General) {
      auto rem = find_and_remove_stumps(g, d, p.s_max, p.L);
      g = rem.graph;
      level.stumps = static_cast<int>(rem.stumps.size());
      for (auto& s : rem.stumps) st.stumps.push_back(StumpRecord{std::move(s), "", PrecolorRegime::MaxDegreeD, false});
    }
    auto fin = color_finite_components(g, p.L);
    std::vector<Edge> done;
    for (const auto& cc : fin.components) {
      if (max_color(cc.colors) > d + 1)
        level.warnings.push_back("finite component at " + std::to_string(cc.vertices.front()) + " needed " +
                                 std::to_string(max_color(cc.colors)) + " colours");
      for (const auto& [e, c] : cc.colors) {
        st.colors[e] = D0 - d + c;
        done.push_back(e);
      }
    }
    level.finite_components = static_cast<int>(fin.components.size());
    g = g.without_edges(done);
    if (g.num_edges() == 0) {
      st.audit.push_back(level);
      break;
    }
    auto peel = peel_round(make_instance(g, d, inst.seed), p);
    const int stumps = level.stumps, fc = level.finite_components;
    auto warnings = level.warnings;
    level = peel.audit;
    level.stumps = stumps;
    level.finite_components = fc;
    level.warnings.insert(level.warnings.begin(), warnings.begin(), warnings.end());
    for (const Edge& e : peel.matching.edges()) st.colors[e] = D0 - d + 1;
    for (const Edge& e : peel.exceptional) st.exceptional.insert(e);
    g = peel.next.graph;
    st.audit.push_back(level);
  }
  if (g.num_edges() > 0) {
    if (g.delta() > 1) throw std::logic_error("edge_color: level-0 remainder is not a matching");
    for (const Edge& e : g.edges()) st.colors[e] = D0 + 1;
  }
  for (auto it = st.stumps.rbegin(); it != st.stumps.rend(); ++it) {
    try {
      detail::color_stump(st, *it, p);
    } catch (const std::exception& ex) {
      it->method = "failed";
      st.warnings.push_back(std::string("stump at ") + std::to_string(it->stump.A.front()) + ": " + ex.what());
      for (const Edge& e : it->stump.interior_edges) st.exceptional.insert(e);
    }
  }
  st.palette_used = max_color(st.colors);
  if (!is_proper(inst.graph, st.colors)) throw std::logic_error("edge_color produced an improper colouring");
  for (const Edge& e : inst.graph.edges())
    if (!st.colors.count(e) && !st.exceptional.count(e)) throw std::logic_error("edge_color left an edge unaccounted");
  return st;
}

// "u v color" per edge, "u v *" for exceptional edges, in edge order.
inline std::string coloring_text(const Graph& g, const ColoringState& st) {
  std::ostringstream os;
  for (const Edge& e : g.edges()) {
    auto it = st.colors.find(e);
    if (it != st.colors.end()) os << e.u << " " << e.v << " " << it->second << "\n";
    else os << e.u << " " << e.v << " *\n";
  }
  return os.str();
}

inline std::string audit_csv(const ColoringState& st) {
  std::ostringstream os;
  os << "level,d,matching_size,stumps,finite_components,e0_added,m0_retries,unhappy_initial,unhappy_final,rounds,flips,next_j_sparse,warnings\n";
  for (size_t i = 0; i < st.audit.size(); ++i) {
    const auto& a = st.audit[i];
    os << i << "," << a.d << "," << a.matching_size << "," << a.stumps << "," << a.finite_components << "," << a.e0_added << ","
       << a.m0_retries << "," << a.unhappy_initial << "," << a.unhappy_final << "," << a.rounds << "," << a.flips << ","
       << (a.next_j_sparse ? 1 : 0) << "," << a.warnings.size() << "\n";
  }
  return os.str();
}

}  // namespace mec
