#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "coloring.hpp"
#include "driver.hpp"
#include "graph.hpp"
#include "labeling.hpp"
#include "vizing.hpp"

namespace mec {

using Arc = std::pair<Vertex, Vertex>;  // (u, v): the map sends u to v

// Partial injections F_1..F_k; arcs[j] is F_{j+1}.
struct Orientation {
  std::vector<std::vector<Arc>> arcs;
  int k() const { return static_cast<int>(arcs.size()); }
};

// Every map has in- and out-degree <= 1, each arc is an edge, and the arcs cover E once.
inline bool verify_orientation(const Graph& g, const Orientation& o, bool disjoint_domain_range = false) {
  std::set<Edge> seen;
  for (const auto& f : o.arcs) {
    std::vector<int> out(static_cast<size_t>(g.n()), 0), in(static_cast<size_t>(g.n()), 0);
    for (auto [u, v] : f) {
      if (u < 0 || v < 0 || u >= g.n() || v >= g.n() || !g.adjacent(u, v)) return false;
      if (++out[static_cast<size_t>(u)] > 1 || ++in[static_cast<size_t>(v)] > 1) return false;
      if (!seen.insert(Edge(u, v)).second) return false;
    }
    if (disjoint_domain_range)
      for (Vertex x = 0; x < g.n(); ++x)
        if (out[static_cast<size_t>(x)] && in[static_cast<size_t>(x)]) return false;
  }
  return seen.size() == g.num_edges();
}

// Over label pairs in increasing order, each edge takes the smallest (j, label(a), label(b))
// for which the arc a -> b keeps F_j a partial injection. The labeling must be 2-sparse.
inline Orientation orient_into_functions(const Graph& g, int d, const Labeling& lab) {
  if (g.delta() > d) throw GraphError("orient_into_functions needs max degree <= d");
  if (static_cast<int>(lab.labels.size()) != g.n() || !classes_sparse(g, lab, 2))
    throw GraphError("orient_into_functions needs a 2-sparse labeling");
  auto L = [&](Vertex v) { return lab.labels[static_cast<size_t>(v)]; };
  std::vector<Edge> es = g.edges();
  std::stable_sort(es.begin(), es.end(), [&](const Edge& a, const Edge& b) {
    auto ka = std::minmax(L(a.u), L(a.v)), kb = std::minmax(L(b.u), L(b.v));
    return ka < kb;
  });
  Orientation o;
  std::vector<std::vector<char>> has_out, has_in;
  auto ensure = [&](int j) {
    while (static_cast<int>(o.arcs.size()) <= j) {
      o.arcs.emplace_back();
      has_out.emplace_back(static_cast<size_t>(g.n()), 0);
      has_in.emplace_back(static_cast<size_t>(g.n()), 0);
    }
  };
  for (const Edge& e : es) {
    // orientation with the smaller tail label first
    Vertex a = L(e.u) <= L(e.v) ? e.u : e.v, b = a == e.u ? e.v : e.u;
    bool placed = false;
    for (int j = 0; j < d && !placed; ++j) {
      ensure(j);
      for (auto [t, h] : {Arc{a, b}, Arc{b, a}}) {
        if (has_out[static_cast<size_t>(j)][static_cast<size_t>(t)] || has_in[static_cast<size_t>(j)][static_cast<size_t>(h)]) continue;
        o.arcs[static_cast<size_t>(j)].emplace_back(t, h);
        has_out[static_cast<size_t>(j)][static_cast<size_t>(t)] = has_in[static_cast<size_t>(j)][static_cast<size_t>(h)] = 1;
        placed = true;
        break;
      }
    }
    if (!placed) throw std::logic_error("orient_into_functions: no admissible map for an edge");
  }
  while (!o.arcs.empty() && o.arcs.back().empty()) o.arcs.pop_back();
  return o;
}

// Smallest colour free at both ends, edges in sorted order: at most 2*Delta - 1 classes.
inline std::vector<std::vector<Edge>> greedy_matchings(const Graph& g) {
  std::vector<std::set<int>> used(static_cast<size_t>(g.n()));
  std::vector<std::vector<Edge>> classes;
  for (const Edge& e : g.edges()) {
    int c = 0;
    while (used[static_cast<size_t>(e.u)].count(c) || used[static_cast<size_t>(e.v)].count(c)) ++c;
    if (c >= static_cast<int>(classes.size())) classes.resize(static_cast<size_t>(c) + 1);
    classes[static_cast<size_t>(c)].push_back(e);
    used[static_cast<size_t>(e.u)].insert(c);
    used[static_cast<size_t>(e.v)].insert(c);
  }
  return classes;
}

// ---------------------------------------------------------------------------
// Matching breaker

struct BreakerResult {
  std::vector<Edge> M;
  std::vector<size_t> largest;  // largest[0] for F_0 ∪ M, largest[j] for F_j \ M
  size_t bound = 0;
  bool ok = true;
};

namespace detail {

inline size_t largest_component(int n, const std::vector<Edge>& es) {
  if (es.empty()) return 0;
  Graph h = Graph::from_edges(n, es);
  size_t best = 0;
  for (const auto& c : connected_components(h))
    if (c.size() > 1) best = std::max(best, c.size());
  return best;
}

// Greedy maximal subset D of X, in edge order, such that within Y (max degree 2) every edge of
// D is farther than r from the other D vertices and from Y's degree-1 vertices.
inline std::vector<Edge> sparse_subset(int n, const std::vector<Edge>& Y, const std::vector<Edge>& X, int r) {
  Graph y = Graph::from_edges(n, Y);
  VertexSet seeds;
  for (Vertex v = 0; v < n; ++v)
    if (y.degree(v) == 1) seeds.push_back(v);
  std::vector<int> dist = bfs_distances(y, seeds, r);
  std::vector<Edge> D;
  std::vector<Edge> xs = X;
  std::sort(xs.begin(), xs.end());
  for (const Edge& e : xs) {
    if ((dist[static_cast<size_t>(e.u)] >= 0 && dist[static_cast<size_t>(e.u)] <= r) ||
        (dist[static_cast<size_t>(e.v)] >= 0 && dist[static_cast<size_t>(e.v)] <= r))
      continue;
    D.push_back(e);
    // new sources: the endpoints of e; refresh distances within radius r
    auto local = bfs_distances(y, {e.u, e.v}, r);
    for (Vertex v = 0; v < n; ++v)
      if (local[static_cast<size_t>(v)] >= 0 && (dist[static_cast<size_t>(v)] < 0 || local[static_cast<size_t>(v)] < dist[static_cast<size_t>(v)]))
        dist[static_cast<size_t>(v)] = local[static_cast<size_t>(v)];
  }
  return D;
}

}  // namespace detail

// One pass per (d_i, j): j = 1..k take a sparse subset of F_j \ M into M (dropping M edges it
// touches), j = 0 drops a sparse subset of M measured inside F_0 ∪ M. Bound B = 2*d_last + 4.
// Later passes can regrow earlier components; a schedule that is too short shows up as ok = false.
inline BreakerResult matching_breaker(int n, const std::vector<std::vector<Edge>>& F, const std::vector<Edge>& F0,
                                      const std::vector<int>& schedule) {
  for (const auto& f : F)
    if (Graph::from_edges(n, f).delta() > 2) throw GraphError("matching_breaker: some F_j has a vertex of degree above 2");
  if (Graph::from_edges(n, F0).delta() > 1) throw GraphError("matching_breaker: F_0 is not a matching");
  if (schedule.empty()) throw GraphError("matching_breaker needs a nonempty schedule");
  std::set<Edge> all;
  size_t total = F0.size();
  for (const auto& f : F) total += f.size();
  for (const auto& f : F) all.insert(f.begin(), f.end());
  all.insert(F0.begin(), F0.end());
  if (all.size() != total) throw GraphError("matching_breaker: edge sets overlap");

  std::set<Edge> M;
  auto minus_M = [&](const std::vector<Edge>& f) {
    std::vector<Edge> out;
    for (const Edge& e : f)
      if (!M.count(e)) out.push_back(e);
    return out;
  };
  auto F0_with_M = [&]() {
    std::vector<Edge> out(F0.begin(), F0.end());
    out.insert(out.end(), M.begin(), M.end());
    return out;
  };
  for (int di : schedule)
    if (di < 1) throw GraphError("matching_breaker: schedule values must be positive");
  auto sweep = [&](int di) {
    for (size_t j = 1; j <= F.size(); ++j) {
      auto Fj = minus_M(F[j - 1]);
      auto D = detail::sparse_subset(n, Fj, Fj, di);
      std::set<Vertex> touched;
      for (const Edge& e : D) touched.insert(e.u), touched.insert(e.v);
      for (auto it = M.begin(); it != M.end();) {
        if (touched.count(it->u) || touched.count(it->v)) it = M.erase(it);
        else ++it;
      }
      M.insert(D.begin(), D.end());
    }
    auto D0 = detail::sparse_subset(n, F0_with_M(), std::vector<Edge>(M.begin(), M.end()), di);
    for (const Edge& e : D0) M.erase(e);
  };
  const size_t B = static_cast<size_t>(2 * schedule.back() + 4);
  auto largest = [&]() {
    std::vector<size_t> out{detail::largest_component(n, F0_with_M())};
    for (const auto& f : F) out.push_back(detail::largest_component(n, minus_M(f)));
    return out;
  };
  auto within = [&](const std::vector<size_t>& ls) {
    return std::all_of(ls.begin(), ls.end(), [&](size_t s) { return s <= B; });
  };
  for (int di : schedule) sweep(di);
  BreakerResult res;
  res.largest = largest();
  res.M.assign(M.begin(), M.end());
  res.bound = B;
  res.ok = within(res.largest);
  if (Graph::from_edges(n, res.M).delta() > 1) throw std::logic_error("matching_breaker: M is not a matching");
  return res;
}

inline std::vector<int> default_breaker_schedule(int sweeps = 4) {
  std::vector<int> s;
  for (int i = 0; i < sweeps; ++i) s.push_back(8 << i);
  return s;
}

// ---------------------------------------------------------------------------
// Generating maps

struct GeneratorReport {
  bool relaxed = false;
  Orientation maps;
  int classes = 0;        // matchings from the colouring, exceptional edges included
  int exceptional_edges = 0;
  int bound = 0;
  bool within_bound = true;
  bool regenerates = false;
  std::vector<size_t> breaker_largest;
  size_t breaker_bound = 0;
};

// A graph of max degree 2 as directed paths and cycles, walking each component from its
// smallest endpoint (or smallest vertex for a cycle).
inline std::vector<Arc> orient_paths_and_cycles(int n, const std::vector<Edge>& es) {
  Graph h = Graph::from_edges(n, es);
  if (h.delta() > 2) throw GraphError("orient_paths_and_cycles needs max degree <= 2");
  std::vector<Arc> arcs;
  for (const auto& comp : connected_components(h)) {
    if (comp.size() < 2) continue;
    Vertex start = comp.front();
    for (Vertex v : comp)
      if (h.degree(v) == 1) { start = v; break; }
    Vertex prev = -1, cur = start;
    for (size_t steps = 0; steps < comp.size(); ++steps) {
      Vertex next = -1;
      for (Vertex w : h.neighbors(cur))
        if (w != prev && (next < 0 || w < next)) next = w;
      if (next < 0) break;
      arcs.emplace_back(cur, next);
      if (next == start) break;
      prev = cur;
      cur = next;
    }
  }
  return arcs;
}

// Strict: one map per colour class (a matching, tail = smaller label of a 1-sparse labeling,
// so domain and range are disjoint). Relaxed: classes 1..m-1 paired into max-degree-2 graphs,
// class m as F_0, broken by matching_breaker, each piece oriented along its paths and cycles.
inline GeneratorReport generator_count(const Instance& inst, bool relaxed, const DriverParams& p = {},
                                       const std::vector<int>& schedule = default_breaker_schedule()) {
  const Graph& g = inst.graph;
  const int d = inst.d;
  ColorMode mode = inst.bipartite ? ColorMode::Bipartite : ColorMode::General;
  ColoringState st = edge_color(inst, mode, p);
  GeneratorReport rep;
  rep.relaxed = relaxed;
  rep.exceptional_edges = static_cast<int>(st.exceptional.size());
  // exceptional edges are folded into the existing classes by Kempe and fan moves
  EdgeColoring col = st.exceptional.empty() ? st.colors : complete_coloring(g, st.colors);
  auto classes = color_classes(col);
  classes.erase(std::remove_if(classes.begin(), classes.end(), [](const auto& c) { return c.empty(); }), classes.end());
  const int m = static_cast<int>(classes.size());
  rep.classes = m;
  const int top = mode == ColorMode::Bipartite ? d + 1 : extension_budget(d);
  if (!relaxed) {
    Labeling lab = sparse_labeling(g, 1);
    for (const auto& cls : classes) {
      std::vector<Arc> f;
      for (const Edge& e : cls) {
        const bool fwd = lab.labels[static_cast<size_t>(e.u)] < lab.labels[static_cast<size_t>(e.v)];
        f.emplace_back(fwd ? e.u : e.v, fwd ? e.v : e.u);
      }
      rep.maps.arcs.push_back(std::move(f));
    }
    rep.bound = top;
  } else {
    rep.bound = (top + 2) / 2;  // ceil((top + 1) / 2)
    if (m > 0) {
      std::vector<std::vector<Edge>> F;
      for (int i = 0; i + 1 < m; i += 2) {
        std::vector<Edge> f = classes[static_cast<size_t>(i)];
        if (i + 1 < m - 1) f.insert(f.end(), classes[static_cast<size_t>(i + 1)].begin(), classes[static_cast<size_t>(i + 1)].end());
        F.push_back(std::move(f));
      }
      const auto& F0 = classes.back();
      auto br = matching_breaker(g.n(), F, F0, schedule);
      rep.breaker_largest = br.largest;
      rep.breaker_bound = br.bound;
      std::set<Edge> M(br.M.begin(), br.M.end());
      std::vector<Edge> f0(F0.begin(), F0.end());
      f0.insert(f0.end(), br.M.begin(), br.M.end());
      rep.maps.arcs.push_back(orient_paths_and_cycles(g.n(), f0));
      for (const auto& f : F) {
        std::vector<Edge> rest;
        for (const Edge& e : f)
          if (!M.count(e)) rest.push_back(e);
        if (!rest.empty()) rep.maps.arcs.push_back(orient_paths_and_cycles(g.n(), rest));
      }
    }
  }
  rep.within_bound = rep.maps.k() <= rep.bound;
  rep.regenerates = verify_orientation(g, rep.maps, !relaxed);
  return rep;
}

inline std::string maps_text(const Orientation& o) {
  std::ostringstream os;
  for (int j = 0; j < o.k(); ++j)
    for (auto [u, v] : o.arcs[static_cast<size_t>(j)]) os << "map " << (j + 1) << ": " << u << " -> " << v << "\n";
  return os.str();
}

inline std::string generator_report_csv(const GeneratorReport& r) {
  std::ostringstream os;
  os << "relaxed,maps,bound,within_bound,classes,exceptional_edges,regenerates,breaker_largest,breaker_bound\n";
  size_t largest = 0;
  for (size_t s : r.breaker_largest) largest = std::max(largest, s);
  os << (r.relaxed ? 1 : 0) << "," << r.maps.k() << "," << r.bound << "," << (r.within_bound ? 1 : 0) << "," << r.classes << ","
     << r.exceptional_edges << "," << (r.regenerates ? 1 : 0) << "," << largest << "," << r.breaker_bound << "\n";
  return os.str();
}

}  // namespace mec
