#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "coloring.hpp"
#include "enumerate.hpp"
#include "graph.hpp"
#include "rng.hpp"
#include "vizing.hpp"

namespace mec {

// A graph with some leaf edges already coloured. Leaf edge: one endpoint has degree 1.
struct PreColoring {
  Graph graph;
  EdgeColoring colored_leaves;
  int d = 0;
};

enum class PrecolorRegime { MaxDegreeD, OneAboveD };

inline const char* regime_name(PrecolorRegime r) { return r == PrecolorRegime::MaxDegreeD ? "max-degree-d" : "one-vertex-d+1"; }

inline bool is_leaf_edge(const Graph& g, const Edge& e) { return g.degree(e.u) == 1 || g.degree(e.v) == 1; }

// Throws GraphError on a broken precondition; returns which degree regime applies.
// `max_leaves` is d for the extension procedure and d-1 for the f-search setting.
inline PrecolorRegime validate_precoloring(const PreColoring& pc, int max_leaves) {
  const Graph& g = pc.graph;
  if (pc.d < 1) throw GraphError("precoloring needs d >= 1");
  if (static_cast<int>(pc.colored_leaves.size()) > max_leaves)
    throw GraphError("more than " + std::to_string(max_leaves) + " pre-coloured edges");
  int above = 0;
  for (Vertex v = 0; v < g.n(); ++v) {
    if (g.degree(v) > pc.d + 1) throw GraphError("vertex " + std::to_string(v) + " has degree above d+1");
    if (g.degree(v) == pc.d + 1) ++above;
  }
  if (above > 1) throw GraphError("more than one vertex of degree d+1");
  for (const auto& [e, c] : pc.colored_leaves) {
    if (!g.has_edge(e)) throw GraphError("pre-coloured pair " + std::to_string(e.u) + "-" + std::to_string(e.v) + " is not an edge");
    if (!is_leaf_edge(g, e)) throw GraphError("pre-coloured edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " is not a leaf");
    if (c < 1 || c > pc.d) throw GraphError("pre-colour " + std::to_string(c) + " outside [d]");
  }
  if (!is_proper(g, pc.colored_leaves)) throw GraphError("improper pre-colouring");
  return above == 0 ? PrecolorRegime::MaxDegreeD : PrecolorRegime::OneAboveD;
}

inline int extension_budget(int d) { return d + static_cast<int>(std::ceil(9.0 * std::sqrt(static_cast<double>(d)) - 1e-9)); }

struct ExtensionParams {
  int samples = 64;
  uint64_t seed = 0;
};

struct ExtensionResult {
  EdgeColoring coloring;
  PrecolorRegime regime = PrecolorRegime::MaxDegreeD;
  int palette = 0;            // largest colour used
  int budget = 0;             // d + ceil(9 sqrt d)
  int s = 0;                  // floor(d + 2 sqrt d)
  int y_size = 0;
  int fresh_y_colors = 0;     // colours reserved for G[Y]
  int stage2_overruns = 0;    // Y-Z edges that found no colour in [s]
  int conflict_max_degree = 0;
  int near_max_conflicts = 0;  // max X_z over z within distance 2 of L ∪ Y
  int samples_tried = 0;
  bool fallback = false;      // no sample met the conflict bounds
  bool budget_overrun = false;
};

// Five stages: G[Y] with fresh colours, Y-Z edges greedily in [s], Vizing on H = G[Z],
// a sampled colour permutation of H, and fresh colours for the remaining conflict edges.
inline ExtensionResult extend_precoloring(const PreColoring& pc, const ExtensionParams& params = {}) {
  ExtensionResult res;
  res.regime = validate_precoloring(pc, pc.d);
  const Graph& g = pc.graph;
  const int n = g.n();
  const int d = pc.d;
  const double sq = std::sqrt(static_cast<double>(d));
  res.s = static_cast<int>(std::floor(d + 2.0 * sq + 1e-9));
  res.budget = extension_budget(d);
  const int s = res.s;

  EdgeColoring col = pc.colored_leaves;
  std::vector<char> inL(static_cast<size_t>(n), 0), inY(static_cast<size_t>(n), 0), inZ(static_cast<size_t>(n), 0);
  std::vector<int> pre_at(static_cast<size_t>(n), 0);
  for (const auto& [e, c] : pc.colored_leaves) {
    ++pre_at[static_cast<size_t>(e.u)];
    ++pre_at[static_cast<size_t>(e.v)];
    if (g.degree(e.u) == 1) inL[static_cast<size_t>(e.u)] = 1;
    if (g.degree(e.v) == 1) inL[static_cast<size_t>(e.v)] = 1;
  }
  VertexSet Y;
  for (Vertex v = 0; v < n; ++v)
    if (!inL[static_cast<size_t>(v)] && pre_at[static_cast<size_t>(v)] > 0 && pre_at[static_cast<size_t>(v)] >= sq - 1e-9) {
      inY[static_cast<size_t>(v)] = 1;
      Y.push_back(v);
    }
  for (Vertex v = 0; v < n; ++v) inZ[static_cast<size_t>(v)] = !inL[static_cast<size_t>(v)] && !inY[static_cast<size_t>(v)];
  res.y_size = static_cast<int>(Y.size());

  std::vector<std::set<int>> at(static_cast<size_t>(n));
  auto put = [&](const Edge& e, int c) {
    col[e] = c;
    at[static_cast<size_t>(e.u)].insert(c);
    at[static_cast<size_t>(e.v)].insert(c);
  };
  for (const auto& [e, c] : pc.colored_leaves) {
    at[static_cast<size_t>(e.u)].insert(c);
    at[static_cast<size_t>(e.v)].insert(c);
  }

  // (1) G[Y] with |Y| colours of [s] that no pre-coloured edge uses
  if (!Y.empty()) {
    std::set<int> pre_colors;
    for (const auto& [e, c] : pc.colored_leaves) pre_colors.insert(c);
    std::vector<int> fresh;
    for (int c = 1; static_cast<int>(fresh.size()) < res.y_size; ++c)
      if (!pre_colors.count(c)) fresh.push_back(c);
    res.fresh_y_colors = static_cast<int>(fresh.size());
    auto [gy, back] = g.induced(Y);
    auto cy = vizing_color(gy);
    for (const auto& [e, c] : cy) {
      // Delta(G[Y]) + 1 <= |Y|
      if (c > res.y_size) throw std::logic_error("extend_precoloring: G[Y] needed more than |Y| colours");
      put(Edge(back[static_cast<size_t>(e.u)], back[static_cast<size_t>(e.v)]), fresh[static_cast<size_t>(c - 1)]);
    }
  }

  // (2) Y-Z edges, smallest free colour in [s]
  int overflow_next = s;
  std::vector<int> overflow_colors;
  for (const Edge& e : g.edges()) {
    const bool yz = (inY[static_cast<size_t>(e.u)] && inZ[static_cast<size_t>(e.v)]) || (inY[static_cast<size_t>(e.v)] && inZ[static_cast<size_t>(e.u)]);
    if (!yz) continue;
    int c = 1;
    while (c <= s && (at[static_cast<size_t>(e.u)].count(c) || at[static_cast<size_t>(e.v)].count(c))) ++c;
    if (c > s) {
      ++res.stage2_overruns;
      c = ++overflow_next;
      overflow_colors.push_back(c);
    }
    put(e, c);
  }

  // (3) H = G[Z] with at most Delta(H) + 1 <= s colours
  VertexSet Z = from_mask(inZ);
  auto [h, back] = g.induced(Z);
  EdgeColoring gh;
  for (const auto& [e, c] : vizing_color(h)) gh[Edge(back[static_cast<size_t>(e.u)], back[static_cast<size_t>(e.v)])] = c;
  const int q = std::max(d + 1, h.delta() + 1);

  // vertices within distance 2 of L ∪ Y
  VertexSet LY;
  for (Vertex v = 0; v < n; ++v)
    if (inL[static_cast<size_t>(v)] || inY[static_cast<size_t>(v)]) LY.push_back(v);
  auto near = bfs_distances(g, LY, 2);

  // (4) permutation sampling; conflicts are H edges sharing a colour with an outside edge
  auto conflicts_for = [&](const std::vector<int>& sigma, std::vector<Edge>* out, int* max_deg, int* near_max) {
    std::vector<int> cdeg(static_cast<size_t>(n), 0), xz(static_cast<size_t>(n), 0);
    for (const auto& [e, c] : gh) {
      const int sc = sigma[static_cast<size_t>(c)];
      const bool cu = at[static_cast<size_t>(e.u)].count(sc) > 0, cv = at[static_cast<size_t>(e.v)].count(sc) > 0;
      if (!cu && !cv) continue;
      if (out) out->push_back(e);
      ++cdeg[static_cast<size_t>(e.u)];
      ++cdeg[static_cast<size_t>(e.v)];
      // X_z counts H-edges at z whose conflict sits at the other end
      if (cv) ++xz[static_cast<size_t>(e.u)];
      if (cu) ++xz[static_cast<size_t>(e.v)];
    }
    *max_deg = 0;
    *near_max = 0;
    for (Vertex v = 0; v < n; ++v) {
      *max_deg = std::max(*max_deg, cdeg[static_cast<size_t>(v)]);
      if (inZ[static_cast<size_t>(v)] && near[static_cast<size_t>(v)] >= 0) *near_max = std::max(*near_max, xz[static_cast<size_t>(v)]);
    }
  };
  Rng rng(params.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<int> best_sigma, sigma(static_cast<size_t>(q) + 1);
  int best_deg = -1, best_near = 0;
  const double total_cap = 6.5 * sq, near_cap = 4.5 * sq;
  for (int t = 0; t < std::max(1, params.samples); ++t) {
    for (int c = 0; c <= q; ++c) sigma[static_cast<size_t>(c)] = c;
    if (t > 0) {
      std::vector<int> tail(sigma.begin() + 1, sigma.end());
      shuffle_in_place(rng, tail);
      std::copy(tail.begin(), tail.end(), sigma.begin() + 1);
    }
    int md = 0, nm = 0;
    conflicts_for(sigma, nullptr, &md, &nm);
    ++res.samples_tried;
    if (best_deg < 0 || md < best_deg) {
      best_deg = md;
      best_near = nm;
      best_sigma = sigma;
    }
    if (md <= total_cap && nm < near_cap) {
      best_deg = md;
      best_near = nm;
      best_sigma = sigma;
      break;
    }
  }
  res.fallback = !(best_deg <= total_cap && best_near < near_cap);

  // (5) fresh colours above [s] and above any stage-2 overflow for the conflict graph
  std::vector<Edge> conf;
  int md = 0, nm = 0;
  conflicts_for(best_sigma, &conf, &md, &nm);
  res.conflict_max_degree = md;
  res.near_max_conflicts = nm;
  std::set<Edge> conf_set(conf.begin(), conf.end());
  for (const auto& [e, c] : gh)
    if (!conf_set.count(e)) put(e, best_sigma[static_cast<size_t>(c)]);
  if (!conf.empty()) {
    Graph cg = Graph::from_edges(n, conf);
    const int base = overflow_next;
    for (const auto& [e, c] : vizing_color(cg)) put(e, base + c);
  }
  res.coloring = std::move(col);
  res.palette = max_color(res.coloring);
  res.budget_overrun = res.palette > res.budget;
  if (!is_proper(g, res.coloring) || res.coloring.size() != g.num_edges())
    throw std::logic_error("extend_precoloring produced an improper or partial colouring");
  return res;
}

// Exact extension with colours in [palette]; unused colours are interchangeable, so only the
// smallest not-yet-used one is tried. nullopt when none exists; throws past node_budget.
inline std::optional<EdgeColoring> extend_exact(const Graph& g, const EdgeColoring& pre, int palette,
                                                long long node_budget = 5'000'000) {
  std::vector<Edge> order;
  {
    std::vector<char> seen(static_cast<size_t>(g.n()), 0);
    std::set<Edge> taken;
    for (Vertex s = 0; s < g.n(); ++s) {
      if (seen[static_cast<size_t>(s)]) continue;
      std::vector<Vertex> q{s};
      seen[static_cast<size_t>(s)] = 1;
      for (size_t i = 0; i < q.size(); ++i)
        for (Vertex w : g.neighbors(q[i])) {
          Edge e(q[i], w);
          if (!pre.count(e) && taken.insert(e).second) order.push_back(e);
          if (!seen[static_cast<size_t>(w)]) seen[static_cast<size_t>(w)] = 1, q.push_back(w);
        }
    }
  }
  std::vector<std::vector<char>> used(static_cast<size_t>(g.n()), std::vector<char>(static_cast<size_t>(palette) + 1, 0));
  int top = 0;
  for (const auto& [e, c] : pre) {
    if (c < 1 || c > palette) return std::nullopt;
    if (used[static_cast<size_t>(e.u)][static_cast<size_t>(c)] || used[static_cast<size_t>(e.v)][static_cast<size_t>(c)]) return std::nullopt;
    used[static_cast<size_t>(e.u)][static_cast<size_t>(c)] = used[static_cast<size_t>(e.v)][static_cast<size_t>(c)] = 1;
    top = std::max(top, c);
  }
  std::vector<int> col(order.size(), 0);
  long long nodes = 0;
  auto rec = [&](auto&& self, size_t i, int hi) -> bool {
    if (++nodes > node_budget) throw GraphError("extend_exact: node budget exceeded");
    if (i == order.size()) return true;
    const Edge e = order[i];
    for (int c = 1; c <= std::min(palette, hi + 1); ++c) {
      if (used[static_cast<size_t>(e.u)][static_cast<size_t>(c)] || used[static_cast<size_t>(e.v)][static_cast<size_t>(c)]) continue;
      used[static_cast<size_t>(e.u)][static_cast<size_t>(c)] = used[static_cast<size_t>(e.v)][static_cast<size_t>(c)] = 1;
      col[i] = c;
      if (self(self, i + 1, std::max(hi, c))) return true;
      used[static_cast<size_t>(e.u)][static_cast<size_t>(c)] = used[static_cast<size_t>(e.v)][static_cast<size_t>(c)] = 0;
    }
    return false;
  };
  if (!rec(rec, 0, top)) return std::nullopt;
  EdgeColoring out = pre;
  for (size_t i = 0; i < order.size(); ++i) out[order[i]] = col[i];
  return out;
}

// ---------------------------------------------------------------------------
// Exhaustive probe for the smallest extra-colour count f at small d

struct FSearchVerdict {
  int d = 0;
  int n_max = 0;
  bool complete = true;
  bool counterexample = false;
  std::optional<PreColoring> witness;
  long long graphs_checked = 0;
  long long precolorings_checked = 0;
  int frontier_n = 0;  // every graph up to this many vertices was finished
};

// Connected graphs on <= n_max vertices with degrees <= d except at most one d+1, every proper
// pre-colouring of at most d-1 leaf edges (colours up to renaming), extension with d+1 colours.
inline FSearchVerdict search_f_counterexample(int d, int n_max, long long max_checks = 50'000'000) {
  if (d < 1 || d > 4) throw GraphError("search_f_counterexample supports 1 <= d <= 4");
  if (n_max < 1 || n_max > 10) throw GraphError("search_f_counterexample supports 1 <= n_max <= 10");
  FSearchVerdict v;
  v.d = d;
  v.n_max = n_max;
  auto all = connected_graphs_up_to(n_max, d + 1);
  for (int n = 1; n <= n_max; ++n) {
    for (const Graph& g : all[static_cast<size_t>(n)]) {
      int above = 0;
      for (Vertex x = 0; x < g.n(); ++x) above += g.degree(x) == d + 1;
      if (above > 1) continue;
      ++v.graphs_checked;
      std::vector<Edge> leaves;
      for (const Edge& e : g.edges())
        if (is_leaf_edge(g, e)) leaves.push_back(e);
      const int L = static_cast<int>(leaves.size());
      // subsets of leaves of size <= d-1, then colourings as restricted growth strings
      std::vector<int> pick;
      bool stop = false;
      auto try_subset = [&]() {
        const int k = static_cast<int>(pick.size());
        std::vector<int> rgs(static_cast<size_t>(k), 0);
        auto emit = [&]() -> bool {
          EdgeColoring pre;
          for (int i = 0; i < k; ++i) pre[leaves[static_cast<size_t>(pick[static_cast<size_t>(i)])]] = rgs[static_cast<size_t>(i)] + 1;
          if (!is_proper(g, pre)) return true;
          if (++v.precolorings_checked > max_checks) {
            v.complete = false;
            return false;
          }
          if (!extend_exact(g, pre, d + 1)) {
            v.counterexample = true;
            v.witness = PreColoring{g, pre, d};
            return false;
          }
          return true;
        };
        auto gen = [&](auto&& self, int i, int mx) -> bool {
          if (i == k) return emit();
          for (int c = 0; c <= std::min(mx + 1, d - 1); ++c) {
            rgs[static_cast<size_t>(i)] = c;
            if (!self(self, i + 1, std::max(mx, c))) return false;
          }
          return true;
        };
        if (!gen(gen, 0, -1)) stop = true;
      };
      auto choose = [&](auto&& self, int start) -> void {
        if (stop) return;
        try_subset();
        if (static_cast<int>(pick.size()) == d - 1) return;
        for (int i = start; i < L && !stop; ++i) {
          pick.push_back(i);
          self(self, i + 1);
          pick.pop_back();
        }
      };
      choose(choose, 0);
      if (stop) return v;
    }
    v.frontier_n = n;
  }
  return v;
}

// ---------------------------------------------------------------------------
// Text format: an edge list followed by "precolor u v c" lines

inline PreColoring parse_precoloring(std::istream& in, int d) {
  auto data = parse_edge_list(in, true);
  PreColoring pc;
  pc.d = d;
  pc.graph = Graph::from_edges(data.n, data.edges);
  for (size_t i = 0; i < data.extra_lines.size(); ++i) {
    std::istringstream ls(data.extra_lines[i]);
    std::string kw;
    long long u, v, c;
    std::string rest;
    auto where = "line " + std::to_string(data.extra_line_numbers[i]) + ": ";
    if (!(ls >> kw) || kw != "precolor") throw GraphError(where + "unknown directive \"" + kw + "\"");
    if (!(ls >> u >> v >> c) || (ls >> rest)) throw GraphError(where + "expected \"precolor u v c\"");
    if (u < 0 || v < 0 || u >= pc.graph.n() || v >= pc.graph.n()) throw GraphError(where + "vertex id out of range");
    Edge e(static_cast<Vertex>(u), static_cast<Vertex>(v));
    if (pc.colored_leaves.count(e)) throw GraphError(where + "edge pre-coloured twice");
    pc.colored_leaves[e] = static_cast<int>(c);
  }
  return pc;
}

inline std::string to_precoloring_text(const PreColoring& pc) {
  std::ostringstream os;
  os << to_edge_list(pc.graph);
  for (const auto& [e, c] : pc.colored_leaves) os << "precolor " << e.u << " " << e.v << " " << c << "\n";
  return os.str();
}

// Random instance with Delta <= d and exactly d pre-coloured leaves. A few hubs take
// sqrt(d) or more leaves each so that Y is usually nonempty.
inline PreColoring random_precolor_instance(int d, int core_n, uint64_t seed) {
  if (d < 2 || core_n < d + 2) throw GraphError("random_precolor_instance needs d >= 2 and core_n >= d+2");
  Rng rng(seed);
  std::vector<int> leaves_at(static_cast<size_t>(core_n), 0);
  const int hub_share = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(d))));
  int left = d;
  const int hubs = static_cast<int>(uniform_index(rng, 3));
  for (int h = 0; h < hubs && left > 0; ++h) {
    Vertex v = static_cast<Vertex>(uniform_index(rng, static_cast<uint64_t>(core_n)));
    int take = std::min(left, hub_share + static_cast<int>(uniform_index(rng, static_cast<uint64_t>(hub_share))));
    take = std::min(take, d - 1 - leaves_at[static_cast<size_t>(v)]);
    if (take <= 0) continue;
    leaves_at[static_cast<size_t>(v)] += take;
    left -= take;
  }
  while (left > 0) {
    Vertex v = static_cast<Vertex>(uniform_index(rng, static_cast<uint64_t>(core_n)));
    if (leaves_at[static_cast<size_t>(v)] >= d - 1) continue;
    ++leaves_at[static_cast<size_t>(v)];
    --left;
  }
  // core edges by random stub pairing up to each vertex's remaining capacity
  std::vector<Vertex> stubs;
  for (Vertex v = 0; v < core_n; ++v)
    for (int i = leaves_at[static_cast<size_t>(v)]; i < d; ++i) stubs.push_back(v);
  shuffle_in_place(rng, stubs);
  std::set<Edge> core;
  std::vector<int> deg(static_cast<size_t>(core_n), 0);
  for (size_t i = 0; i + 1 < stubs.size(); i += 2) {
    Vertex a = stubs[i], b = stubs[i + 1];
    if (a == b) continue;
    core.insert(Edge(a, b));
  }
  std::vector<Edge> es(core.begin(), core.end());
  int n = core_n;
  std::vector<Edge> leaf_edges;
  for (Vertex v = 0; v < core_n; ++v)
    for (int i = 0; i < leaves_at[static_cast<size_t>(v)]; ++i) {
      leaf_edges.emplace_back(v, n);
      es.emplace_back(v, n++);
    }
  PreColoring pc;
  pc.d = d;
  pc.graph = Graph::from_edges(n, es);
  // random colours in [d], distinct at each hub
  for (Vertex v = 0; v < core_n; ++v) {
    std::vector<int> palette(static_cast<size_t>(d));
    for (int c = 0; c < d; ++c) palette[static_cast<size_t>(c)] = c + 1;
    shuffle_in_place(rng, palette);
    int j = 0;
    for (const Edge& e : leaf_edges)
      if (e.u == v || e.v == v) pc.colored_leaves[e] = palette[static_cast<size_t>(j++)];
  }
  return pc;
}

}  // namespace mec
