#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <unordered_set>
#include <vector>

#include "coloring.hpp"
#include "generators.hpp"
#include "graph.hpp"
#include "tutte.hpp"

// Brute-force ground truth for tiny instances. Nothing here calls into the engine or the
// colouring code it is meant to check.
namespace mec::oracle {

struct ChromaticIndex {
  int value = 0;
  EdgeColoring witness;
};

// Smallest k with a proper k-edge-colouring. Edges are coloured in BFS order; a new colour is
// only opened as the next unused one, which removes palette symmetry.
inline ChromaticIndex brute_chromatic_index(const Graph& g, size_t max_edges = 24) {
  if (g.num_edges() > max_edges) throw GraphError("brute_chromatic_index: too many edges");
  ChromaticIndex out;
  if (g.num_edges() == 0) return out;
  std::vector<Edge> order;
  {
    std::vector<char> seen(static_cast<size_t>(g.n()), 0);
    std::set<Edge> taken;
    for (Vertex s = 0; s < g.n(); ++s) {
      if (seen[static_cast<size_t>(s)]) continue;
      std::vector<Vertex> q{s};
      seen[static_cast<size_t>(s)] = 1;
      for (size_t h = 0; h < q.size(); ++h)
        for (Vertex w : g.neighbors(q[h])) {
          if (taken.insert(Edge(q[h], w)).second) order.emplace_back(q[h], w);
          if (!seen[static_cast<size_t>(w)]) seen[static_cast<size_t>(w)] = 1, q.push_back(w);
        }
    }
  }
  std::vector<int> col(order.size(), 0);
  std::vector<std::vector<char>> used(static_cast<size_t>(g.n()));
  for (int k = 1;; ++k) {
    for (auto& u : used) u.assign(static_cast<size_t>(k) + 1, 0);
    auto rec = [&](auto&& self, size_t i, int top) -> bool {
      if (i == order.size()) return true;
      const Edge e = order[i];
      for (int c = 1; c <= std::min(k, top + 1); ++c) {
        if (used[static_cast<size_t>(e.u)][static_cast<size_t>(c)] || used[static_cast<size_t>(e.v)][static_cast<size_t>(c)]) continue;
        used[static_cast<size_t>(e.u)][static_cast<size_t>(c)] = used[static_cast<size_t>(e.v)][static_cast<size_t>(c)] = 1;
        col[i] = c;
        if (self(self, i + 1, std::max(top, c))) return true;
        used[static_cast<size_t>(e.u)][static_cast<size_t>(c)] = used[static_cast<size_t>(e.v)][static_cast<size_t>(c)] = 0;
      }
      return false;
    };
    if (rec(rec, 0, 0)) {
      out.value = k;
      for (size_t i = 0; i < order.size(); ++i) out.witness[order[i]] = col[i];
      return out;
    }
  }
}

// Unhappy set straight from the definition: unmatched vertices of degree >= d outside
// N_1(K), plus every uncovered degree-d vertex of a closed K-neighbourhood except the largest.
inline VertexSet unhappy_from_definition(const Instance& inst, const VertexSet& K, const Matching& m) {
  const Graph& g = inst.graph;
  std::vector<char> out(static_cast<size_t>(g.n()), 0);
  std::vector<char> nearK(static_cast<size_t>(g.n()), 0);
  for (Vertex x : K) {
    nearK[static_cast<size_t>(x)] = 1;
    for (Vertex w : g.neighbors(x)) nearK[static_cast<size_t>(w)] = 1;
  }
  for (Vertex v = 0; v < g.n(); ++v)
    if (!nearK[static_cast<size_t>(v)] && g.degree(v) >= inst.d && !m.covered(v)) out[static_cast<size_t>(v)] = 1;
  for (Vertex x : K) {
    std::vector<Vertex> unc;
    if (g.degree(x) == inst.d && !m.covered(x)) unc.push_back(x);
    for (Vertex w : g.neighbors(x))
      if (g.degree(w) == inst.d && !m.covered(w)) unc.push_back(w);
    std::sort(unc.begin(), unc.end());
    for (size_t i = 0; i + 1 < unc.size(); ++i) out[static_cast<size_t>(unc[i])] = 1;
  }
  return from_mask(out);
}

inline bool in_complete_star(const Instance& inst, const VertexSet& K, const Matching& m, Vertex v) {
  const Graph& g = inst.graph;
  if (g.degree(v) != inst.d) return false;
  for (Vertex x : K) {
    if (x != v && !g.adjacent(x, v)) continue;
    bool complete = true;
    if (g.degree(x) == inst.d && !m.covered(x)) complete = false;
    for (Vertex w : g.neighbors(x))
      if (g.degree(w) == inst.d && !m.covered(w)) complete = false;
    if (complete) return true;
  }
  return false;
}

// Any augmenting path of length <= max_len, by exhaustive search over simple paths.
inline std::optional<std::vector<Vertex>> brute_augmenting_path(const Instance& inst, const VertexSet& K, const Matching& m,
                                                                int max_len, int max_n = 60) {
  const Graph& g = inst.graph;
  if (g.n() > max_n) throw GraphError("brute_augmenting_path: instance too large");
  VertexSet U = unhappy_from_definition(inst, K, m);
  std::vector<Vertex> path;
  std::vector<char> on(static_cast<size_t>(g.n()), 0);
  auto good_end = [&](Vertex w, int len) {
    if (len % 2 == 1) return !m.covered(w);
    return g.degree(w) < inst.d || in_complete_star(inst, K, m, w);
  };
  auto rec = [&](auto&& self) -> bool {
    const int len = static_cast<int>(path.size()) - 1;
    if (len > 0 && good_end(path.back(), len)) return true;
    if (len == max_len) return false;
    for (Vertex v : g.neighbors(path.back())) {
      if (on[static_cast<size_t>(v)] || m.has(path.back(), v) != (len % 2 == 1)) continue;
      on[static_cast<size_t>(v)] = 1;
      path.push_back(v);
      if (self(self)) return true;
      path.pop_back();
      on[static_cast<size_t>(v)] = 0;
    }
    return false;
  };
  for (Vertex u : U) {
    if (m.covered(u)) continue;
    path.assign(1, u);
    std::fill(on.begin(), on.end(), 0);
    on[static_cast<size_t>(u)] = 1;
    if (rec(rec)) return path;
  }
  return std::nullopt;
}

// Does some matching cover Z? Scans vertices in order with a memo of failed (position,
// covered-mask) states; independent of cover_matching.
inline bool exhaustive_cover_exists(const Graph& g, const VertexSet& Z) {
  if (g.n() > 20) throw GraphError("exhaustive_cover_exists: n exceeds 20");
  auto inZ = to_mask(g.n(), Z);
  std::unordered_set<uint64_t> failed;
  auto rec = [&](auto&& self, int i, uint32_t mask) -> bool {
    if (i == g.n()) return true;
    const uint64_t key = (static_cast<uint64_t>(i) << 32) | mask;
    if (failed.count(key)) return false;
    bool ok = false;
    if ((mask >> i & 1u) || !inZ[static_cast<size_t>(i)]) {
      ok = self(self, i + 1, mask);
    } else {
      for (Vertex w : g.neighbors(i))
        if (!(mask >> w & 1u) && self(self, i + 1, mask | (1u << i) | (1u << w))) {
          ok = true;
          break;
        }
    }
    if (!ok) failed.insert(key);
    return ok;
  };
  return rec(rec, 0, 0u);
}

using mec::tutte_check;

inline bool verify_proper(const Graph& g, const EdgeColoring& c) {
  std::vector<std::vector<int>> at(static_cast<size_t>(g.n()));
  for (const auto& [e, col] : c) {
    if (col < 1 || !g.has_edge(e)) return false;
    at[static_cast<size_t>(e.u)].push_back(col);
    at[static_cast<size_t>(e.v)].push_back(col);
  }
  for (auto& a : at) {
    std::sort(a.begin(), a.end());
    if (std::adjacent_find(a.begin(), a.end()) != a.end()) return false;
  }
  return true;
}

// Each class must be a matching of g.
inline bool verify_proper(const Graph& g, const std::vector<std::vector<Edge>>& classes) {
  for (const auto& cls : classes) {
    std::vector<char> hit(static_cast<size_t>(g.n()), 0);
    for (const Edge& e : cls) {
      if (!g.has_edge(e) || hit[static_cast<size_t>(e.u)] || hit[static_cast<size_t>(e.v)]) return false;
      hit[static_cast<size_t>(e.u)] = hit[static_cast<size_t>(e.v)] = 1;
    }
  }
  return true;
}

}  // namespace mec::oracle
