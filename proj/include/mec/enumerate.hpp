#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "graph.hpp"

namespace mec {

// Canonical form for small graphs (n <= 11): individualization-refinement over ordered
// partitions, keeping the smallest upper-triangle adjacency string over all leaves.
struct CanonicalForm {
  int n = 0;
  uint64_t bits = 0;
  bool operator<(const CanonicalForm& o) const { return n != o.n ? n < o.n : bits < o.bits; }
  bool operator==(const CanonicalForm& o) const { return n == o.n && bits == o.bits; }
};

namespace detail {

// Refine an ordered partition (cell id per vertex, ids 0..k-1 in order) to equitable form.
inline std::vector<int> refine(const Graph& g, std::vector<int> cell) {
  const int n = g.n();
  while (true) {
    int k = 0;
    for (int c : cell) k = std::max(k, c + 1);
    std::vector<std::pair<std::vector<int>, Vertex>> sig(static_cast<size_t>(n));
    for (Vertex v = 0; v < n; ++v) {
      std::vector<int> s(static_cast<size_t>(k) + 1, 0);
      s[0] = cell[static_cast<size_t>(v)];
      for (Vertex w : g.neighbors(v)) ++s[static_cast<size_t>(cell[static_cast<size_t>(w)]) + 1];
      sig[static_cast<size_t>(v)] = {std::move(s), v};
    }
    std::vector<std::vector<int>> keys;
    for (auto& [s, v] : sig) keys.push_back(s);
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    std::vector<int> next(static_cast<size_t>(n));
    for (auto& [s, v] : sig)
      next[static_cast<size_t>(v)] = static_cast<int>(std::lower_bound(keys.begin(), keys.end(), s) - keys.begin());
    if (static_cast<int>(keys.size()) == k) return next;
    cell = std::move(next);
  }
}

inline uint64_t adjacency_bits(const Graph& g, const std::vector<int>& pos) {
  const int n = g.n();
  std::vector<Vertex> at(static_cast<size_t>(n));
  for (Vertex v = 0; v < n; ++v) at[static_cast<size_t>(pos[static_cast<size_t>(v)])] = v;
  uint64_t bits = 0;
  int b = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++b)
      if (g.adjacent(at[static_cast<size_t>(i)], at[static_cast<size_t>(j)])) bits |= uint64_t{1} << (63 - b);
  return bits;
}

}  // namespace detail

inline CanonicalForm canonical_form(const Graph& g) {
  const int n = g.n();
  if (n > 11) throw GraphError("canonical_form supports n <= 11");
  CanonicalForm best;
  best.n = n;
  bool have = false;
  auto rec = [&](auto&& self, std::vector<int> cell) -> void {
    cell = detail::refine(g, std::move(cell));
    int k = 0;
    for (int c : cell) k = std::max(k, c + 1);
    if (k == n) {
      uint64_t b = detail::adjacency_bits(g, cell);
      if (!have || b < best.bits) best.bits = b, have = true;
      return;
    }
    // first non-singleton cell
    std::vector<int> size(static_cast<size_t>(k), 0);
    for (int c : cell) ++size[static_cast<size_t>(c)];
    int target = 0;
    while (size[static_cast<size_t>(target)] == 1) ++target;
    for (Vertex v = 0; v < n; ++v) {
      if (cell[static_cast<size_t>(v)] != target) continue;
      // individualize v: it goes first within its cell
      std::vector<int> c2(cell);
      for (int& c : c2) c = 2 * c + (c == target ? 1 : 0);
      c2[static_cast<size_t>(v)] = 2 * target;
      // compress ids
      std::vector<int> ids(c2);
      std::sort(ids.begin(), ids.end());
      ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
      for (int& c : c2) c = static_cast<int>(std::lower_bound(ids.begin(), ids.end(), c) - ids.begin());
      self(self, std::move(c2));
    }
  };
  if (n > 0) rec(rec, std::vector<int>(static_cast<size_t>(n), 0));
  return best;
}

inline Graph graph_from_canonical(const CanonicalForm& c) {
  std::vector<Edge> es;
  int b = 0;
  for (int i = 0; i < c.n; ++i)
    for (int j = i + 1; j < c.n; ++j, ++b)
      if (c.bits >> (63 - b) & 1u) es.emplace_back(i, j);
  return Graph::from_edges(c.n, es);
}

// All connected graphs on 1..n_max vertices with maximum degree <= max_deg, one per
// isomorphism class, grouped by vertex count. Each graph extends a smaller connected graph
// by a vertex whose removal keeps it connected, so the closure under extension is complete.
inline std::vector<std::vector<Graph>> connected_graphs_up_to(int n_max, int max_deg) {
  if (n_max > 11) throw GraphError("connected_graphs_up_to supports n <= 11");
  std::vector<std::vector<Graph>> out(static_cast<size_t>(std::max(n_max, 0)) + 1);
  if (n_max < 1) return out;
  out[1].push_back(Graph(1));
  for (int n = 2; n <= n_max; ++n) {
    std::set<CanonicalForm> seen;
    for (const Graph& g : out[static_cast<size_t>(n - 1)]) {
      VertexSet open;
      for (Vertex v = 0; v < g.n(); ++v)
        if (g.degree(v) < max_deg) open.push_back(v);
      const int k = static_cast<int>(open.size());
      auto base = g.edges();
      for (uint32_t mask = 1; mask < (1u << k); ++mask) {
        if (std::popcount(mask) > max_deg) continue;
        auto es = base;
        for (int i = 0; i < k; ++i)
          if (mask >> i & 1u) es.emplace_back(open[static_cast<size_t>(i)], n - 1);
        Graph h = Graph::from_edges(n, es);
        auto cf = canonical_form(h);
        if (seen.insert(cf).second) out[static_cast<size_t>(n)].push_back(graph_from_canonical(cf));
      }
    }
  }
  return out;
}

}  // namespace mec
