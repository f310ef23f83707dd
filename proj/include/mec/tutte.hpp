#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "graph.hpp"

namespace mec {

// Lexicographically first matching covering every vertex of Z, with pre-matched vertices
// in `fixed` left alone. Branches on the smallest uncovered Z vertex and tries partners in
// increasing id among `allowed`. nullopt if none exists; throws when `node_budget` runs out.
inline std::optional<Matching> cover_matching(const Graph& g, const VertexSet& Z, const std::vector<char>& allowed,
                                              const Matching& fixed, long long node_budget = 2'000'000) {
  Matching m = fixed;
  long long nodes = 0;
  std::vector<Vertex> zs = Z;
  auto rec = [&](auto&& self) -> bool {
    if (++nodes > node_budget) throw GraphError("cover_matching: node budget exceeded");
    Vertex z = -1;
    for (Vertex v : zs)
      if (!m.covered(v)) {
        z = v;
        break;
      }
    if (z < 0) return true;
    for (Vertex w : g.neighbors(z)) {
      if (!allowed[static_cast<size_t>(w)] || m.covered(w)) continue;
      m.add(z, w);
      if (self(self)) return true;
      m.remove(z, w);
    }
    return false;
  };
  if (rec(rec)) return m;
  return std::nullopt;
}

struct TutteVerdict {
  bool exists = false;
  VertexSet violating_set;  // S with more odd components of G-S inside Z than |S|
  std::optional<Matching> witness;
};

// Odd components of G - S lying entirely inside Z, for S given as a bitmask.
inline int odd_components_inside(const Graph& g, uint32_t S, uint32_t Zmask) {
  const int n = g.n();
  uint32_t seen = S;
  int odd = 0;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n; ++s) {
    if (seen >> s & 1u) continue;
    seen |= 1u << s;
    stack.assign(1, s);
    int size = 0;
    bool inside = true;
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      ++size;
      if (!(Zmask >> u & 1u)) inside = false;
      for (Vertex w : g.neighbors(u))
        if (!(seen >> w & 1u)) {
          seen |= 1u << w;
          stack.push_back(w);
        }
    }
    if (inside && size % 2 == 1) ++odd;
  }
  return odd;
}

// Exhaustive Tutte-type certificate for a matching covering Z (n <= 20). The returned
// violating set is the smallest by (size, bitmask).
inline TutteVerdict tutte_check(const Graph& g, const VertexSet& Z) {
  if (g.n() > 20) throw GraphError("tutte_check: n exceeds 20");
  TutteVerdict out;
  uint32_t Zmask = 0;
  for (Vertex z : Z) Zmask |= 1u << z;
  const uint32_t full = g.n() == 0 ? 0u : ((g.n() == 32 ? 0u : (1u << g.n())) - 1u);
  int best_size = 64;
  uint32_t best = 0;
  for (uint64_t S = 0; S <= full; ++S) {
    int sz = std::popcount(static_cast<uint32_t>(S));
    if (sz >= best_size) continue;
    if (odd_components_inside(g, static_cast<uint32_t>(S), Zmask) > sz) {
      best_size = sz;
      best = static_cast<uint32_t>(S);
    }
  }
  out.exists = best_size == 64;
  if (!out.exists) {
    for (Vertex v = 0; v < g.n(); ++v)
      if (best >> v & 1u) out.violating_set.push_back(v);
  } else {
    std::vector<char> all(static_cast<size_t>(g.n()), 1);
    out.witness = cover_matching(g, Z, all, Matching(g.n()));
  }
  return out;
}

}  // namespace mec
