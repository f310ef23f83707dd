#pragma once

#include <map>
#include <set>
#include <vector>

#include "graph.hpp"

namespace mec {

// Partial edge coloring; colors are positive integers.
using EdgeColoring = std::map<Edge, int>;

inline int max_color(const EdgeColoring& c) {
  int m = 0;
  for (const auto& [e, col] : c) m = std::max(m, col);
  return m;
}

inline int distinct_colors(const EdgeColoring& c) {
  std::set<int> s;
  for (const auto& [e, col] : c) s.insert(col);
  return static_cast<int>(s.size());
}

// No two edges sharing an endpoint share a color, colors are positive and every
// colored edge belongs to g.
inline bool is_proper(const Graph& g, const EdgeColoring& c) {
  std::vector<std::set<int>> seen(static_cast<size_t>(g.n()));
  for (const auto& [e, col] : c) {
    if (col < 1 || !g.has_edge(e)) return false;
    if (!seen[static_cast<size_t>(e.u)].insert(col).second) return false;
    if (!seen[static_cast<size_t>(e.v)].insert(col).second) return false;
  }
  return true;
}

inline std::vector<std::vector<Edge>> color_classes(const EdgeColoring& c) {
  std::vector<std::vector<Edge>> cls(static_cast<size_t>(max_color(c)));
  for (const auto& [e, col] : c) cls[static_cast<size_t>(col - 1)].push_back(e);
  return cls;
}

}  // namespace mec
