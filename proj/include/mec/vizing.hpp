#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "coloring.hpp"
#include "graph.hpp"

namespace mec {

namespace detail {

// at(v, c) is the neighbor reached from v by the edge colored c, or -1. Colors are 0-based here.
class ColorTable {
 public:
  ColorTable(int n, int k) : k_(k), at_(static_cast<size_t>(n) * static_cast<size_t>(k), -1) {}
  int k() const { return k_; }
  Vertex at(Vertex v, int c) const { return at_[idx(v, c)]; }
  bool free(Vertex v, int c) const { return at(v, c) < 0; }
  int first_free(Vertex v) const {
    for (int c = 0; c < k_; ++c)
      if (free(v, c)) return c;
    return -1;
  }
  void set(Vertex u, Vertex v, int c) {
    at_[idx(u, c)] = v;
    at_[idx(v, c)] = u;
  }
  void unset(Vertex u, Vertex v, int c) {
    at_[idx(u, c)] = -1;
    at_[idx(v, c)] = -1;
  }
  // color of edge uv or -1
  int color_of(Vertex u, Vertex v) const {
    for (int c = 0; c < k_; ++c)
      if (at(u, c) == v) return c;
    return -1;
  }
  EdgeColoring export_colors(const Graph& g) const {
    EdgeColoring out;
    for (const Edge& e : g.edges()) {
      int c = color_of(e.u, e.v);
      if (c >= 0) out[e] = c + 1;
    }
    return out;
  }

 private:
  size_t idx(Vertex v, int c) const { return static_cast<size_t>(v) * static_cast<size_t>(k_) + static_cast<size_t>(c); }
  int k_;
  std::vector<Vertex> at_;
};

// Swap colors a and b along the maximal a/b path that leaves `start` on its a-edge.
inline void invert_path(ColorTable& t, Vertex start, int a, int b) {
  std::vector<std::pair<Edge, int>> path;
  Vertex cur = start, prev = -1;
  int want = a;
  while (true) {
    Vertex nxt = t.at(cur, want);
    if (nxt < 0 || nxt == prev) break;
    path.push_back({Edge(cur, nxt), want});
    if (nxt == start) break;  // cannot happen on a path, guard anyway
    prev = cur;
    cur = nxt;
    want = (want == a) ? b : a;
  }
  for (auto& [e, c] : path) t.unset(e.u, e.v, c);
  for (auto& [e, c] : path) t.set(e.u, e.v, c == a ? b : a);
}

// One Misra-Gries step colouring the uncoloured edge (x, f) with the fan centred at x.
// Returns false when x or a fan vertex has no free colour.
inline bool misra_gries_step(const Graph& g, ColorTable& t, Vertex x, Vertex f) {
  std::vector<Vertex> fan{f};
  std::vector<char> in_fan(static_cast<size_t>(g.n()), 0);
  in_fan[static_cast<size_t>(f)] = 1;
  while (true) {
    Vertex last = fan.back();
    bool grown = false;
    for (Vertex w : g.neighbors(x)) {
      if (in_fan[static_cast<size_t>(w)]) continue;
      int c = t.color_of(x, w);
      if (c >= 0 && t.free(last, c)) {
        fan.push_back(w);
        in_fan[static_cast<size_t>(w)] = 1;
        grown = true;
        break;
      }
    }
    if (!grown) break;
  }
  int c = t.first_free(x);
  int d = t.first_free(fan.back());
  if (c < 0 || d < 0) return false;
  for (Vertex w : fan)
    if (t.first_free(w) < 0) return false;
  if (c != d) invert_path(t, x, d, c);
  // shortest prefix that is still a fan and ends at a vertex where d is free
  size_t stop = fan.size();
  for (size_t i = 0; i < fan.size(); ++i) {
    if (i > 0) {
      int ci = t.color_of(x, fan[i]);
      if (ci < 0 || !t.free(fan[i - 1], ci)) break;
    }
    if (t.free(fan[i], d)) {
      stop = i;
      break;
    }
  }
  if (stop == fan.size()) throw std::logic_error("misra_gries: no rotatable fan prefix");
  std::vector<int> shifted(stop + 1, -1);
  for (size_t j = 0; j < stop; ++j) shifted[j] = t.color_of(x, fan[j + 1]);
  for (size_t j = 1; j <= stop; ++j) t.unset(x, fan[j], shifted[j - 1]);
  for (size_t j = 0; j < stop; ++j) t.set(x, fan[j], shifted[j]);
  t.set(x, fan[stop], d);
  return true;
}

}  // namespace detail

// Colour edges in the given order, each with the fan centred at the first endpoint listed.
// Returns nullopt if some step lacks a free colour within `palette`.
inline std::optional<EdgeColoring> misra_gries(const Graph& g, int palette,
                                               const std::vector<std::pair<Vertex, Vertex>>& order) {
  if (g.num_edges() == 0) return EdgeColoring{};
  if (palette < 1) return std::nullopt;
  detail::ColorTable t(g.n(), palette);
  for (auto [x, f] : order)
    if (!detail::misra_gries_step(g, t, x, f)) return std::nullopt;
  return t.export_colors(g);
}

inline std::vector<std::pair<Vertex, Vertex>> default_order(const Graph& g) {
  std::vector<std::pair<Vertex, Vertex>> order;
  for (const Edge& e : g.edges()) order.emplace_back(e.u, e.v);
  return order;
}

// Delta+1 colours, edges in sorted order.
inline EdgeColoring vizing_color(const Graph& g) {
  auto c = misra_gries(g, g.delta() + 1, default_order(g));
  if (!c) throw std::logic_error("vizing_color: Delta+1 colouring failed");
  return *c;
}

// Delta colours when the maximum-degree vertices are pairwise non-adjacent. Edges away from
// those vertices go first; the rest are coloured with the fan centred at the max-degree end,
// so every fan vertex has spare degree and therefore a free colour.
inline std::optional<EdgeColoring> fournier_color(const Graph& g) {
  const int D = g.delta();
  std::vector<char> top(static_cast<size_t>(g.n()), 0);
  for (Vertex v = 0; v < g.n(); ++v) top[static_cast<size_t>(v)] = g.degree(v) == D;
  std::vector<std::pair<Vertex, Vertex>> order, late;
  for (const Edge& e : g.edges()) {
    bool tu = top[static_cast<size_t>(e.u)], tv = top[static_cast<size_t>(e.v)];
    if (tu && tv) return std::nullopt;
    if (tu) late.emplace_back(e.u, e.v);
    else if (tv) late.emplace_back(e.v, e.u);
    else order.emplace_back(e.u, e.v);
  }
  std::stable_sort(late.begin(), late.end(), [](auto a, auto b) { return a.first < b.first; });
  order.insert(order.end(), late.begin(), late.end());
  return misra_gries(g, D, order);
}

// Delta colours on a bipartite graph by a/b path exchange.
inline EdgeColoring konig_color(const Graph& g) {
  if (!is_bipartite(g)) throw GraphError("konig_color needs a bipartite graph");
  const int D = g.delta();
  if (D == 0) return {};
  detail::ColorTable t(g.n(), D);
  for (const Edge& e : g.edges()) {
    int a = t.first_free(e.u), b = t.first_free(e.v);
    if (a < 0 || b < 0) throw std::logic_error("konig_color: no free colour");
    if (!t.free(e.v, a)) detail::invert_path(t, e.v, a, b);
    if (!t.free(e.v, a) || !t.free(e.u, a)) throw std::logic_error("konig_color: exchange failed");
    t.set(e.u, e.v, a);
  }
  return t.export_colors(g);
}

// Colours the edges missing from `partial` without leaving the palette
// max(max_color(partial), Delta) for bipartite graphs, max(max_color(partial), Delta+1) otherwise.
inline EdgeColoring complete_coloring(const Graph& g, const EdgeColoring& partial) {
  const bool bip = is_bipartite(g);
  const int k = std::max(max_color(partial), bip ? g.delta() : g.delta() + 1);
  if (k == 0) return {};
  detail::ColorTable t(g.n(), k);
  for (const auto& [e, c] : partial) {
    if (c < 1 || c > k || !g.has_edge(e) || !t.free(e.u, c - 1) || !t.free(e.v, c - 1))
      throw GraphError("complete_coloring: partial colouring is not proper");
    t.set(e.u, e.v, c - 1);
  }
  for (const Edge& e : g.edges()) {
    if (partial.count(e)) continue;
    if (bip) {
      int a = t.first_free(e.u), b = t.first_free(e.v);
      if (a < 0 || b < 0) throw std::logic_error("complete_coloring: no free colour");
      if (!t.free(e.v, a)) detail::invert_path(t, e.v, a, b);
      t.set(e.u, e.v, a);
    } else if (!detail::misra_gries_step(g, t, e.u, e.v)) {
      throw std::logic_error("complete_coloring: fan step failed");
    }
  }
  return t.export_colors(g);
}

}  // namespace mec
