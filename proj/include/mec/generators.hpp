#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "graph.hpp"
#include "rng.hpp"

namespace mec {

// A graph with degree bound d+1 where J lists exactly the degree-(d+1) vertices.
struct Instance {
  Graph graph;
  int d = 0;
  VertexSet J;
  bool bipartite = false;
  uint64_t seed = 0;

  // Throws GraphError when the type invariants fail.
  void validate() const {
    VertexSet high;
    for (Vertex v = 0; v < graph.n(); ++v) {
      if (graph.degree(v) > d + 1)
        throw GraphError("vertex " + std::to_string(v) + " has degree above d+1");
      if (graph.degree(v) == d + 1) high.push_back(v);
    }
    if (high != J) throw GraphError("J differs from the set of degree-(d+1) vertices");
    if (bipartite && !is_bipartite(graph)) throw GraphError("bipartite flag set on a graph with an odd cycle");
  }
};

inline VertexSet vertices_of_degree(const Graph& g, int deg) {
  VertexSet s;
  for (Vertex v = 0; v < g.n(); ++v)
    if (g.degree(v) == deg) s.push_back(v);
  return s;
}

inline Instance make_instance(Graph g, int d, uint64_t seed = 0) {
  Instance inst;
  inst.J = vertices_of_degree(g, d + 1);
  inst.bipartite = is_bipartite(g);
  inst.graph = std::move(g);
  inst.d = d;
  inst.seed = seed;
  inst.validate();
  return inst;
}

inline Graph cycle_graph(int n) {
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i) es.emplace_back(i, (i + 1) % n);
  return Graph::from_edges(n, es);
}

inline Graph path_graph(int n) {
  std::vector<Edge> es;
  for (int i = 0; i + 1 < n; ++i) es.emplace_back(i, i + 1);
  return Graph::from_edges(n, es);
}

inline Graph complete_graph(int n) {
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) es.emplace_back(i, j);
  return Graph::from_edges(n, es);
}

inline Graph star_graph(int leaves) {
  std::vector<Edge> es;
  for (int i = 1; i <= leaves; ++i) es.emplace_back(0, i);
  return Graph::from_edges(leaves + 1, es);
}

inline Graph complete_bipartite(int a, int b) {
  std::vector<Edge> es;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) es.emplace_back(i, a + j);
  return Graph::from_edges(a + b, es);
}

inline Graph petersen_graph() {
  std::vector<Edge> es;
  for (int i = 0; i < 5; ++i) {
    es.emplace_back(i, (i + 1) % 5);
    es.emplace_back(i, i + 5);
    es.emplace_back(5 + i, 5 + (i + 2) % 5);
  }
  return Graph::from_edges(10, es);
}

// Discretized rotation graphing: the orbit of i -> i+1 on N points.
inline Instance rotation_cycle(int N) {
  if (N < 3) throw GraphError("rotation_cycle needs N >= 3");
  return make_instance(cycle_graph(N), 2);
}

// Configuration model: points are paired one at a time, skipping partners that would
// create a loop or a repeated edge; a dead end restarts the pairing. At most 1000 restarts.
inline Instance random_regular(int n, int d, bool bipartite, uint64_t seed) {
  if (d < 1) throw GraphError("random_regular needs d >= 1");
  if (n <= 0) throw GraphError("random_regular needs n >= 1");
  if ((static_cast<long long>(n) * d) % 2 != 0) throw GraphError("n*d must be even");
  if (bipartite && n % 2 != 0) throw GraphError("bipartite random_regular needs even n");
  if (!bipartite && d > n - 1) throw GraphError("d exceeds n-1");
  if (bipartite && d > n / 2) throw GraphError("d exceeds the side size");
  Rng rng(seed);
  const int side = n / 2;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<std::vector<Vertex>> adj(static_cast<size_t>(n));
    auto linked = [&](Vertex a, Vertex b) {
      const auto& l = adj[static_cast<size_t>(a)];
      return std::find(l.begin(), l.end(), b) != l.end();
    };
    std::vector<Vertex> points;
    std::vector<Vertex> left, right;
    if (bipartite) {
      for (Vertex v = 0; v < side; ++v)
        for (int k = 0; k < d; ++k) left.push_back(v);
      for (Vertex v = side; v < n; ++v)
        for (int k = 0; k < d; ++k) right.push_back(v);
    } else {
      for (Vertex v = 0; v < n; ++v)
        for (int k = 0; k < d; ++k) points.push_back(v);
    }
    std::vector<Edge> es;
    bool stuck = false;
    if (bipartite) {
      shuffle_in_place(rng, right);
      for (size_t i = 0; i < left.size() && !stuck; ++i) {
        Vertex a = left[i];
        std::vector<size_t> ok;
        for (size_t j = i; j < right.size(); ++j)
          if (!linked(a, right[j])) ok.push_back(j);
        if (ok.empty()) {
          stuck = true;
          break;
        }
        size_t j = ok[uniform_index(rng, ok.size())];
        std::swap(right[i], right[j]);
        Vertex b = right[i];
        adj[static_cast<size_t>(a)].push_back(b);
        adj[static_cast<size_t>(b)].push_back(a);
        es.emplace_back(a, b);
      }
    } else {
      shuffle_in_place(rng, points);
      while (!points.empty() && !stuck) {
        Vertex a = points.back();
        points.pop_back();
        std::vector<size_t> ok;
        for (size_t j = 0; j < points.size(); ++j)
          if (points[j] != a && !linked(a, points[j])) ok.push_back(j);
        if (ok.empty()) {
          stuck = true;
          break;
        }
        size_t j = ok[uniform_index(rng, ok.size())];
        Vertex b = points[j];
        points[j] = points.back();
        points.pop_back();
        adj[static_cast<size_t>(a)].push_back(b);
        adj[static_cast<size_t>(b)].push_back(a);
        es.emplace_back(a, b);
      }
    }
    if (stuck) continue;
    Instance inst = make_instance(Graph::from_edges(n, es), d, seed);
    if (bipartite && !inst.bipartite) throw GraphError("internal: bipartite generator produced odd cycle");
    return inst;
  }
  throw GraphError("random_regular: rejection budget exhausted; try another seed");
}

// Attaches one pendant vertex to each vertex of a greedily chosen r-sparse set (random
// visiting order from seed), capped at floor(fraction * n_old) plants.
inline Instance plant_high_degree(const Instance& base, int r, double fraction, uint64_t seed) {
  const Graph& g = base.graph;
  for (Vertex v = 0; v < g.n(); ++v)
    if (g.degree(v) != base.d) throw GraphError("plant_high_degree needs a d-regular base");
  if (r < 1) throw GraphError("plant_high_degree needs r >= 1");
  const long long cap = static_cast<long long>(fraction * g.n() + 1e-9);
  std::vector<Vertex> order(static_cast<size_t>(g.n()));
  for (Vertex v = 0; v < g.n(); ++v) order[static_cast<size_t>(v)] = v;
  Rng rng(seed);
  shuffle_in_place(rng, order);
  std::vector<char> blocked(static_cast<size_t>(g.n()), 0);
  VertexSet chosen;
  for (Vertex v : order) {
    if (static_cast<long long>(chosen.size()) >= cap) break;
    if (blocked[static_cast<size_t>(v)]) continue;
    chosen.push_back(v);
    auto dist = bfs_distances(g, {v}, r);
    for (Vertex w = 0; w < g.n(); ++w)
      if (dist[static_cast<size_t>(w)] >= 0) blocked[static_cast<size_t>(w)] = 1;
  }
  chosen = normalized(chosen);
  auto es = g.edges();
  int n = g.n();
  for (Vertex v : chosen) es.emplace_back(v, n++);
  Instance out = make_instance(Graph::from_edges(n, es), base.d, seed);
  if (out.J != chosen) throw GraphError("internal: planted set differs from J");
  return out;
}

struct DegreeInference {
  int d = 0;
  int mode = 0;
};

// d is the most common degree (ties toward the larger) when some vertex sits one above
// it, otherwise the maximum degree. A vertex two or more above the mode is rejected.
inline DegreeInference infer_degree_bound(const Graph& g) {
  DegreeInference r;
  if (g.n() == 0) return r;
  std::map<int, int> census;
  for (Vertex v = 0; v < g.n(); ++v) ++census[g.degree(v)];
  int best = -1;
  for (auto [deg, cnt] : census)
    if (cnt >= best) {
      best = cnt;
      r.mode = deg;
    }
  if (g.delta() <= r.mode) {
    r.d = g.delta();
  } else if (g.delta() == r.mode + 1) {
    r.d = r.mode;
  } else {
    for (Vertex v = 0; v < g.n(); ++v)
      if (g.degree(v) > r.mode + 1)
        throw GraphError("vertex " + std::to_string(v) + " has degree " + std::to_string(g.degree(v)) +
                         ", more than d+1 for d=" + std::to_string(r.mode));
  }
  return r;
}

inline Instance instance_from_graph(Graph g, std::optional<int> d_override = std::nullopt) {
  int d = d_override ? *d_override : infer_degree_bound(g).d;
  return make_instance(std::move(g), d);
}

inline Instance load_edge_list(const std::string& path, std::optional<int> d_override = std::nullopt) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open " + path);
  auto data = parse_edge_list(in);
  return instance_from_graph(Graph::from_edges(data.n, data.edges), d_override);
}

}  // namespace mec
