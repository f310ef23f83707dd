#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <istream>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mec {

using Vertex = int;
// Sorted, duplicate-free list of vertex ids.
using VertexSet = std::vector<Vertex>;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  Edge() = default;
  Edge(Vertex a, Vertex b) : u(std::min(a, b)), v(std::max(a, b)) {}
  auto operator<=>(const Edge&) const = default;
  Vertex other(Vertex x) const { return x == u ? v : u; }
  bool touches(Vertex x) const { return x == u || x == v; }
};
using EdgeSet = std::vector<Edge>;

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline VertexSet normalized(VertexSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

inline std::vector<char> to_mask(int n, const VertexSet& s) {
  std::vector<char> m(static_cast<size_t>(n), 0);
  for (Vertex v : s) m[static_cast<size_t>(v)] = 1;
  return m;
}

inline VertexSet from_mask(const std::vector<char>& m) {
  VertexSet s;
  for (size_t i = 0; i < m.size(); ++i)
    if (m[i]) s.push_back(static_cast<Vertex>(i));
  return s;
}

inline bool contains(const VertexSet& s, Vertex v) { return std::binary_search(s.begin(), s.end(), v); }

inline VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  VertexSet r;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}
inline VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
  VertexSet r;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}
inline VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
  VertexSet r;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}
inline bool is_subset(const VertexSet& a, const VertexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Immutable simple undirected graph on vertices 0..n-1.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : adj_(static_cast<size_t>(n)) {}

  static Graph from_edges(int n, const std::vector<Edge>& edges) {
    if (n < 0) throw GraphError("negative vertex count");
    Graph g(n);
    for (const Edge& e : edges) {
      if (e.u < 0 || e.v >= n) throw GraphError("edge endpoint out of range");
      if (e.u == e.v) throw GraphError("self-loop at vertex " + std::to_string(e.u));
      g.adj_[static_cast<size_t>(e.u)].push_back(e.v);
      g.adj_[static_cast<size_t>(e.v)].push_back(e.u);
    }
    for (auto& a : g.adj_) {
      std::sort(a.begin(), a.end());
      if (std::adjacent_find(a.begin(), a.end()) != a.end()) throw GraphError("parallel edge");
      g.delta_ = std::max(g.delta_, static_cast<int>(a.size()));
      g.m_ += a.size();
    }
    g.m_ /= 2;
    return g;
  }

  int n() const { return static_cast<int>(adj_.size()); }
  int delta() const { return delta_; }
  size_t num_edges() const { return m_; }
  int degree(Vertex v) const { return static_cast<int>(adj_[static_cast<size_t>(v)].size()); }
  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[static_cast<size_t>(v)]; }
  bool adjacent(Vertex u, Vertex v) const {
    const auto& a = adj_[static_cast<size_t>(u)];
    return std::binary_search(a.begin(), a.end(), v);
  }
  bool has_edge(const Edge& e) const { return e.u >= 0 && e.v < n() && adjacent(e.u, e.v); }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (Vertex u = 0; u < n(); ++u)
      for (Vertex v : neighbors(u))
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  // New graph with the given edges deleted; missing edges are ignored.
  Graph without_edges(std::vector<Edge> removed) const {
    std::sort(removed.begin(), removed.end());
    std::vector<Edge> keep;
    for (const Edge& e : edges())
      if (!std::binary_search(removed.begin(), removed.end(), e)) keep.push_back(e);
    return from_edges(n(), keep);
  }

  // Subgraph on the same vertex set keeping only the listed edges.
  Graph edge_subgraph(const std::vector<Edge>& kept) const { return from_edges(n(), kept); }

  // Induced subgraph; returns the graph and the map new id -> old id.
  std::pair<Graph, std::vector<Vertex>> induced(const VertexSet& s) const {
    std::vector<Vertex> idx(static_cast<size_t>(n()), -1);
    for (size_t i = 0; i < s.size(); ++i) idx[static_cast<size_t>(s[i])] = static_cast<Vertex>(i);
    std::vector<Edge> es;
    for (Vertex u : s)
      for (Vertex v : neighbors(u))
        if (u < v && idx[static_cast<size_t>(v)] >= 0)
          es.emplace_back(idx[static_cast<size_t>(u)], idx[static_cast<size_t>(v)]);
    return {from_edges(static_cast<int>(s.size()), es), s};
  }

 private:
  std::vector<std::vector<Vertex>> adj_;
  int delta_ = 0;
  size_t m_ = 0;
};

// Matching stored as a partner array; -1 marks an uncovered vertex.
class Matching {
 public:
  Matching() = default;
  explicit Matching(int n) : partner_(static_cast<size_t>(n), -1) {}

  static Matching from_edges(const Graph& g, const std::vector<Edge>& es) {
    Matching m(g.n());
    for (const Edge& e : es) {
      if (!g.has_edge(e)) throw GraphError("matching edge not in graph");
      if (m.covered(e.u) || m.covered(e.v)) throw GraphError("matching edges overlap");
      m.add(e.u, e.v);
    }
    return m;
  }

  int n() const { return static_cast<int>(partner_.size()); }
  bool covered(Vertex v) const { return partner_[static_cast<size_t>(v)] >= 0; }
  Vertex partner(Vertex v) const { return partner_[static_cast<size_t>(v)]; }
  bool has(Vertex u, Vertex v) const { return partner_[static_cast<size_t>(u)] == v; }

  void add(Vertex u, Vertex v) {
    if (covered(u) || covered(v)) throw GraphError("add would break the matching");
    partner_[static_cast<size_t>(u)] = v;
    partner_[static_cast<size_t>(v)] = u;
  }
  void remove(Vertex u, Vertex v) {
    if (!has(u, v)) throw GraphError("edge not matched");
    partner_[static_cast<size_t>(u)] = -1;
    partner_[static_cast<size_t>(v)] = -1;
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (Vertex v = 0; v < n(); ++v)
      if (partner(v) > v) out.emplace_back(v, partner(v));
    return out;
  }
  size_t size() const {
    size_t c = 0;
    for (Vertex v = 0; v < n(); ++v) c += partner(v) > v;
    return c;
  }
  VertexSet covered_set() const {
    VertexSet s;
    for (Vertex v = 0; v < n(); ++v)
      if (covered(v)) s.push_back(v);
    return s;
  }
  bool valid_in(const Graph& g) const {
    if (n() != g.n()) return false;
    for (Vertex v = 0; v < n(); ++v) {
      Vertex p = partner(v);
      if (p < 0) continue;
      if (p >= n() || partner(p) != v || !g.adjacent(v, p)) return false;
    }
    return true;
  }
  bool operator==(const Matching&) const = default;

 private:
  std::vector<Vertex> partner_;
};

// Vertices of the symmetric difference of two matchings.
inline VertexSet sym_diff_vertices(const Matching& a, const Matching& b) {
  VertexSet s;
  for (Vertex v = 0; v < a.n(); ++v)
    if (a.partner(v) != b.partner(v)) s.push_back(v);
  return s;
}

// Multi-source BFS distances, -1 for vertices farther than limit (limit < 0: unbounded).
inline std::vector<int> bfs_distances(const Graph& g, const VertexSet& sources, int limit = -1) {
  std::vector<int> dist(static_cast<size_t>(g.n()), -1);
  std::queue<Vertex> q;
  for (Vertex s : sources)
    if (dist[static_cast<size_t>(s)] < 0) {
      dist[static_cast<size_t>(s)] = 0;
      q.push(s);
    }
  while (!q.empty()) {
    Vertex u = q.front();
    q.pop();
    int du = dist[static_cast<size_t>(u)];
    if (limit >= 0 && du >= limit) continue;
    for (Vertex w : g.neighbors(u))
      if (dist[static_cast<size_t>(w)] < 0) {
        dist[static_cast<size_t>(w)] = du + 1;
        q.push(w);
      }
  }
  return dist;
}

inline int distance(const Graph& g, Vertex a, Vertex b) {
  return bfs_distances(g, {a})[static_cast<size_t>(b)];
}

inline VertexSet k_neighborhood(const Graph& g, const VertexSet& a, int k) {
  if (k < 0) throw GraphError("radius must be non-negative");
  auto dist = bfs_distances(g, a, k);
  VertexSet out;
  for (Vertex v = 0; v < g.n(); ++v)
    if (dist[static_cast<size_t>(v)] >= 0) out.push_back(v);
  return out;
}

struct SparseDense {
  bool sparse = true;
  bool dense = false;
};

inline bool is_sparse(const Graph& g, const VertexSet& a, int r) {
  auto in_a = to_mask(g.n(), a);
  for (Vertex s : a) {
    auto dist = bfs_distances(g, {s}, r);
    for (Vertex t : a)
      if (t != s && dist[static_cast<size_t>(t)] >= 0) return false;
  }
  return true;
}

// Smallest radius at which a is dense, or -1 if some vertex is unreachable from a.
inline int density_radius(const Graph& g, const VertexSet& a) {
  if (g.n() == 0) return 0;
  if (a.empty()) return -1;
  auto dist = bfs_distances(g, a);
  int worst = 0;
  for (int d : dist) {
    if (d < 0) return -1;
    worst = std::max(worst, d);
  }
  return worst;
}

inline bool is_dense(const Graph& g, const VertexSet& a, int r) {
  int rad = density_radius(g, a);
  return rad >= 0 && rad <= r;
}

inline SparseDense check_sparse_dense(const Graph& g, const VertexSet& a, int r) {
  return {is_sparse(g, a, r), is_dense(g, a, r)};
}

struct Boundary {
  size_t count = 0;
  EdgeSet edges;
};

// Undirected edges with exactly one endpoint in a, each listed once. Note that the
// ordered-pair count |E(A,B)| used in double counting counts edges inside A∩B twice;
// this routine only ever reports cut edges, so the distinction does not arise.
inline Boundary edge_boundary(const Graph& g, const VertexSet& a) {
  auto in_a = to_mask(g.n(), a);
  Boundary b;
  for (Vertex u : a)
    for (Vertex v : g.neighbors(u))
      if (!in_a[static_cast<size_t>(v)]) b.edges.emplace_back(u, v);
  std::sort(b.edges.begin(), b.edges.end());
  b.count = b.edges.size();
  return b;
}

inline size_t internal_edge_count(const Graph& g, const VertexSet& a) {
  auto in_a = to_mask(g.n(), a);
  size_t c = 0;
  for (Vertex u : a)
    for (Vertex v : g.neighbors(u))
      if (u < v && in_a[static_cast<size_t>(v)]) ++c;
  return c;
}

// Components ordered by their minimum vertex id; each component is sorted.
inline std::vector<VertexSet> connected_components(const Graph& g) {
  std::vector<int> comp(static_cast<size_t>(g.n()), -1);
  std::vector<VertexSet> out;
  for (Vertex s = 0; s < g.n(); ++s) {
    if (comp[static_cast<size_t>(s)] >= 0) continue;
    VertexSet c{s};
    comp[static_cast<size_t>(s)] = static_cast<int>(out.size());
    for (size_t i = 0; i < c.size(); ++i)
      for (Vertex w : g.neighbors(c[i]))
        if (comp[static_cast<size_t>(w)] < 0) {
          comp[static_cast<size_t>(w)] = static_cast<int>(out.size());
          c.push_back(w);
        }
    std::sort(c.begin(), c.end());
    out.push_back(std::move(c));
  }
  return out;
}

// Component index per vertex, consistent with connected_components ordering.
inline std::vector<int> component_ids(const Graph& g) {
  std::vector<int> id(static_cast<size_t>(g.n()), -1);
  auto comps = connected_components(g);
  for (size_t i = 0; i < comps.size(); ++i)
    for (Vertex v : comps[i]) id[static_cast<size_t>(v)] = static_cast<int>(i);
  return id;
}

// Two-coloring by BFS; empty result if an odd cycle exists.
inline std::vector<int> bipartition(const Graph& g) {
  std::vector<int> side(static_cast<size_t>(g.n()), -1);
  for (Vertex s = 0; s < g.n(); ++s) {
    if (side[static_cast<size_t>(s)] >= 0) continue;
    side[static_cast<size_t>(s)] = 0;
    std::queue<Vertex> q;
    q.push(s);
    while (!q.empty()) {
      Vertex u = q.front();
      q.pop();
      for (Vertex w : g.neighbors(u)) {
        if (side[static_cast<size_t>(w)] < 0) {
          side[static_cast<size_t>(w)] = 1 - side[static_cast<size_t>(u)];
          q.push(w);
        } else if (side[static_cast<size_t>(w)] == side[static_cast<size_t>(u)]) {
          return {};
        }
      }
    }
  }
  return side;
}

inline bool is_bipartite(const Graph& g) { return g.n() == 0 || !bipartition(g).empty(); }

// Edge-list text: "u v" per line, '#' comments, blank lines skipped, optional "n <count>".
struct EdgeListData {
  int n = 0;
  std::vector<Edge> edges;
  std::vector<std::string> extra_lines;  // lines whose first token is not numeric or "n"
  std::vector<int> extra_line_numbers;
};

inline EdgeListData parse_edge_list(std::istream& in, bool allow_extra = false) {
  EdgeListData d;
  std::string line;
  int lineno = 0;
  int header_n = -1;
  int max_id = -1;
  std::vector<Edge> seen;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string a;
    if (!(ls >> a)) continue;
    auto fail = [&](const std::string& why) {
      throw GraphError("line " + std::to_string(lineno) + ": " + why);
    };
    if (a == "n") {
      long long c;
      if (!(ls >> c) || c < 0) fail("bad vertex count header");
      header_n = static_cast<int>(c);
      continue;
    }
    bool numeric = !a.empty() && std::all_of(a.begin(), a.end(), [](char ch) { return ch >= '0' && ch <= '9'; });
    if (!numeric) {
      if (allow_extra) {
        d.extra_lines.push_back(line);
        d.extra_line_numbers.push_back(lineno);
        continue;
      }
      fail("expected \"u v\" but found \"" + a + "\"");
    }
    long long u = std::stoll(a), v;
    if (!(ls >> v) || v < 0) fail("expected two non-negative vertex ids");
    std::string rest;
    if (ls >> rest) fail("trailing token \"" + rest + "\"");
    if (u == v) fail("self-loop");
    if (u > 100000000 || v > 100000000) fail("vertex id too large");
    d.edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    max_id = std::max<int>(max_id, static_cast<int>(std::max(u, v)));
  }
  d.n = header_n >= 0 ? header_n : max_id + 1;
  if (max_id >= d.n) throw GraphError("vertex id " + std::to_string(max_id) + " exceeds header count");
  auto sorted = d.edges;
  std::sort(sorted.begin(), sorted.end());
  auto dup = std::adjacent_find(sorted.begin(), sorted.end());
  if (dup != sorted.end())
    throw GraphError("duplicate edge " + std::to_string(dup->u) + " " + std::to_string(dup->v));
  return d;
}

inline std::string to_edge_list(const Graph& g) {
  std::ostringstream os;
  os << "n " << g.n() << "\n";
  for (const Edge& e : g.edges()) os << e.u << " " << e.v << "\n";
  return os.str();
}

}  // namespace mec
