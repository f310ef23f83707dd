#pragma once

#include <cstdint>
#include <vector>

#include "graph.hpp"

namespace mec {

// Distance-k coloring. Labels are 1-based in [1, m].
struct Labeling {
  int k = 0;
  int m = 0;
  std::vector<int> labels;

  int operator[](Vertex v) const { return labels[static_cast<size_t>(v)]; }
};

// 1 + D * sum_{i=1..k} (D-1)^{i-1}: the largest possible k-ball. Saturates at INT64_MAX.
inline int64_t labeling_bound(int delta, int k) {
  int64_t total = 1, term = delta;
  for (int i = 1; i <= k; ++i) {
    if (term > INT64_MAX - total) return INT64_MAX;
    total += term;
    if (delta > 1 && term > INT64_MAX / (delta - 1)) term = INT64_MAX;
    else term *= (delta - 1);
  }
  return total;
}

// Greedy in id order: each vertex takes the least label missing from its k-ball.
inline Labeling sparse_labeling(const Graph& g, int k) {
  if (k < 1) throw GraphError("sparse_labeling needs k >= 1");
  Labeling lab;
  lab.k = k;
  lab.labels.assign(static_cast<size_t>(g.n()), 0);
  std::vector<int> dist(static_cast<size_t>(g.n()), -1);
  std::vector<Vertex> queue;
  std::vector<char> taken;
  for (Vertex v = 0; v < g.n(); ++v) {
    queue.assign(1, v);
    dist[static_cast<size_t>(v)] = 0;
    taken.assign(static_cast<size_t>(lab.m) + 2, 0);
    for (size_t h = 0; h < queue.size(); ++h) {
      Vertex u = queue[h];
      int lu = lab.labels[static_cast<size_t>(u)];
      if (lu > 0) taken[static_cast<size_t>(lu)] = 1;
      if (dist[static_cast<size_t>(u)] == k) continue;
      for (Vertex w : g.neighbors(u))
        if (dist[static_cast<size_t>(w)] < 0) {
          dist[static_cast<size_t>(w)] = dist[static_cast<size_t>(u)] + 1;
          queue.push_back(w);
        }
    }
    for (Vertex u : queue) dist[static_cast<size_t>(u)] = -1;
    int c = 1;
    while (taken[static_cast<size_t>(c)]) ++c;
    lab.labels[static_cast<size_t>(v)] = c;
    lab.m = std::max(lab.m, c);
  }
  return lab;
}

inline std::vector<VertexSet> label_classes(const Labeling& lab) {
  std::vector<VertexSet> cls(static_cast<size_t>(lab.m) + 1);
  for (size_t v = 0; v < lab.labels.size(); ++v) cls[static_cast<size_t>(lab.labels[v])].push_back(static_cast<Vertex>(v));
  return cls;
}

// Every label class is k-sparse (the label count is not checked).
inline bool classes_sparse(const Graph& g, const Labeling& lab, int k) {
  if (static_cast<int>(lab.labels.size()) != g.n()) return false;
  for (int l : lab.labels)
    if (l < 1 || l > lab.m) return false;
  for (const auto& c : label_classes(lab))
    if (c.size() > 1 && !check_sparse_dense(g, c, k).sparse) return false;
  return true;
}

inline bool verify_labeling(const Graph& g, const Labeling& lab) {
  if (lab.k < 1) return false;
  if (g.n() > 0 && lab.m > labeling_bound(g.delta(), lab.k)) return false;
  return classes_sparse(g, lab, lab.k);
}

inline Labeling labeling_from(const std::vector<int>& labels, int k) {
  Labeling lab;
  lab.k = k;
  lab.labels = labels;
  for (int l : labels) lab.m = std::max(lab.m, l);
  return lab;
}

}  // namespace mec
