#pragma once

#include <algorithm>
#include <climits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "generators.hpp"
#include "graph.hpp"
#include "labeling.hpp"
#include "tutte.hpp"

namespace mec {

// ---------------------------------------------------------------------------
// The special set K

struct KContext {
  VertexSet K;
  VertexSet J;
  int r = 1;
  int r_prime = 10;
  bool sparse_ok = true;         // J ∪ K is (r+2)-sparse
  bool dense_at_r_prime = false;
  int achieved_radius = -1;      // smallest radius at which K is dense, -1 if never
  std::vector<std::string> warnings;
};

// Greedy over an (r+2)-sparse labeling: label classes in order, ids within a class, adding
// every degree-d vertex that keeps J ∪ K (r+2)-sparse. Only degree-d vertices are eligible
// so that each center lies in its own star.
inline KContext build_K(const Instance& inst, int r, int r_prime, const Labeling* labeling = nullptr, int r1 = -1) {
  if (r < 0) throw GraphError("build_K needs r >= 0");
  if (r_prime < 1) throw GraphError("build_K needs r' >= 1");
  const Graph& g = inst.graph;
  KContext k;
  k.r = r;
  k.r_prime = r_prime;
  k.J = inst.J;
  Labeling own;
  if (!labeling) {
    own = sparse_labeling(g, std::max(1, r + 2));
    labeling = &own;
  } else if (labeling->k < r + 2) {
    throw GraphError("build_K needs an (r+2)-sparse labeling");
  }
  if (r1 > 0 && !is_sparse(g, inst.J, r1))
    k.warnings.push_back("J is not " + std::to_string(r1) + "-sparse");
  std::vector<char> blocked(static_cast<size_t>(g.n()), 0);
  auto block_ball = [&](Vertex c) {
    auto dist = bfs_distances(g, {c}, r + 2);
    for (Vertex w = 0; w < g.n(); ++w)
      if (dist[static_cast<size_t>(w)] >= 0) blocked[static_cast<size_t>(w)] = 1;
  };
  for (Vertex j : inst.J) block_ball(j);
  for (const auto& cls : label_classes(*labeling)) {
    VertexSet added;
    for (Vertex x : cls)
      if (!blocked[static_cast<size_t>(x)] && g.degree(x) == inst.d) added.push_back(x);
    // same-label vertices are far apart, so blocking after the whole class is equivalent
    for (Vertex x : added) block_ball(x);
    k.K = set_union(k.K, added);
  }
  k.sparse_ok = is_sparse(g, set_union(k.J, k.K), r + 2);
  k.achieved_radius = density_radius(g, k.K);
  k.dense_at_r_prime = k.achieved_radius >= 0 && k.achieved_radius <= r_prime;
  if (!k.sparse_ok) {
    // K avoids the (r+2)-balls of J and of itself, so only J can be at fault
    if (is_sparse(g, inst.J, r + 2)) throw std::logic_error("build_K: J ∪ K lost sparsity");
    k.warnings.push_back("J is not " + std::to_string(r + 2) + "-sparse");
  }
  if (!k.dense_at_r_prime)
    k.warnings.push_back("K is not " + std::to_string(r_prime) + "-dense (achieved radius " +
                         std::to_string(k.achieved_radius) + ")");
  return k;
}

inline KContext make_kcontext(const Instance& inst, VertexSet K, int r = 1, int r_prime = 10) {
  KContext k;
  k.K = normalized(std::move(K));
  k.J = inst.J;
  k.r = r;
  k.r_prime = r_prime;
  k.sparse_ok = is_sparse(inst.graph, set_union(k.J, k.K), r + 2);
  k.achieved_radius = density_radius(inst.graph, k.K);
  k.dense_at_r_prime = k.achieved_radius >= 0 && k.achieved_radius <= r_prime;
  return k;
}

// ---------------------------------------------------------------------------
// Stars and the unhappy set

enum class StarType { Complete, Heavy, Light };

inline const char* star_type_name(StarType t) {
  switch (t) {
    case StarType::Complete: return "complete";
    case StarType::Heavy: return "heavy";
    default: return "light";
  }
}

struct Star {
  Vertex center = -1;
  VertexSet members;    // degree-d vertices of the closed neighborhood
  StarType type = StarType::Complete;
  VertexSet truncated;  // uncovered members minus the largest id
};

struct StarClassification {
  std::vector<Star> stars;  // one per K vertex, in K order
};

inline VertexSet star_members(const Instance& inst, Vertex x) {
  VertexSet s;
  if (inst.graph.degree(x) == inst.d) s.push_back(x);
  for (Vertex w : inst.graph.neighbors(x))
    if (inst.graph.degree(w) == inst.d) s.push_back(w);
  return normalized(s);
}

inline Star classify_star(const Instance& inst, Vertex x, const Matching& m) {
  Star s;
  s.center = x;
  s.members = star_members(inst, x);
  VertexSet unc;
  for (Vertex v : s.members)
    if (!m.covered(v)) unc.push_back(v);
  s.type = unc.empty() ? StarType::Complete : unc.size() == 1 ? StarType::Heavy : StarType::Light;
  if (unc.size() >= 2) s.truncated.assign(unc.begin(), unc.end() - 1);
  return s;
}

inline StarClassification classify_stars(const Instance& inst, const KContext& k, const Matching& m) {
  if (!m.valid_in(inst.graph)) throw GraphError("classify_stars: invalid matching");
  StarClassification c;
  for (Vertex x : k.K) c.stars.push_back(classify_star(inst, x, m));
  return c;
}

inline VertexSet unhappy_set(const Instance& inst, const KContext& k, const Matching& m) {
  if (!m.valid_in(inst.graph)) throw GraphError("unhappy_set: invalid matching");
  const Graph& g = inst.graph;
  auto nearK = to_mask(g.n(), k_neighborhood(g, k.K, 1));
  VertexSet u;
  for (Vertex v = 0; v < g.n(); ++v)
    if (!nearK[static_cast<size_t>(v)] && g.degree(v) >= inst.d && !m.covered(v)) u.push_back(v);
  for (const Star& s : classify_stars(inst, k, m).stars) u = set_union(u, s.truncated);
  return u;
}

// ---------------------------------------------------------------------------
// Initial matching around J

struct InitialMatchingResult {
  Matching matching;
  bool ok = true;
  VertexSet uncovered_J;
  std::vector<std::pair<Vertex, VertexSet>> certificates;  // violating S, or uncovered Z when too large
  std::vector<std::string> warnings;
};

// For each x in J (in id order): cover every degree->=d vertex within r1/4 of x using edges
// inside the (r1/4+1)-ball, taking the lexicographically first partner assignment.
inline InitialMatchingResult initial_matching(const Instance& inst, int r1, long long node_budget = 200000) {
  if (r1 < 0) throw GraphError("initial_matching needs r1 >= 0");
  const Graph& g = inst.graph;
  InitialMatchingResult res;
  res.matching = Matching(g.n());
  const int q = r1 / 4;
  std::vector<char> claimed(static_cast<size_t>(g.n()), 0);
  for (Vertex x : inst.J) {
    VertexSet ball = k_neighborhood(g, {x}, q + 1);
    bool overlap = false;
    for (Vertex v : ball) overlap |= claimed[static_cast<size_t>(v)] != 0;
    if (overlap) res.warnings.push_back("neighborhood of J vertex " + std::to_string(x) + " overlaps another");
    for (Vertex v : ball) claimed[static_cast<size_t>(v)] = 1;
    VertexSet Z;
    for (Vertex v : k_neighborhood(g, {x}, q))
      if (g.degree(v) >= inst.d) Z.push_back(v);
    auto allowed = to_mask(g.n(), ball);
    std::optional<Matching> found;
    try {
      found = cover_matching(g, Z, allowed, res.matching, node_budget);
    } catch (const GraphError&) {
      found.reset();
      res.warnings.push_back("search budget exhausted at J vertex " + std::to_string(x));
    }
    if (found) {
      res.matching = *found;
      continue;
    }
    res.ok = false;
    res.uncovered_J.push_back(x);
    if (ball.size() <= 20) {
      auto [sub, back] = g.induced(ball);
      std::vector<Vertex> fwd(static_cast<size_t>(g.n()), -1);
      for (size_t i = 0; i < back.size(); ++i) fwd[static_cast<size_t>(back[i])] = static_cast<Vertex>(i);
      VertexSet zl;
      for (Vertex z : Z) zl.push_back(fwd[static_cast<size_t>(z)]);
      auto verdict = tutte_check(sub, normalized(zl));
      VertexSet S;
      for (Vertex s : verdict.violating_set) S.push_back(back[static_cast<size_t>(s)]);
      res.certificates.emplace_back(x, normalized(S));
    } else {
      VertexSet unc;
      for (Vertex z : Z)
        if (!res.matching.covered(z)) unc.push_back(z);
      res.certificates.emplace_back(x, unc);
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Augmenting paths

using AugPath = std::vector<Vertex>;

struct FlipLogRow {
  int round = 0;
  int path_len_budget = 0;
  long long flips = 0;
  long long sym_diff_vertices = 0;
  long long unhappy_count = 0;  // |U| when the round starts
};

struct EngineState {
  Matching matching;
  VertexSet unhappy;
  int round = 0;
  std::vector<FlipLogRow> flip_log;
  std::vector<long long> unhappy_history;  // before the first round, then after each round
  long long total_flips = 0;
  bool verified_no_augmenting = false;
  std::vector<std::string> violations;
};

struct EngineParams {
  int n0 = 9;
  bool check_claims = true;
  int verify_limit = 2000;  // exhaustive post-check only up to this many vertices
};

// Matching plus incrementally maintained star bookkeeping and unhappy set.
class AugmentingEngine {
 public:
  AugmentingEngine(const Instance& inst, const KContext& k, Matching m)
      : inst_(inst), g_(inst.graph), k_(k), m_(std::move(m)) {
    if (!m_.valid_in(g_)) throw GraphError("engine: invalid matching");
    const size_t n = static_cast<size_t>(g_.n());
    stars_of_.assign(n, {});
    near_K_ = to_mask(g_.n(), k_neighborhood(g_, k_.K, 1));
    for (Vertex x : k_.K) {
      members_.push_back(star_members(inst_, x));
      for (Vertex v : members_.back()) stars_of_[static_cast<size_t>(v)].push_back(static_cast<int>(members_.size()) - 1);
    }
    uncovered_.assign(members_.size(), 0);
    for (size_t s = 0; s < members_.size(); ++s)
      for (Vertex v : members_[s]) uncovered_[s] += !m_.covered(v);
    in_u_.assign(n, 0);
    for (Vertex v = 0; v < g_.n(); ++v) in_u_[static_cast<size_t>(v)] = compute_u(v);
  }

  const Matching& matching() const { return m_; }
  const Instance& instance() const { return inst_; }
  bool in_unhappy(Vertex v) const { return in_u_[static_cast<size_t>(v)] != 0; }
  VertexSet unhappy() const { return from_mask(in_u_); }
  long long unhappy_count() const { return std::count(in_u_.begin(), in_u_.end(), 1); }

  StarType star_type(size_t s) const {
    return uncovered_[s] == 0 ? StarType::Complete : uncovered_[s] == 1 ? StarType::Heavy : StarType::Light;
  }
  bool in_complete_star(Vertex v) const {
    for (int s : stars_of_[static_cast<size_t>(v)])
      if (uncovered_[static_cast<size_t>(s)] == 0) return true;
    return false;
  }
  bool even_end_ok(Vertex w) const { return g_.degree(w) < inst_.d || in_complete_star(w); }

  bool is_augmenting(const AugPath& p) const {
    if (p.size() < 2 || !in_unhappy(p[0]) || m_.covered(p[0])) return false;
    std::set<Vertex> seen(p.begin(), p.end());
    if (seen.size() != p.size()) return false;
    for (size_t i = 0; i + 1 < p.size(); ++i) {
      if (!g_.adjacent(p[i], p[i + 1])) return false;
      bool matched = m_.has(p[i], p[i + 1]);
      if (matched != (i % 2 == 1)) return false;
    }
    const size_t len = p.size() - 1;
    if (len % 2 == 1) return !m_.covered(p.back());
    return even_end_ok(p.back());
  }

  // All augmenting paths from u of length <= max_len. `visited` collects every vertex
  // the search inspected, which is what the result depends on.
  template <class Emit>
  void enumerate_from(Vertex u, int max_len, Emit&& emit, std::vector<Vertex>* visited = nullptr) const {
    if (!in_unhappy(u) || m_.covered(u) || max_len < 1) return;
    AugPath path{u};
    std::vector<char>& on = scratch_;
    on.assign(static_cast<size_t>(g_.n()), 0);
    on[static_cast<size_t>(u)] = 1;
    if (visited) visited->push_back(u);
    auto rec = [&](auto&& self) -> void {
      const Vertex w = path.back();
      const int len = static_cast<int>(path.size()) - 1;
      if (len + 1 > max_len) return;
      for (Vertex v : g_.neighbors(w)) {
        if (on[static_cast<size_t>(v)]) continue;
        if (visited) visited->push_back(v);
        if (!m_.covered(v)) {
          path.push_back(v);
          emit(static_cast<const AugPath&>(path));
          path.pop_back();
          continue;
        }
        if (len + 2 > max_len) continue;
        Vertex p = m_.partner(v);
        if (on[static_cast<size_t>(p)]) continue;  // unreachable for a valid state
        if (visited) visited->push_back(p);
        path.push_back(v);
        path.push_back(p);
        on[static_cast<size_t>(v)] = on[static_cast<size_t>(p)] = 1;
        if (even_end_ok(p)) emit(static_cast<const AugPath&>(path));
        self(self);
        on[static_cast<size_t>(v)] = on[static_cast<size_t>(p)] = 0;
        path.pop_back();
        path.pop_back();
      }
    };
    rec(rec);
  }

  bool has_augmenting_from(Vertex u, int max_len) const {
    bool found = false;
    enumerate_from(u, max_len, [&](const AugPath&) { found = true; });
    return found;
  }

  // Flip one augmenting path; returns the vertices whose state may have changed and
  // appends any violated per-flip property to `violations`.
  VertexSet flip(const AugPath& p, std::vector<std::string>* violations) {
    if (!is_augmenting(p)) throw std::logic_error("flip: path is not augmenting");
    const Vertex start = p.front(), end = p.back();
    std::vector<int> touched_stars;
    for (Vertex v : {start, end})
      for (int s : stars_of_[static_cast<size_t>(v)]) touched_stars.push_back(s);
    std::sort(touched_stars.begin(), touched_stars.end());
    touched_stars.erase(std::unique(touched_stars.begin(), touched_stars.end()), touched_stars.end());
    std::vector<StarType> before;
    for (int s : touched_stars) before.push_back(star_type(static_cast<size_t>(s)));
    const bool start_cov = m_.covered(start), end_cov = m_.covered(end);

    for (size_t i = 1; i + 1 < p.size(); i += 2) m_.remove(p[i], p[i + 1]);
    for (size_t i = 0; i + 1 < p.size(); i += 2) m_.add(p[i], p[i + 1]);
    if (!m_.valid_in(g_)) throw std::logic_error("flip: matching became invalid");

    auto cov_delta = [&](Vertex v, bool was) {
      int now = m_.covered(v);
      if (now == static_cast<int>(was)) return;
      for (int s : stars_of_[static_cast<size_t>(v)]) uncovered_[static_cast<size_t>(s)] += was ? 1 : -1;
    };
    cov_delta(start, start_cov);
    if (end != start) cov_delta(end, end_cov);

    VertexSet dirty(p.begin(), p.end());
    for (int s : touched_stars)
      for (Vertex v : members_[static_cast<size_t>(s)]) dirty.push_back(v);
    dirty = normalized(dirty);
    for (Vertex v : dirty) {
      bool now = compute_u(v);
      bool was = in_u_[static_cast<size_t>(v)] != 0;
      if (now && !was && violations)
        violations->push_back("flip-happy: vertex " + std::to_string(v) + " became unhappy");
      in_u_[static_cast<size_t>(v)] = now;
    }
    if (violations) {
      if (in_unhappy(start)) violations->push_back("flip-happy: start " + std::to_string(start) + " still unhappy");
      for (size_t i = 0; i < touched_stars.size(); ++i)
        if (before[i] == StarType::Complete && star_type(static_cast<size_t>(touched_stars[i])) == StarType::Light)
          violations->push_back("star-safety: star of " + std::to_string(k_.K[static_cast<size_t>(touched_stars[i])]) +
                                " went complete -> light");
      for (Vertex j : inst_.J)
        if (contains(dirty, j) && !m_.covered(j))
          violations->push_back("J-coverage: " + std::to_string(j) + " uncovered by a flip");
    }
    return dirty;
  }

 private:
  bool compute_u(Vertex v) const {
    if (m_.covered(v)) return false;
    if (!near_K_[static_cast<size_t>(v)] && g_.degree(v) >= inst_.d) return true;
    for (int s : stars_of_[static_cast<size_t>(v)]) {
      if (uncovered_[static_cast<size_t>(s)] < 2) continue;
      // v is in the truncated star unless it is the largest uncovered member
      Vertex largest = -1;
      for (Vertex w : members_[static_cast<size_t>(s)])
        if (!m_.covered(w)) largest = std::max(largest, w);
      if (v != largest) return true;
    }
    return false;
  }

  const Instance& inst_;
  const Graph& g_;
  KContext k_;
  Matching m_;
  std::vector<VertexSet> members_;
  std::vector<std::vector<int>> stars_of_;
  std::vector<int> uncovered_;
  std::vector<char> near_K_;
  std::vector<char> in_u_;
  mutable std::vector<char> scratch_;
};

inline std::vector<int> path_pattern(const AugPath& p, const Labeling& lab) {
  std::vector<int> pat;
  pat.reserve(p.size());
  for (Vertex v : p) pat.push_back(lab[v]);
  return pat;
}

// Paths from unhappy vertices whose label sequence equals `pattern` and which are augmenting.
// With an (max_len+2)-sparse labeling the pattern fixes the path from each start.
inline std::vector<AugPath> find_augmenting_paths(const AugmentingEngine& eng, int max_len,
                                                  const std::vector<int>& pattern, const Labeling& lab) {
  std::vector<AugPath> out;
  if (pattern.size() < 2 || static_cast<int>(pattern.size()) > max_len + 1) return out;
  const Graph& g = eng.instance().graph;
  for (Vertex u : eng.unhappy()) {
    if (lab[u] != pattern[0]) continue;
    AugPath p{u};
    bool ok = true;
    for (size_t i = 1; i < pattern.size() && ok; ++i) {
      Vertex next = -1;
      for (Vertex w : g.neighbors(p.back()))
        if (lab[w] == pattern[i]) {
          if (next >= 0) throw std::logic_error("find_augmenting_paths: labeling not sparse enough");
          next = w;
        }
      if (next < 0) ok = false;
      else p.push_back(next);
    }
    if (ok && eng.is_augmenting(p)) out.push_back(std::move(p));
  }
  for (size_t i = 0; i < out.size(); ++i)
    for (size_t j = i + 1; j < out.size(); ++j) {
      auto di = bfs_distances(g, normalized(out[i]), 2);
      for (Vertex v : out[j])
        if (di[static_cast<size_t>(v)] >= 0) throw std::logic_error("find_augmenting_paths: same-pattern paths too close");
    }
  return out;
}

// Flip a batch of vertex-disjoint augmenting paths one after another, re-checking each.
inline void flip_round(AugmentingEngine& eng, const std::vector<AugPath>& paths, EngineState& state) {
  for (const AugPath& p : paths) {
    eng.flip(p, &state.violations);
    ++state.total_flips;
  }
  state.matching = eng.matching();
  state.unhappy = eng.unhappy();
}

namespace detail {

// Pattern sweep at one length budget: keep every current augmenting path keyed by
// (pattern, start); repeatedly flip all paths sharing the next pattern above a cursor,
// wrapping around until no augmenting path of length <= budget is left.
class PatternSweep {
 public:
  PatternSweep(AugmentingEngine& eng, int budget, const Labeling& lab)
      : eng_(eng), g_(eng.instance().graph), budget_(budget), lab_(lab),
        paths_(static_cast<size_t>(g_.n())), stamp_(static_cast<size_t>(g_.n()), 0),
        watchers_(static_cast<size_t>(g_.n())) {}

  long long run(std::vector<std::string>* violations) {
    for (Vertex u : eng_.unhappy()) recompute(u);
    long long flips = 0;
    std::vector<int> cursor;
    while (!entries_.empty()) {
      auto it = entries_.upper_bound({cursor, INT_MAX});
      if (it == entries_.end()) {
        cursor.clear();
        continue;
      }
      const std::vector<int> pat = it->first;
      std::vector<Vertex> starts;
      for (; it != entries_.end() && it->first == pat; ++it) starts.push_back(it->second);
      VertexSet dirty;
      for (Vertex s : starts) {
        const AugPath* chosen = nullptr;
        for (const auto& [pp, path] : paths_[static_cast<size_t>(s)])
          if (pp == pat) chosen = &path;
        if (!chosen) throw std::logic_error("pattern sweep: index out of sync");
        AugPath p = *chosen;
        if (!eng_.is_augmenting(p)) throw std::logic_error("pattern sweep: same-pattern flip interfered");
        VertexSet d = eng_.flip(p, violations);
        dirty.insert(dirty.end(), d.begin(), d.end());
        ++flips;
      }
      dirty = normalized(dirty);
      std::set<Vertex> redo(starts.begin(), starts.end());
      for (Vertex v : dirty) {
        for (auto [s, st] : watchers_[static_cast<size_t>(v)])
          if (st == stamp_[static_cast<size_t>(s)]) redo.insert(s);
        watchers_[static_cast<size_t>(v)].clear();
        if (!paths_[static_cast<size_t>(v)].empty()) redo.insert(v);
      }
      for (Vertex s : redo) recompute(s);
      cursor = pat;
    }
    return flips;
  }

 private:
  void recompute(Vertex u) {
    auto& mine = paths_[static_cast<size_t>(u)];
    for (const auto& [pat, path] : mine) entries_.erase({pat, u});
    mine.clear();
    ++stamp_[static_cast<size_t>(u)];
    if (!eng_.in_unhappy(u)) return;
    visited_.clear();
    eng_.enumerate_from(u, budget_, [&](const AugPath& p) { mine.emplace_back(path_pattern(p, lab_), p); }, &visited_);
    std::sort(visited_.begin(), visited_.end());
    visited_.erase(std::unique(visited_.begin(), visited_.end()), visited_.end());
    for (Vertex v : visited_) watchers_[static_cast<size_t>(v)].emplace_back(u, stamp_[static_cast<size_t>(u)]);
    for (const auto& [pat, path] : mine)
      if (!entries_.insert({pat, u}).second) throw std::logic_error("pattern sweep: two paths share a pattern from one start");
  }

  AugmentingEngine& eng_;
  const Graph& g_;
  int budget_;
  const Labeling& lab_;
  std::set<std::pair<std::vector<int>, Vertex>> entries_;
  std::vector<std::vector<std::pair<std::vector<int>, AugPath>>> paths_;
  std::vector<int> stamp_;
  std::vector<std::vector<std::pair<Vertex, int>>> watchers_;
  std::vector<Vertex> visited_;
};

}  // namespace detail

inline std::vector<int> round_budgets(int n0) {
  std::vector<int> b;
  for (int L = 1; L <= n0; L += 2) b.push_back(L);
  if (n0 >= 2 && n0 % 2 == 0) b.push_back(n0);
  return b;
}

// Rounds with path-length budgets 1, 3, 5, ... up to n0, each swept to a fixed point over a
// fresh (budget+2)-sparse labeling. Stops early once nobody is unhappy.
inline EngineState run_rounds(const Instance& inst, const KContext& k, const EngineParams& params, Matching start) {
  if (params.n0 < 1) throw GraphError("run_rounds needs n0 >= 1");
  AugmentingEngine eng(inst, k, std::move(start));
  EngineState st;
  st.matching = eng.matching();
  st.unhappy_history.push_back(eng.unhappy_count());
  const auto budgets = round_budgets(params.n0);
  for (size_t i = 0; i < budgets.size(); ++i) {
    const long long u_before = eng.unhappy_count();
    if (u_before == 0) break;
    const int L = budgets[i];
    Labeling lab = sparse_labeling(inst.graph, L + 2);
    Matching before = eng.matching();
    detail::PatternSweep sweep(eng, L, lab);
    long long flips = sweep.run(params.check_claims ? &st.violations : nullptr);
    FlipLogRow row;
    row.round = static_cast<int>(i);
    row.path_len_budget = L;
    row.flips = flips;
    row.sym_diff_vertices = static_cast<long long>(sym_diff_vertices(before, eng.matching()).size());
    row.unhappy_count = u_before;
    st.flip_log.push_back(row);
    st.total_flips += flips;
    st.unhappy_history.push_back(eng.unhappy_count());
    st.round = static_cast<int>(i) + 1;
    if (params.check_claims) {
      if (row.sym_diff_vertices > static_cast<long long>(L + 1) * u_before)
        st.violations.push_back("flip-locality: round " + std::to_string(i) + " changed " + std::to_string(row.sym_diff_vertices) +
                                " vertices, bound " + std::to_string((L + 1) * u_before));
      if (eng.unhappy_count() > u_before) st.violations.push_back("flip-happy: unhappy set grew in round " + std::to_string(i));
    }
  }
  st.matching = eng.matching();
  st.unhappy = eng.unhappy();
  if (inst.graph.n() <= params.verify_limit) {
    bool clean = true;
    for (Vertex u : st.unhappy) clean = clean && !eng.has_augmenting_from(u, params.n0);
    st.verified_no_augmenting = clean;
    if (!clean) st.violations.push_back("post-check: augmenting path of length <= n0 remains");
  }
  return st;
}

inline EngineState run_rounds(const Instance& inst, const KContext& k, const EngineParams& params) {
  return run_rounds(inst, k, params, Matching(inst.graph.n()));
}

inline std::string flip_log_csv(const EngineState& st) {
  std::ostringstream os;
  os << "round,path_len_budget,flips,sym_diff_vertices,unhappy_count\n";
  for (const auto& r : st.flip_log)
    os << r.round << "," << r.path_len_budget << "," << r.flips << "," << r.sym_diff_vertices << "," << r.unhappy_count << "\n";
  return os.str();
}

}  // namespace mec
