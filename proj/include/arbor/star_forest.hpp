#pragma once
// Star-forest decomposition of simple graphs: per-vertex bipartite matchings
// between colors and out-neighbors, center sampling with a Moser-Tardos style
// resampler, and the end-to-end driver.

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "basic_decomp.hpp"
#include "coloring.hpp"
#include "multigraph.hpp"
#include "oracles.hpp"
#include "orientation.hpp"
#include "runtime.hpp"

namespace arbor {

// C_v per vertex: v is a c-leaf for c in C_v and a c-center otherwise.
struct CenterAssignment {
  std::vector<std::vector<Color>> colors_of;  // sorted per vertex

  bool is_leaf(Vertex v, Color c) const {
    const auto& cs = colors_of[v];
    return std::binary_search(cs.begin(), cs.end(), c);
  }

  nlohmann::json to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& cs : colors_of) arr.push_back(cs);
    return {{"centers", arr}};
  }
  static CenterAssignment from_json(const nlohmann::json& j) {
    CenterAssignment ca;
    for (const auto& cs : j.at("centers")) {
      ca.colors_of.push_back(cs.get<std::vector<Color>>());
      std::sort(ca.colors_of.back().begin(), ca.colors_of.back().end());
    }
    return ca;
  }
};

// Left nodes are colors; right nodes are the out-neighbors of v padded with
// dummies to exactly t slots. Edge (c, u) iff c in C_v \ C_u and c in Q(vu).
struct LocalBipartite {
  std::vector<Color> left;
  std::vector<Vertex> right;       // -1 = dummy slot
  std::vector<EdgeId> right_edge;  // -1 = dummy slot
  std::vector<std::vector<int>> adj;  // per left index, ascending right index
};

inline LocalBipartite build_hv(const MultiGraph& g, const Orientation& A,
                               const CenterAssignment& centers, const PaletteSet& palettes,
                               Vertex v, int t) {
  if (!g.is_simple()) throw Error("not-simple", "build_hv: simple graphs only");
  LocalBipartite h;
  h.left = palettes.universe;
  std::vector<EdgeId> outs;
  for (EdgeId e : g.adj[v])
    if (A.tail(g, e) == v) outs.push_back(e);
  std::sort(outs.begin(), outs.end());
  if (static_cast<int>(outs.size()) > t)
    throw Error("orientation-exceeds-t", "build_hv: vertex " + std::to_string(v) + " has " +
                                             std::to_string(outs.size()) + " out-edges > t");
  for (EdgeId e : outs) {
    h.right.push_back(g.other(e, v));
    h.right_edge.push_back(e);
  }
  h.right.resize(t, -1);
  h.right_edge.resize(t, -1);
  h.adj.resize(h.left.size());
  for (size_t li = 0; li < h.left.size(); ++li) {
    Color c = h.left[li];
    if (!centers.is_leaf(v, c)) continue;
    for (size_t j = 0; j < outs.size(); ++j) {
      Vertex u = h.right[j];
      if (!centers.is_leaf(u, c) && palettes.admissible(h.right_edge[j], c))
        h.adj[li].push_back(static_cast<int>(j));
    }
  }
  return h;
}

// Maximum-cardinality matching by augmenting paths; left nodes are tried in
// color order and their adjacency in ascending right index, so the result is
// deterministic given the input.
inline std::vector<int> max_bipartite_matching(const LocalBipartite& h) {
  const int L = static_cast<int>(h.left.size());
  const int R = static_cast<int>(h.right.size());
  std::vector<int> ml(L, -1), mr(R, -1);
  std::vector<char> vis(R, 0);
  std::function<bool(int)> augment = [&](int li) {
    for (int j : h.adj[li]) {
      if (vis[j]) continue;
      vis[j] = 1;
      if (mr[j] < 0 || augment(mr[j])) {
        ml[li] = j;
        mr[j] = li;
        return true;
      }
    }
    return false;
  };
  for (int li = 0; li < L; ++li) {
    std::fill(vis.begin(), vis.end(), 0);
    augment(li);
  }
  return ml;
}

inline int matching_size(const std::vector<int>& ml) {
  return static_cast<int>(std::count_if(ml.begin(), ml.end(), [](int x) { return x >= 0; }));
}

struct SfdResult {
  PartialColoring coloring;   // E0: matched out-edges, one star color each
  std::vector<EdgeId> e1;     // unmatched real out-edges
};

// Turn the per-vertex matchings into star colors. Every vertex must have
// matching deficit (real out-edges minus matching size) at most delta; the
// unmatched real out-edges form E1 with at most delta per tail, a
// delta-orientation witness. Dummy slots carry no edges, so they are excluded
// from the deficit.
inline SfdResult sfd_from_matchings(const MultiGraph& g, const std::vector<LocalBipartite>& hs,
                                    const std::vector<std::vector<int>>& matchings, int delta) {
  SfdResult out;
  out.coloring = PartialColoring(g.m());
  for (Vertex v = 0; v < g.n; ++v) {
    const auto& h = hs[v];
    const auto& ml = matchings[v];
    const int t = static_cast<int>(h.right.size());
    const int real = static_cast<int>(
        std::count_if(h.right.begin(), h.right.end(), [](Vertex u) { return u >= 0; }));
    const int deficit = real - matching_size(ml);
    if (deficit > delta)
      throw Error("matching-deficit-exceeds-delta",
                  "sfd_from_matchings: vertex " + std::to_string(v) + " deficit " +
                      std::to_string(deficit) + " > " + std::to_string(delta));
    std::vector<char> covered(t, 0);
    for (size_t li = 0; li < ml.size(); ++li)
      if (ml[li] >= 0) {
        covered[ml[li]] = 1;
        out.coloring.color_of[h.right_edge[ml[li]]] = h.left[li];
      }
    for (int j = 0; j < t; ++j)
      if (!covered[j] && h.right[j] >= 0) out.e1.push_back(h.right_edge[j]);
  }
  std::sort(out.e1.begin(), out.e1.end());
  return out;
}

// ---------------------------------------------------------------------------
// Distributed LLL driver (Moser-Tardos rounds).

struct LllProblem {
  int num_events = 0;
  std::function<bool(int)> violated;
  std::function<void(int, RandomStream)> resample;
  std::function<std::vector<int>(int)> dependents;  // events sharing variables
};

// Rounds: evaluate all events, resample a greedy-by-id independent set of the
// violated ones, repeat. Returns the number of rounds used.
inline int distributed_lll(const LllProblem& prob, RandomStream stream, RoundLedger& ledger,
                           int budget = -1) {
  if (budget < 0) budget = 10 * std::max(1, ceil_log2(prob.num_events + 2)) + 10;
  for (int round = 0; round < budget; ++round) {
    std::vector<int> bad;
    for (int i = 0; i < prob.num_events; ++i)
      if (prob.violated(i)) bad.push_back(i);
    if (bad.empty()) {
      ledger.charge("distributed_lll", 2, round + 1);
      return round;
    }
    std::vector<char> blocked(prob.num_events, 0);
    for (int i : bad) {
      if (blocked[i]) continue;
      prob.resample(i, stream.derive("round", round).derive("event", i));
      blocked[i] = 1;
      for (int j : prob.dependents(i)) blocked[j] = 1;
    }
  }
  int survivors = 0;
  for (int i = 0; i < prob.num_events; ++i) survivors += prob.violated(i);
  throw Error("budget-exhausted", "distributed_lll: " + std::to_string(survivors) +
                                      " events still violated after " + std::to_string(budget) +
                                      " rounds");
}

// ---------------------------------------------------------------------------
// Center sampling.

// Uniform a-subsets of [t]; resampled until every H_v matching reaches the
// weaker of the two acceptance thresholds. met_bound (optional) reports which
// thresholds the accepted assignment satisfies everywhere.
inline CenterAssignment sample_centers_sfd(const MultiGraph& g, const Orientation& A, int a,
                                           double eps, RandomStream stream, RoundLedger& ledger,
                                           bool test_mode = false,
                                           std::string* met_bound = nullptr) {
  if (eps <= 0) throw Error("bad-eps", "sample_centers_sfd: eps > 0 required");
  const int t = static_cast<int>(std::ceil((1 + eps) * a));
  const int logd = std::max(1, ceil_log2(std::max(2, g.max_degree())));
  if (!test_mode && a * eps < std::sqrt(static_cast<double>(logd)) + std::log2(a + 1.0))
    throw Error("precondition-not-met", "sample_centers_sfd: a*eps too small (use test mode)");
  const int r1 = static_cast<int>(std::ceil(a * (1.0 - eps)));
  const int r2 = t - static_cast<int>(std::ceil(2 * a * eps));
  const int required = std::max(0, std::min(r1, r2));

  auto palettes = PaletteSet::full(g.m(), t);
  CenterAssignment centers;
  centers.colors_of.assign(g.n, {});
  std::vector<int> draws(g.n, 0);
  RandomStream rs = stream.derive("sfd_centers");
  auto redraw = [&](Vertex v) {
    std::vector<Color> all(t);
    std::iota(all.begin(), all.end(), 0);
    rs.derive("v", v).derive("draw", draws[v]++).shuffle(all);
    all.resize(std::min(a, t));
    std::sort(all.begin(), all.end());
    centers.colors_of[v] = std::move(all);
  };
  for (Vertex v = 0; v < g.n; ++v) redraw(v);

  auto outs = A.out_edges(g);
  std::vector<std::vector<int>> users(g.n);
  for (Vertex v = 0; v < g.n; ++v) {
    users[v].push_back(v);
    for (EdgeId e : outs[v]) users[A.head(g, e)].push_back(v);
  }
  LllProblem prob;
  prob.num_events = g.n;
  prob.violated = [&](int v) {
    auto h = build_hv(g, A, centers, palettes, v, t);
    // the requirement is capped by what the real out-degree can achieve
    int need = std::min(required, static_cast<int>(outs[v].size()));
    return matching_size(max_bipartite_matching(h)) < need;
  };
  prob.resample = [&](int v, RandomStream) {
    redraw(v);
    for (EdgeId e : outs[v]) redraw(A.head(g, e));
  };
  prob.dependents = [&](int v) {
    std::vector<int> deps = users[v];
    for (EdgeId e : outs[v]) {
      const auto& us = users[A.head(g, e)];
      deps.insert(deps.end(), us.begin(), us.end());
    }
    std::sort(deps.begin(), deps.end());
    deps.erase(std::unique(deps.begin(), deps.end()), deps.end());
    return deps;
  };
  distributed_lll(prob, stream.derive("lll"), ledger);

  if (met_bound) {
    bool m1 = true, m2 = true;
    for (Vertex v = 0; v < g.n; ++v) {
      auto h = build_hv(g, A, centers, palettes, v, t);
      int sz = matching_size(max_bipartite_matching(h));
      int d = static_cast<int>(outs[v].size());
      m1 = m1 && sz >= std::min(r1, d);
      m2 = m2 && sz >= std::min(r2, d);
    }
    *met_bound = m1 && m2 ? "both" : m1 ? "a(1-eps)" : "t-2aeps";
  }
  return centers;
}

// Independent inclusion with probability 1-eps; resampled until every H_v
// matches all of its real out-edges (a perfect matching up to dummy slots).
inline CenterAssignment sample_centers_lsfd(const MultiGraph& g, const Orientation& A, int a,
                                            double eps, const PaletteSet& palettes,
                                            RandomStream stream, RoundLedger& ledger,
                                            bool test_mode = false) {
  if (eps <= 0 || eps >= 1) throw Error("bad-eps", "sample_centers_lsfd: eps in (0,1)");
  const int t = static_cast<int>(std::ceil((1 + eps) * a));
  if (!test_mode) {
    const int logd = std::max(1, ceil_log2(std::max(2, g.max_degree())));
    int min_q = g.m() ? static_cast<int>(palettes.q[0].size()) : 0;
    for (EdgeId e = 0; e < g.m(); ++e)
      min_q = std::min(min_q, static_cast<int>(palettes.q[e].size()));
    if (min_q < a * (1 + 200 * eps) || a * eps < logd)
      throw Error("precondition-not-met", "sample_centers_lsfd: parameters out of range");
  }
  CenterAssignment centers;
  centers.colors_of.assign(g.n, {});
  std::vector<int> draws(g.n, 0);
  RandomStream rs = stream.derive("lsfd_centers");
  auto redraw = [&](Vertex v) {
    std::vector<Color> cs;
    RandomStream vs = rs.derive("v", v).derive("draw", draws[v]++);
    for (size_t i = 0; i < palettes.universe.size(); ++i)
      if (vs.derive("c", i).bernoulli(1.0 - eps)) cs.push_back(palettes.universe[i]);
    centers.colors_of[v] = std::move(cs);
  };
  for (Vertex v = 0; v < g.n; ++v) redraw(v);

  auto outs = A.out_edges(g);
  std::vector<std::vector<int>> users(g.n);
  for (Vertex v = 0; v < g.n; ++v) {
    users[v].push_back(v);
    for (EdgeId e : outs[v]) users[A.head(g, e)].push_back(v);
  }
  LllProblem prob;
  prob.num_events = g.n;
  prob.violated = [&](int v) {
    auto h = build_hv(g, A, centers, palettes, v, t);
    return matching_size(max_bipartite_matching(h)) < static_cast<int>(outs[v].size());
  };
  prob.resample = [&](int v, RandomStream) {
    redraw(v);
    for (EdgeId e : outs[v]) redraw(A.head(g, e));
  };
  prob.dependents = [&](int v) {
    std::vector<int> deps = users[v];
    for (EdgeId e : outs[v]) {
      const auto& us = users[A.head(g, e)];
      deps.insert(deps.end(), us.begin(), us.end());
    }
    std::sort(deps.begin(), deps.end());
    deps.erase(std::unique(deps.begin(), deps.end()), deps.end());
    return deps;
  };
  distributed_lll(prob, stream.derive("lll"), ledger);
  return centers;
}

// ---------------------------------------------------------------------------
// End-to-end driver.

enum class StarMode { sfd, lsfd };

inline PartialColoring star_forest_decomposition(const MultiGraph& g, double eps, StarMode mode,
                                                 const PaletteSet* palettes, RandomStream stream,
                                                 RoundLedger& ledger, int a_bound = -1,
                                                 bool test_mode = false) {
  if (!g.is_simple()) throw Error("not-simple", "star_forest_decomposition: simple graphs only");
  if (g.m() == 0) return PartialColoring(0);
  const int a = a_bound >= 0 ? a_bound : default_a_bound(g);
  const int t = static_cast<int>(std::ceil((1 + eps) * a));
  Orientation psi = low_outdegree_orientation(g, eps, stream.derive("orient"), ledger);

  auto run = [&](const CenterAssignment& centers, const PaletteSet& ps, int delta) {
    std::vector<LocalBipartite> hs;
    std::vector<std::vector<int>> matchings;
    for (Vertex v = 0; v < g.n; ++v) {
      hs.push_back(build_hv(g, psi, centers, ps, v, t));
      matchings.push_back(max_bipartite_matching(hs.back()));
    }
    return sfd_from_matchings(g, hs, matchings, delta);
  };

  if (mode == StarMode::lsfd) {
    if (!palettes)
      throw Error("missing-palettes", "star_forest_decomposition: lsfd mode needs palettes");
    auto centers =
        sample_centers_lsfd(g, psi, a, eps, *palettes, stream.derive("centers"), ledger,
                            test_mode);
    auto res = run(centers, *palettes, 0);
    return res.coloring;
  }

  auto full = PaletteSet::full(g.m(), t);
  auto centers =
      sample_centers_sfd(g, psi, a, eps, stream.derive("centers"), ledger, test_mode);
  const int delta = std::max(t - static_cast<int>(std::ceil(a * (1.0 - eps))),
                             static_cast<int>(std::ceil(2 * a * eps)));
  auto res = run(centers, full, delta);
  PartialColoring out = res.coloring;
  if (!res.e1.empty()) {
    // the leftover has pseudo-arboricity <= delta; star-decompose it with
    // fresh colors above t
    std::vector<std::pair<Vertex, Vertex>> es;
    for (EdgeId e : res.e1) es.push_back(g.edges[e]);
    MultiGraph sub(g.n, std::move(es));
    auto stars = star_forest_3t(sub, 0.1, ledger);
    for (size_t i = 0; i < res.e1.size(); ++i)
      out.color_of[res.e1[i]] = t + stars.color_of[static_cast<EdgeId>(i)];
  }
  return out;
}

}  // namespace arbor
