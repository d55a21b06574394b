#pragma once
// Forest decomposition driver: cluster-by-cluster coloring with CUT
// strategies, the plain-FD combiner, vertex-color splitting, and the LFD
// combiner.

#include <algorithm>
#include <cmath>
#include <vector>

#include "augmentation.hpp"
#include "basic_decomp.hpp"
#include "coloring.hpp"
#include "multigraph.hpp"
#include "netdecomp.hpp"
#include "oracles.hpp"
#include "runtime.hpp"

namespace arbor {

enum class CutStrategy { diameter, random_depth, random_outedge };

inline const char* cut_strategy_name(CutStrategy s) {
  switch (s) {
    case CutStrategy::diameter: return "diameter";
    case CutStrategy::random_depth: return "random_depth";
    default: return "random_outedge";
  }
}

struct AlgorithmParams {
  double eps = 0.5;
  int a_bound = 1;
  int a_star_bound = 1;
  int T = 1;             // class-count bound of the network decomposition
  int R = 1;             // CUT radius parameter
  int R_prime = 1;       // coloring radius parameter
  int K = 4, K_prime = 4, K_double_prime = 4;
  double eta = 0.5;
  double p = 1.0;
  double c_pre = 0.2;    // calibration constant for the eps*a >= c log n checks

  int load_cap() const { return std::max(1, static_cast<int>(std::ceil(eps * a_bound))); }

  static AlgorithmParams make(const MultiGraph& g, double eps, CutStrategy strategy,
                              int a_bound = -1, int a_star_bound = -1) {
    if (eps <= 0) throw Error("bad-eps", "AlgorithmParams: eps > 0 required");
    AlgorithmParams ap;
    ap.eps = eps;
    ap.a_star_bound = a_star_bound >= 0 ? a_star_bound : default_a_star_bound(g);
    ap.a_bound = a_bound >= 0 ? a_bound : default_a_bound(g);
    const int l2 = std::max(1, ceil_log2(g.n));
    ap.T = l2 + 1;
    ap.R_prime = static_cast<int>(std::ceil(ap.K_prime * l2 / eps));
    if (strategy == CutStrategy::random_outedge) {
      const int logd = std::max(1, ceil_log2(std::max(2, g.max_degree())));
      const double ea = eps * ap.a_bound;
      if (ea >= logd) {
        ap.eta = 0.5;
        ap.R = static_cast<int>(std::ceil(ap.K * l2 * l2 / eps));
      } else {
        ap.eta = std::ceil(ea) / (2.0 * logd);
        double expo = (2 + 4 * ap.eta) / std::ceil(ea);
        ap.R = static_cast<int>(std::ceil(ap.K * std::pow(2.0, expo * logd) * logd * l2 * l2 /
                                          (ap.a_bound * eps * eps)));
      }
      ap.p = std::min(1.0, ap.K_double_prime * ap.a_bound * l2 / (ap.eta * ap.R));
    } else {
      ap.R = static_cast<int>(std::ceil(80.0 * ap.T / eps));
    }
    return ap;
  }
};

struct CutState {
  Orientation J;                 // fixed low-outdegree orientation
  std::vector<int> load;         // removed edges charged per vertex
  std::vector<EdgeId> removed;   // removal order
  std::vector<Vertex> charged;   // parallel to removed
  std::vector<char> is_removed;  // per EdgeId

  static CutState init(const MultiGraph& g, RoundLedger& ledger, int a_star_bound) {
    CutState st;
    st.J = acyclic_orientation(g, 1.0, ledger, a_star_bound);
    st.load.assign(g.n, 0);
    st.is_removed.assign(g.m(), 0);
    return st;
  }

  void remove(const MultiGraph& g, PartialColoring& pc, EdgeId e, Vertex v) {
    (void)g;
    if (is_removed[e]) return;
    is_removed[e] = 1;
    removed.push_back(e);
    charged.push_back(v);
    load[v]++;
    pc.color_of[e] = kUncolored;
  }
};

struct CutScope {
  std::vector<Vertex> inner;  // N^{R'}(C)
  std::vector<char> in_inner;
  std::vector<Vertex> outer;  // N^{R+R'}(C)
  std::vector<char> in_outer;
};

namespace detail {
inline CutScope make_scope(const MultiGraph& g, const std::vector<Vertex>& cluster, int r_inner,
                           int r_outer) {
  CutScope sc;
  auto d_in = bfs_distances(g, cluster, r_inner);
  auto d_out = bfs_distances(g, cluster, r_outer);
  sc.in_inner.assign(g.n, 0);
  sc.in_outer.assign(g.n, 0);
  for (Vertex v = 0; v < g.n; ++v) {
    if (d_in[v] >= 0) {
      sc.in_inner[v] = 1;
      sc.inner.push_back(v);
    }
    if (d_out[v] >= 0) {
      sc.in_outer[v] = 1;
      sc.outer.push_back(v);
    }
  }
  return sc;
}
}  // namespace detail

// Theorem-5.2(2) style cut: per color, random depth class mod N pruned.
inline std::vector<EdgeId> cut_random_depth(const MultiGraph& g, PartialColoring& pc,
                                            const CutScope& scope, const AlgorithmParams& params,
                                            RandomStream stream, CutState& state) {
  const int l2 = std::max(1, ceil_log2(g.n));
  if (params.eps * params.a_bound < params.c_pre * l2)
    throw Error("precondition-not-met", "cut_random_depth: eps*a below the log n threshold");
  const int N = std::max(1, params.R / 2);
  std::vector<EdgeId> removed_here;
  auto by = edges_by_color(pc);
  for (Color c = 0; c < static_cast<Color>(by.size()); ++c) {
    if (by[c].empty()) continue;
    int jc = static_cast<int>(stream.derive("J", c).uniform_int(N));
    // root every tree at its minimum vertex, depth-prune children
    std::vector<std::vector<std::pair<Vertex, EdgeId>>> adjc(g.n);
    for (EdgeId e : by[c]) {
      if (state.is_removed[e]) continue;
      auto [u, v] = g.edges[e];
      adjc[u].push_back({v, e});
      adjc[v].push_back({u, e});
    }
    std::vector<int> depth(g.n, -1);
    for (EdgeId e : by[c])
      for (Vertex s : {g.edges[e].first, g.edges[e].second}) {
        if (depth[s] >= 0) continue;
        std::vector<Vertex> comp{s};
        depth[s] = 0;
        for (size_t i = 0; i < comp.size(); ++i)
          for (auto [w, f] : adjc[comp[i]])
            if (depth[w] < 0) {
              depth[w] = 0;
              comp.push_back(w);
            }
        Vertex root = *std::min_element(comp.begin(), comp.end());
        for (Vertex x : comp) depth[x] = -1;
        depth[root] = 0;
        std::vector<std::pair<Vertex, EdgeId>> q{{root, -1}};
        for (size_t i = 0; i < q.size(); ++i) {
          auto [x, pe] = q[i];
          for (auto [w, f] : adjc[x])
            if (depth[w] < 0 && f != pe) {
              depth[w] = depth[x] + 1;
              q.push_back({w, f});
              if (depth[w] % N == jc && depth[w] > 0 && scope.in_outer[w] &&
                  state.load[w] < params.load_cap()) {
                state.remove(g, pc, f, w);
                removed_here.push_back(f);
              }
            }
        }
      }
  }
  return removed_here;
}

// Theorem-5.2(1) style cut: run the diameter reducer on the scope's induced
// subgraph with eps' = eps/(2T) and remove everything it moved aside.
inline std::vector<EdgeId> cut_diameter(const MultiGraph& g, PartialColoring& pc,
                                        const CutScope& scope, const AlgorithmParams& params,
                                        RandomStream stream, CutState& state,
                                        RoundLedger& ledger) {
  const int l2 = std::max(1, ceil_log2(g.n));
  if (params.eps * params.a_bound < params.c_pre * l2)
    throw Error("precondition-not-met", "cut_diameter: eps*a below the log n threshold");
  double eps_prime = params.eps / (2.0 * params.T);
  auto sub = induced_subgraph(g, scope.outer);
  PartialColoring sub_pc(sub.graph.m());
  for (EdgeId se = 0; se < sub.graph.m(); ++se) {
    EdgeId oe = sub.edge_to_original[se];
    if (!state.is_removed[oe]) sub_pc.color_of[se] = pc.color_of[oe];
  }
  std::vector<EdgeId> removed_here;
  if (sub.graph.m() == 0) return removed_here;
  auto red = reduce_forest_diameter(sub.graph, sub_pc, std::max(1e-3, eps_prime), stream, ledger,
                                    params.a_bound);
  for (EdgeId se : red.e1_edges) {
    EdgeId oe = sub.edge_to_original[se];
    Vertex v = std::min(g.edges[oe].first, g.edges[oe].second);
    state.remove(g, pc, oe, v);
    removed_here.push_back(oe);
  }
  return removed_here;
}

// Algorithm-4 style cut: Bernoulli-p vertices shed one random J-out-edge,
// guarded by the per-vertex load cap.
inline std::vector<EdgeId> cut_random_outedge(const MultiGraph& g, PartialColoring& pc,
                                              const CutScope& scope,
                                              const AlgorithmParams& params, RandomStream stream,
                                              CutState& state) {
  auto outs = state.J.out_edges(g);
  std::vector<EdgeId> removed_here;
  for (Vertex v : scope.outer) {
    if (state.load[v] >= params.load_cap()) continue;  // never selected again
    RandomStream vs = stream.derive("x", v);
    if (!vs.bernoulli(params.p)) continue;
    std::vector<EdgeId> cands;
    for (EdgeId e : outs[v])
      if (!state.is_removed[e]) cands.push_back(e);
    if (cands.empty()) continue;
    EdgeId pick = cands[vs.uniform_int(cands.size())];
    state.remove(g, pc, pick, v);
    removed_here.push_back(pick);
  }
  return removed_here;
}

struct FdResult {
  PartialColoring coloring;
  std::vector<EdgeId> leftover;
  bool good = true;
  int retries = 0;
  CutStrategy strategy = CutStrategy::random_depth;

  nlohmann::json report(const RoundLedger& ledger) const {
    return {{"colors", static_cast<int>(coloring.used_colors().size())},
            {"leftover_edges", leftover},
            {"good", good},
            {"retries", retries},
            {"rounds", ledger.to_json()},
            {"strategy", cut_strategy_name(strategy)}};
  }
};

namespace detail {
// the CUT is good for this cluster if no color class connects the inner
// region to the outside of the outer region
inline bool cut_is_good(const MultiGraph& g, const PartialColoring& pc, const CutScope& scope,
                        const CutState& state) {
  auto by = edges_by_color(pc);
  for (const auto& cls : by) {
    if (cls.empty()) continue;
    std::vector<std::vector<std::pair<Vertex, EdgeId>>> adjc(g.n);
    for (EdgeId e : cls) {
      if (state.is_removed[e]) continue;
      auto [u, v] = g.edges[e];
      adjc[u].push_back({v, e});
      adjc[v].push_back({u, e});
    }
    std::vector<char> seen(g.n, 0);
    std::vector<Vertex> q;
    for (Vertex v : scope.inner)
      if (!adjc[v].empty()) {
        seen[v] = 1;
        q.push_back(v);
      }
    for (size_t i = 0; i < q.size(); ++i) {
      if (!scope.in_outer[q[i]]) return false;
      for (auto [w, e] : adjc[q[i]])
        if (!seen[w]) {
          seen[w] = 1;
          q.push_back(w);
        }
    }
  }
  return true;
}
}  // namespace detail

// Algorithm-3 driver. Colors every non-removed edge cluster by cluster;
// "good" is verified per cluster, and a bad attempt retries with a fresh
// derived stream (bounded).
inline FdResult forest_decomposition_main(const MultiGraph& g, const PaletteSet& palettes,
                                          const AlgorithmParams& params, CutStrategy strategy,
                                          RandomStream stream, RoundLedger& ledger,
                                          int max_retries = 5) {
  FdResult best;
  best.strategy = strategy;
  for (int attempt = 0;; ++attempt) {
    RandomStream rs = stream.derive("fd_attempt", attempt);
    RoundLedger attempt_ledger;
    FdResult res;
    res.strategy = strategy;
    res.retries = attempt;
    res.coloring = PartialColoring(g.m());
    auto nd = network_decomposition(g, rs.derive("nd"), attempt_ledger,
                                    2 * (params.R + params.R_prime));
    CutState state = CutState::init(g, attempt_ledger, params.a_star_bound);
    res.good = true;
    for (int cls = 0; cls < nd.chi && res.good; ++cls) {
      for (size_t cid = 0; cid < nd.clusters.size() && res.good; ++cid) {
        if (nd.cluster_class[cid] != cls) continue;
        auto scope = detail::make_scope(g, nd.clusters[cid], params.R_prime,
                                        params.R + params.R_prime);
        RandomStream cs = rs.derive("cluster", cid);
        switch (strategy) {
          case CutStrategy::diameter:
            cut_diameter(g, res.coloring, scope, params, cs, state, attempt_ledger);
            break;
          case CutStrategy::random_depth:
            cut_random_depth(g, res.coloring, scope, params, cs, state);
            break;
          case CutStrategy::random_outedge:
            cut_random_outedge(g, res.coloring, scope, params, cs, state);
            break;
        }
        if (!detail::cut_is_good(g, res.coloring, scope, state)) {
          res.good = false;
          break;
        }
        // color the uncolored non-removed edges incident to N(C)
        auto near = bfs_distances(g, nd.clusters[cid], 1);
        std::vector<EdgeId> todo;
        for (EdgeId e = 0; e < g.m(); ++e) {
          if (state.is_removed[e] || res.coloring.colored(e)) continue;
          if (near[g.edges[e].first] >= 0 || near[g.edges[e].second] >= 0) todo.push_back(e);
        }
        res.coloring =
            color_edge_set(g, res.coloring, palettes, todo, attempt_ledger, params.eps);
      }
      attempt_ledger.charge("fd_class", 2LL * (params.R + params.R_prime), 1);
    }
    res.leftover = state.removed;
    if (res.good) {
      ledger.merge(attempt_ledger);
      return res;
    }
    best = res;
    if (attempt + 1 >= max_retries) {
      ledger.merge(attempt_ledger);
      return best;
    }
  }
}

// ---------------------------------------------------------------------------
// Plain-FD combiner: main phase with eps/10, greedy-LFD cleanup of the
// leftover with fresh colors.

inline PartialColoring combine_fd(const MultiGraph& g, double eps, RandomStream stream,
                                  RoundLedger& ledger, int a_bound = -1,
                                  CutStrategy strategy = CutStrategy::random_depth) {
  if (a_bound < 0) a_bound = default_a_bound(g);
  if (eps * a_bound < 3)
    throw Error("precondition-not-met", "combine_fd: eps*a >= 3 required");
  if (g.m() == 0) return PartialColoring(0);
  auto params = AlgorithmParams::make(g, eps / 10, strategy, a_bound);
  params.c_pre = 0;  // goodness is verified directly, not assumed w.h.p.
  int main_colors = static_cast<int>(std::ceil((1 + eps / 10) * a_bound));
  auto palettes = PaletteSet::full(g.m(), main_colors);
  auto res = forest_decomposition_main(g, palettes, params, strategy, stream.derive("main"),
                                       ledger);
  if (!res.good) throw Error("not-good", "combine_fd: all main-phase attempts were bad");
  PartialColoring out = res.coloring;
  if (!res.leftover.empty()) {
    std::vector<std::pair<Vertex, Vertex>> es;
    for (EdgeId e : res.leftover) es.push_back(g.edges[e]);
    MultiGraph sub(g.n, std::move(es));
    int asl = pseudo_arboricity(sub).first.value;
    int tl = std::max(1, static_cast<int>(2.01 * asl));
    std::vector<Color> fresh(tl);
    for (int i = 0; i < tl; ++i) fresh[i] = main_colors + i;
    PaletteSet lp(sub.m(), fresh);
    for (auto& q : lp.q) q = fresh;
    auto lpc = greedy_lfd(sub, 0.01, lp, ledger, asl);
    for (size_t i = 0; i < res.leftover.size(); ++i)
      out.color_of[res.leftover[i]] = lpc.color_of[static_cast<EdgeId>(i)];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Vertex-color splitting.

struct VertexColorSplit {
  std::vector<Color> universe;
  std::vector<std::vector<char>> side;  // [vertex][universe index]
  int retries = 0;

  int color_index(Color c) const {
    auto it = std::lower_bound(universe.begin(), universe.end(), c);
    return it != universe.end() && *it == c ? static_cast<int>(it - universe.begin()) : -1;
  }
  bool side_of(Vertex v, Color c) const {
    int i = color_index(c);
    return i >= 0 && side[v][i];
  }

  // Q_i(uv) = Q(uv) restricted to colors both endpoints place on side i
  PaletteSet project(const MultiGraph& g, const PaletteSet& palettes, int which) const {
    PaletteSet out(g.m(), universe);
    for (EdgeId e = 0; e < g.m(); ++e) {
      auto [u, v] = g.edges[e];
      for (Color c : palettes.q[e])
        if ((side_of(u, c) ? 1 : 0) == which && (side_of(v, c) ? 1 : 0) == which)
          out.q[e].push_back(c);
    }
    return out;
  }

  nlohmann::json to_json() const {
    nlohmann::json sides = nlohmann::json::array();
    for (const auto& row : side) {
      std::vector<int> bits(row.begin(), row.end());
      sides.push_back(bits);
    }
    return {{"universe", universe}, {"side", sides}, {"retries", retries}};
  }
};

enum class SplitMode { stochastic, independent };

inline VertexColorSplit vertex_color_split(const MultiGraph& g, const PaletteSet& palettes,
                                           double eps, SplitMode mode, RandomStream stream,
                                           RoundLedger& ledger) {
  if (eps <= 0) throw Error("bad-eps", "vertex_color_split: eps > 0 required");
  VertexColorSplit split;
  split.universe = palettes.universe;
  const int U = static_cast<int>(split.universe.size());
  int min_q = g.m() ? static_cast<int>(palettes.q[0].size()) : 0;
  for (EdgeId e = 0; e < g.m(); ++e)
    min_q = std::min(min_q, static_cast<int>(palettes.q[e].size()));
  const double a_impl = min_q / (1 + eps);
  const double q0_min = (1 + eps / 2) * a_impl;
  const double q1_min =
      mode == SplitMode::stochastic ? eps * a_impl / 20 : eps * eps * a_impl / 200;

  auto edge_ok = [&](EdgeId e) {
    auto [u, v] = g.edges[e];
    int c0 = 0, c1 = 0;
    for (Color c : palettes.q[e]) {
      bool su = split.side_of(u, c), sv = split.side_of(v, c);
      if (!su && !sv) ++c0;
      if (su && sv) ++c1;
    }
    return c0 >= q0_min && c1 >= q1_min;
  };

  const int l2 = std::max(1, ceil_log2(g.n));
  if (mode == SplitMode::stochastic) {
    for (int attempt = 0; attempt < 20; ++attempt) {
      RandomStream rs = stream.derive("stoch", attempt);
      split.side.assign(g.n, std::vector<char>(U, 0));
      for (int ci = 0; ci < U; ++ci) {
        RoundLedger scratch;
        auto sd = stochastic_decomposition(g, std::min(0.5, eps / 10), rs.derive("sd", ci),
                                           scratch);
        int comps = g.n ? 1 + *std::max_element(sd.component_of.begin(), sd.component_of.end())
                        : 0;
        std::vector<char> bit(comps);
        RandomStream cs = rs.derive("side", ci);
        for (int k = 0; k < comps; ++k) bit[k] = cs.derive("comp", k).bernoulli(eps / 10);
        for (Vertex v = 0; v < g.n; ++v) split.side[v][ci] = bit[sd.component_of[v]];
      }
      bool ok = true;
      for (EdgeId e = 0; e < g.m() && ok; ++e) ok = edge_ok(e);
      split.retries = attempt;
      if (ok) {
        ledger.charge("vertex_color_split",
                      static_cast<long long>(std::ceil(80.0 * l2 / eps)), attempt + 1);
        return split;
      }
    }
  } else {
    RandomStream rs = stream.derive("indep");
    split.side.assign(g.n, std::vector<char>(U, 0));
    std::vector<int> draw_count(g.n, 0);
    auto redraw = [&](Vertex v) {
      RandomStream vs = rs.derive("v", v).derive("draw", draw_count[v]++);
      for (int ci = 0; ci < U; ++ci) split.side[v][ci] = vs.derive("c", ci).bernoulli(eps / 10);
    };
    for (Vertex v = 0; v < g.n; ++v) redraw(v);
    const int budget = 4 * l2 + 20;
    for (int round = 0; round < budget; ++round) {
      std::vector<EdgeId> bad;
      for (EdgeId e = 0; e < g.m(); ++e)
        if (!edge_ok(e)) bad.push_back(e);
      split.retries = round;
      if (bad.empty()) {
        ledger.charge("vertex_color_split", l2, round + 1);
        return split;
      }
      // greedy-by-id independent set of bad events, resample their variables
      std::vector<char> used(g.n, 0);
      for (EdgeId e : bad) {
        auto [u, v] = g.edges[e];
        if (used[u] || used[v]) continue;
        used[u] = used[v] = 1;
        redraw(u);
        redraw(v);
      }
    }
  }
  throw Error("guarantee-violated-after-retries",
              "vertex_color_split: per-edge palette guarantees not met");
}

// ---------------------------------------------------------------------------
// LFD combiner: split palettes, color on Q0, decolor the diameter-reduction
// remainder, finish E' u E'' on Q1 with the star-forest list coloring.

inline PartialColoring combine_lfd(const MultiGraph& g, const PaletteSet& palettes, double eps,
                                   SplitMode mode, RandomStream stream, RoundLedger& ledger,
                                   int a_bound = -1) {
  if (g.m() == 0) return PartialColoring(0);
  if (a_bound < 0) a_bound = default_a_bound(g);
  auto split = vertex_color_split(g, palettes, eps, mode, stream.derive("split"), ledger);
  auto q0 = split.project(g, palettes, 0);
  auto q1 = split.project(g, palettes, 1);

  double eps_main = std::max(1e-4, mode == SplitMode::stochastic ? eps / 1000 : eps * eps / 1000);
  auto params = AlgorithmParams::make(g, eps_main, CutStrategy::random_depth, a_bound);
  params.c_pre = 0;
  auto res = forest_decomposition_main(g, q0, params, CutStrategy::random_depth,
                                       stream.derive("main"), ledger);
  if (!res.good) throw Error("not-good", "combine_lfd: all main-phase attempts were bad");

  auto red = reduce_forest_diameter(g, res.coloring, std::min(1.0, eps), stream.derive("rfd"),
                                    ledger, a_bound);
  PartialColoring out = red.coloring0;  // E'' decolored, not recolored

  std::vector<EdgeId> rest = res.leftover;
  rest.insert(rest.end(), red.e1_edges.begin(), red.e1_edges.end());
  std::sort(rest.begin(), rest.end());
  rest.erase(std::unique(rest.begin(), rest.end()), rest.end());
  if (!rest.empty()) {
    std::vector<std::pair<Vertex, Vertex>> es;
    for (EdgeId e : rest) es.push_back(g.edges[e]);
    MultiGraph sub(g.n, std::move(es));
    PaletteSet sub_q(sub.m(), q1.universe);
    for (size_t i = 0; i < rest.size(); ++i) sub_q.q[i] = q1.q[rest[i]];
    auto phi1 = lsfd_4eps(sub, 0.0, sub_q, ledger);
    for (size_t i = 0; i < rest.size(); ++i)
      out.color_of[rest[i]] = phi1.color_of[static_cast<EdgeId>(i)];
  }
  auto rep = check_forest_decomposition(g, out, &palettes);
  if (!rep.ok) throw Error("merge-invalid", "combine_lfd: " + rep.violations[0]);
  return out;
}

}  // namespace arbor
