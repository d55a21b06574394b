#pragma once
// Building blocks: H-partition, acyclic t-orientation, 3t star-forest
// decomposition, greedy list-forest decomposition, degeneracy 2d-LSFD, the
// (4+eps)a* LSFD, forest diameter reduction, depth-z shortening, and the
// pseudo-tree two-star-forest split.

#include <algorithm>
#include <cmath>
#include <vector>

#include "coloring.hpp"
#include "multigraph.hpp"
#include "netdecomp.hpp"
#include "oracles.hpp"
#include "runtime.hpp"
#include "verify.hpp"

namespace arbor {

inline constexpr int kCLen = 8;    // path-kill threshold constant, frozen
inline constexpr int kCDiam = 32;  // diameter bound constant, frozen

inline int default_a_star_bound(const MultiGraph& g) { return pseudo_arboricity(g).first.value; }

// exact arboricity when the oracle applies, else the 2a* upper bound
inline int default_a_bound(const MultiGraph& g) {
  if (g.n <= kExactArboricityLimit) return nash_williams_arboricity(g).value;
  return 2 * default_a_star_bound(g);
}

struct HPartition {
  std::vector<int> class_of;  // 0-based class index
  int k = 0;
  int t = 0;
};

// peel vertices of remaining degree <= t, t = floor((2+eps) a*)
inline HPartition h_partition(const MultiGraph& g, double eps, RoundLedger& ledger,
                              int a_star_bound = -1) {
  if (eps <= 0) throw Error("bad-eps", "h_partition: eps > 0 required");
  if (a_star_bound < 0) a_star_bound = default_a_star_bound(g);
  HPartition hp;
  hp.t = static_cast<int>((2.0 + eps) * a_star_bound);
  hp.class_of.assign(g.n, -1);
  std::vector<int> deg(g.n);
  for (Vertex v = 0; v < g.n; ++v) deg[v] = g.degree(v);
  int left = g.n;
  for (int cls = 0; left > 0; ++cls) {
    std::vector<Vertex> removed;
    for (Vertex v = 0; v < g.n; ++v)
      if (hp.class_of[v] < 0 && deg[v] <= hp.t) removed.push_back(v);
    if (removed.empty())
      throw Error("peel-stuck", "h_partition: no vertex of degree <= t (bad a* bound?)");
    for (Vertex v : removed) hp.class_of[v] = cls;
    for (Vertex v : removed)
      for (EdgeId e : g.adj[v]) {
        Vertex w = g.other(e, v);
        if (hp.class_of[w] < 0) deg[w]--;
      }
    left -= static_cast<int>(removed.size());
    hp.k = cls + 1;
  }
  ledger.charge("h_partition", 1, std::max(1, hp.k));
  return hp;
}

// lower class -> higher class, ties toward the higher vertex index
inline Orientation orientation_from_h_partition(const MultiGraph& g, const HPartition& hp) {
  Orientation psi(g.m());
  for (EdgeId e = 0; e < g.m(); ++e) {
    auto [u, v] = g.edges[e];
    auto key = [&](Vertex x) { return std::pair<int, int>(hp.class_of[x], x); };
    psi.toward_v[e] = key(u) < key(v);  // tail = smaller (class, id)
  }
  return psi;
}

inline Orientation acyclic_orientation(const MultiGraph& g, double eps, RoundLedger& ledger,
                                       int a_star_bound = -1) {
  return orientation_from_h_partition(g, h_partition(g, eps, ledger, a_star_bound));
}

// ---------------------------------------------------------------------------
// Cole-Vishkin style 3-coloring of a rooted forest given parent pointers.

inline std::vector<int> forest_three_coloring(const std::vector<int>& parent, int* iters = nullptr) {
  int n = static_cast<int>(parent.size());
  std::vector<int> col(n);
  for (int v = 0; v < n; ++v) col[v] = v;
  int rounds = 0;
  auto maxcol = [&] { return n ? *std::max_element(col.begin(), col.end()) : 0; };
  while (maxcol() >= 6) {
    std::vector<int> next(n);
    for (int v = 0; v < n; ++v) {
      int pc = parent[v] < 0 ? (col[v] ^ 1) : col[parent[v]];
      int diff = col[v] ^ pc;
      int k = __builtin_ctz(diff);
      next[v] = 2 * k + ((col[v] >> k) & 1);
    }
    col.swap(next);
    if (++rounds > 64) throw Error("cv-stuck", "forest_three_coloring: no convergence");
  }
  for (int drop = 5; drop >= 3; --drop) {
    // shift down: children adopt the parent's color, roots move off their own
    std::vector<int> shifted(n);
    for (int v = 0; v < n; ++v) {
      if (parent[v] >= 0) {
        shifted[v] = col[parent[v]];
      } else {
        shifted[v] = 0;
        while (shifted[v] == col[v]) shifted[v]++;
      }
    }
    // now all children of v share color col[v]; recolor the 'drop' class
    std::vector<int> out = shifted;
    for (int v = 0; v < n; ++v) {
      if (shifted[v] != drop) continue;
      int avoid1 = parent[v] >= 0 ? shifted[parent[v]] : -1;
      int avoid2 = col[v];  // the common color of v's children after the shift
      int c = 0;
      while (c == avoid1 || c == avoid2) ++c;
      out[v] = c;
    }
    col.swap(out);
    ++rounds;
  }
  if (iters) *iters = rounds;
  return col;
}

// ---------------------------------------------------------------------------
// 3t star-forest decomposition: label out-edges into t forests, 3-color each
// forest's vertices, edge color = (forest label, parent endpoint color).

inline PartialColoring star_forest_3t(const MultiGraph& g, double eps, RoundLedger& ledger,
                                      int a_star_bound = -1, int* t_out = nullptr) {
  auto hp = h_partition(g, eps, ledger, a_star_bound);
  Orientation psi = orientation_from_h_partition(g, hp);
  auto outs = psi.out_edges(g);
  int t = 0;
  for (Vertex v = 0; v < g.n; ++v) t = std::max(t, static_cast<int>(outs[v].size()));
  if (t_out) *t_out = t;
  PartialColoring pc(g.m());
  int cv_rounds = 0;
  for (int f = 0; f < t; ++f) {
    std::vector<int> parent(g.n, -1);
    for (Vertex v = 0; v < g.n; ++v)
      if (f < static_cast<int>(outs[v].size())) parent[v] = psi.head(g, outs[v][f]);
    int it = 0;
    auto col = forest_three_coloring(parent, &it);
    cv_rounds = std::max(cv_rounds, it);
    for (Vertex v = 0; v < g.n; ++v)
      if (parent[v] >= 0) pc.color_of[outs[v][f]] = 3 * f + col[parent[v]];
  }
  ledger.charge("star_forest_3t_coloring", 1, std::max(1, cv_rounds));
  return pc;
}

// ---------------------------------------------------------------------------
// greedy t-LFD over each vertex's out-edges

inline PartialColoring greedy_lfd(const MultiGraph& g, double eps, const PaletteSet& palettes,
                                  RoundLedger& ledger, int a_star_bound = -1) {
  Orientation psi = acyclic_orientation(g, eps, ledger, a_star_bound);
  auto outs = psi.out_edges(g);
  PartialColoring pc(g.m());
  for (Vertex v = 0; v < g.n; ++v) {
    std::vector<Color> used;
    for (EdgeId e : outs[v]) {
      Color pick = kUncolored;
      for (Color c : palettes.q[e])
        if (std::find(used.begin(), used.end(), c) == used.end()) {
          pick = c;
          break;
        }
      if (pick == kUncolored)
        throw Error("palette-too-small", "greedy_lfd: edge " + std::to_string(e));
      pc.color_of[e] = pick;
      used.push_back(pick);
    }
  }
  ledger.charge("greedy_lfd", 1, 1);
  return pc;
}

// ---------------------------------------------------------------------------
// 2d-LSFD via the degeneracy order: each edge avoids the colors of the
// out-edges at both endpoints; processing tails in reverse elimination order
// makes the avoidance mutual.

namespace detail {
inline PartialColoring lsfd_by_order(const MultiGraph& g, const Orientation& psi,
                                     const std::vector<int>& tail_rank,
                                     const PaletteSet& palettes, const char* who) {
  std::vector<EdgeId> order(g.m());
  for (EdgeId e = 0; e < g.m(); ++e) order[e] = e;
  std::sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) {
    int ra = tail_rank[psi.tail(g, a)], rb = tail_rank[psi.tail(g, b)];
    return ra != rb ? ra > rb : a < b;
  });
  auto outs = psi.out_edges(g);
  PartialColoring pc(g.m());
  for (EdgeId e : order) {
    Vertex u = psi.tail(g, e), v = psi.head(g, e);
    std::vector<Color> avoid;
    for (EdgeId f : outs[u])
      if (f != e && pc.colored(f)) avoid.push_back(pc.color_of[f]);
    for (EdgeId f : outs[v])
      if (pc.colored(f)) avoid.push_back(pc.color_of[f]);
    Color pick = kUncolored;
    for (Color c : palettes.q[e])
      if (std::find(avoid.begin(), avoid.end(), c) == avoid.end()) {
        pick = c;
        break;
      }
    if (pick == kUncolored)
      throw Error("palette-too-small", std::string(who) + ": edge " + std::to_string(e));
    pc.color_of[e] = pick;
  }
  return pc;
}
}  // namespace detail

inline PartialColoring degeneracy_lsfd(const MultiGraph& g, const PaletteSet& palettes,
                                       RoundLedger& ledger) {
  auto [d, order] = degeneracy(g);
  Orientation psi = orientation_from_elimination(g, order);
  std::vector<int> rank(g.n);
  for (size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<int>(i);
  auto pc = detail::lsfd_by_order(g, psi, rank, palettes, "degeneracy_lsfd");
  ledger.charge("degeneracy_lsfd", 1, std::max(1, g.n));
  return pc;
}

// (4+eps)a*-LSFD: t-orientation from the H-partition with eps/10, then the
// same mutual-avoidance coloring processed class-by-class from the top; the
// simulated greedy is charged one network-decomposition pass per class.
inline PartialColoring lsfd_4eps(const MultiGraph& g, double eps, const PaletteSet& palettes,
                                 RoundLedger& ledger, int a_star_bound = -1) {
  if (eps < 0) throw Error("bad-eps", "lsfd_4eps: eps >= 0");
  // eps = 0 is allowed: floor((2+delta)a*) = 2a* for tiny delta, and 4a*
  // palettes still leave unit slack for the mutual-avoidance greedy
  auto hp = h_partition(g, eps > 0 ? eps / 10 : 1e-9, ledger, a_star_bound);
  Orientation psi = orientation_from_h_partition(g, hp);
  // strict (class, id) rank so every head's out-edges are colored before the
  // edges pointing into it, mirroring the orientation's tie-break
  std::vector<Vertex> by_key(g.n);
  for (Vertex v = 0; v < g.n; ++v) by_key[v] = v;
  std::sort(by_key.begin(), by_key.end(), [&](Vertex a, Vertex b) {
    return std::pair(hp.class_of[a], a) < std::pair(hp.class_of[b], b);
  });
  std::vector<int> rank(g.n);
  for (int i = 0; i < g.n; ++i) rank[by_key[i]] = i;
  auto pc = detail::lsfd_by_order(g, psi, rank, palettes, "lsfd_4eps");
  int log2n = std::max(1, ceil_log2(g.n));
  ledger.charge("lsfd_4eps_classes", log2n * log2n, std::max(1, hp.k));
  return pc;
}

// ---------------------------------------------------------------------------
// Forest diameter reduction.

struct DiameterReduction {
  PartialColoring coloring0;  // surviving original colors (E0)
  PartialColoring coloring1;  // fresh colors on E1 = E1' u E1''
  std::vector<EdgeId> e1_edges;
  int e1_colors = 0;
  int threshold = 0;
};

namespace detail {
// per-color longest directed path start lengths on an acyclic orientation
inline std::vector<int> longest_directed_from(const MultiGraph& g, const Orientation& psi,
                                              const std::vector<EdgeId>& class_edges,
                                              const std::vector<Vertex>& topo) {
  std::vector<std::vector<EdgeId>> out(g.n);
  for (EdgeId e : class_edges) out[psi.tail(g, e)].push_back(e);
  std::vector<int> longest(g.n, 0);
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    Vertex v = *it;
    for (EdgeId e : out[v]) longest[v] = std::max(longest[v], 1 + longest[psi.head(g, e)]);
  }
  return longest;
}

inline std::vector<Vertex> topological_order(const MultiGraph& g, const Orientation& psi) {
  std::vector<int> indeg(g.n, 0);
  for (EdgeId e = 0; e < g.m(); ++e) indeg[psi.head(g, e)]++;
  auto outs = psi.out_edges(g);
  std::vector<Vertex> topo;
  for (Vertex v = 0; v < g.n; ++v)
    if (indeg[v] == 0) topo.push_back(v);
  for (size_t i = 0; i < topo.size(); ++i)
    for (EdgeId e : outs[topo[i]])
      if (--indeg[psi.head(g, e)] == 0) topo.push_back(psi.head(g, e));
  if (static_cast<int>(topo.size()) != g.n)
    throw Error("not-acyclic", "topological_order: directed cycle");
  return topo;
}
}  // namespace detail

inline DiameterReduction reduce_forest_diameter(const MultiGraph& g, const PartialColoring& input,
                                                double eps, RandomStream stream,
                                                RoundLedger& ledger, int a_bound = -1) {
  if (eps <= 0 || eps > 1) throw Error("bad-eps", "reduce_forest_diameter: eps in (0,1]");
  if (a_bound < 0) a_bound = default_a_bound(g);
  DiameterReduction out;
  out.coloring0 = input;
  out.coloring1 = PartialColoring(g.m());
  const int log2n = std::max(1, ceil_log2(g.n));
  out.threshold = static_cast<int>(std::ceil(kCLen * log2n / eps));

  // acyclic 3a-orientation
  Orientation psi = acyclic_orientation(g, 1.0, ledger);
  auto outs = psi.out_edges(g);
  auto topo = detail::topological_order(g, psi);

  const int kprime = std::max(1, static_cast<int>(std::ceil(eps * a_bound / 20)));
  RandomStream rs = stream.derive("rfd");

  // stage 1: coin-flip vertices move k' random colored out-edges into E1'
  std::vector<int> e1prime_color(g.m(), -1);
  for (Vertex v = 0; v < g.n; ++v) {
    RandomStream vs = rs.derive("x", v);
    if (!vs.bernoulli(0.5)) continue;
    std::vector<EdgeId> cands;
    for (EdgeId e : outs[v])
      if (input.colored(e)) cands.push_back(e);
    vs.shuffle(cands);
    for (int j = 0; j < kprime && j < static_cast<int>(cands.size()); ++j) {
      e1prime_color[cands[j]] = j;
      out.coloring0.color_of[cands[j]] = kUncolored;
    }
  }
  ledger.charge("rfd_sample", 1, 1);

  // stage 2: kill residual long monochromatic directed paths
  std::vector<char> killed(g.m(), 0);
  auto kill_class = [&](const std::vector<EdgeId>& class_edges) {
    auto longest = detail::longest_directed_from(g, psi, class_edges, topo);
    std::vector<char> bad(g.n, 0);
    for (Vertex v = 0; v < g.n; ++v)
      if (longest[v] >= out.threshold) bad[v] = 1;
    for (EdgeId e : class_edges)
      if (bad[g.edges[e].first] || bad[g.edges[e].second]) killed[e] = 1;
  };
  {
    auto by = edges_by_color(out.coloring0);
    for (auto& cls : by)
      if (!cls.empty()) kill_class(cls);
    std::vector<std::vector<EdgeId>> by1(kprime);
    for (EdgeId e = 0; e < g.m(); ++e)
      if (e1prime_color[e] >= 0) by1[e1prime_color[e]].push_back(e);
    for (auto& cls : by1)
      if (!cls.empty()) kill_class(cls);
  }
  ledger.charge("rfd_kill", out.threshold, 1);

  std::vector<EdgeId> e1pp;
  for (EdgeId e = 0; e < g.m(); ++e)
    if (killed[e]) {
      e1pp.push_back(e);
      if (e1prime_color[e] >= 0)
        e1prime_color[e] = -1;
      else
        out.coloring0.color_of[e] = kUncolored;
    }

  // E1' keeps colors 0..k'-1; E1'' gets fresh star colors above them
  for (EdgeId e = 0; e < g.m(); ++e)
    if (e1prime_color[e] >= 0) {
      out.coloring1.color_of[e] = e1prime_color[e];
      out.e1_edges.push_back(e);
    }
  if (!e1pp.empty()) {
    std::vector<std::pair<Vertex, Vertex>> es;
    for (EdgeId e : e1pp) es.push_back(g.edges[e]);
    MultiGraph sub(g.n, std::move(es));
    int t2 = 0;
    auto stars = star_forest_3t(sub, 0.1, ledger, -1, &t2);
    for (size_t i = 0; i < e1pp.size(); ++i) {
      out.coloring1.color_of[e1pp[i]] = kprime + stars.color_of[static_cast<EdgeId>(i)];
      out.e1_edges.push_back(e1pp[i]);
    }
    (void)t2;
  }
  std::sort(out.e1_edges.begin(), out.e1_edges.end());
  out.e1_colors = static_cast<int>(out.coloring1.used_colors().size());
  return out;
}

// ---------------------------------------------------------------------------
// Depth-z shortening (per-color window cuts with random offsets).

struct Shortened {
  PartialColoring coloring0;
  std::vector<EdgeId> decolored;  // E'
  int z = 0;
};

inline Shortened shorten_to_inv_eps(const MultiGraph& g, const PartialColoring& input, double rho,
                                    double eps, RandomStream stream, RoundLedger& ledger,
                                    int a_bound = -1, double precondition_c = 1.0) {
  if (eps <= 0 || eps > 1) throw Error("bad-eps", "shorten_to_inv_eps: eps in (0,1]");
  if (a_bound < 0) a_bound = default_a_bound(g);
  const int log2n = std::max(1, ceil_log2(g.n));
  const int log2d = std::max(1, ceil_log2(std::max(2, g.max_degree())));
  double need = precondition_c * std::min(log2n / eps, rho * log2d / (eps * eps));
  if (a_bound < need)
    throw Error("precondition-not-met",
                "shorten_to_inv_eps: a bound " + std::to_string(a_bound) + " below " +
                    std::to_string(need));
  Shortened out;
  out.z = std::max(2, static_cast<int>(std::ceil(40 * rho / eps)));
  const int cap = std::max(1, static_cast<int>(std::ceil(eps * a_bound)));

  auto by = edges_by_color(input);
  RandomStream rs = stream.derive("shorten");
  for (int attempt = 0; attempt < 64; ++attempt) {
    out.coloring0 = input;
    out.decolored.clear();
    std::vector<int> load(g.n, 0);  // deleted parent edges per child vertex
    bool ok = true;
    RandomStream as = rs.derive("attempt", attempt);
    for (Color c = 0; c < static_cast<Color>(by.size()); ++c) {
      if (by[c].empty()) continue;
      // root every tree of the class at its minimum vertex, compute depths
      std::vector<std::vector<std::pair<Vertex, EdgeId>>> adjc(g.n);
      for (EdgeId e : by[c]) {
        auto [u, v] = g.edges[e];
        adjc[u].push_back({v, e});
        adjc[v].push_back({u, e});
      }
      std::vector<int> depth(g.n, -1);
      std::vector<EdgeId> parent_edge(g.n, -1);
      std::vector<Vertex> order;
      for (EdgeId e : by[c])
        for (Vertex s : {g.edges[e].first, g.edges[e].second}) {
          if (depth[s] >= 0) continue;
          // find the component minimum first so roots are deterministic
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
          std::vector<Vertex> q{root};
          for (size_t i = 0; i < q.size(); ++i)
            for (auto [w, f] : adjc[q[i]])
              if (depth[w] < 0) {
                depth[w] = depth[q[i]] + 1;
                parent_edge[w] = f;
                q.push_back(w);
              }
          order.insert(order.end(), q.begin(), q.end());
        }
      // anchors at depth multiples of z carry random offsets in [1, z]; the
      // cut at relative depth J only fires where the window actually extends
      // to depth z (so trees shallower than z lose nothing)
      std::vector<int> anchor_offset(g.n, -1);
      std::vector<Vertex> anchor_of(g.n, -1);  // nearest strict ancestor anchor
      for (Vertex v : order) {
        if (depth[v] % out.z == 0) {
          anchor_offset[v] =
              1 + static_cast<int>(as.derive("J", (static_cast<uint64_t>(c) << 32) | v)
                                       .uniform_int(out.z));
        }
        if (parent_edge[v] >= 0) {
          Vertex p = g.other(parent_edge[v], v);
          anchor_of[v] = depth[p] % out.z == 0 ? p : anchor_of[p];
        }
      }
      std::vector<int> height(g.n, 0);  // deepest descendant below v
      for (auto it = order.rbegin(); it != order.rend(); ++it) {
        Vertex v = *it;
        if (parent_edge[v] < 0) continue;
        Vertex p = g.other(parent_edge[v], v);
        height[p] = std::max(height[p], height[v] + 1);
      }
      for (Vertex v : order) {
        if (parent_edge[v] < 0) continue;
        int rd = depth[v] - depth[anchor_of[v]];  // in [1, z]
        if (rd == anchor_offset[anchor_of[v]] && rd + height[v] >= out.z) {
          out.coloring0.color_of[parent_edge[v]] = kUncolored;
          out.decolored.push_back(parent_edge[v]);
          if (++load[v] > cap) ok = false;
        }
      }
    }
    if (ok) {
      ledger.charge("shorten", out.z, attempt + 1);
      std::sort(out.decolored.begin(), out.decolored.end());
      return out;
    }
  }
  throw Error("resample-budget-exhausted", "shorten_to_inv_eps: load cap violated repeatedly");
}

// ---------------------------------------------------------------------------
// Pseudo-tree -> two star forests.

inline PartialColoring pseudotree_two_star_forests(const MultiGraph& g) {
  if (g.m() > g.n) throw Error("not-a-pseudo-tree", "pseudotree_two_star_forests: |E| > |V|");
  {  // connectivity
    if (g.n > 0) {
      auto d = bfs_distances(g, {0});
      for (Vertex v = 0; v < g.n; ++v)
        if (d[v] < 0) throw Error("not-a-pseudo-tree", "pseudotree_two_star_forests: disconnected");
    }
  }
  PartialColoring pc(g.m());
  if (g.m() == 0) return pc;

  auto color_tree_below = [&](Vertex root, int root_color, const std::vector<char>& blocked) {
    // parity coloring of the hanging tree: child edges of root get root_color
    std::vector<int> depth(g.n, -1);
    depth[root] = 0;
    std::vector<Vertex> q{root};
    for (size_t i = 0; i < q.size(); ++i)
      for (EdgeId e : g.adj[q[i]]) {
        if (blocked[e]) continue;
        Vertex w = g.other(e, q[i]);
        if (depth[w] < 0) {
          depth[w] = depth[q[i]] + 1;
          pc.color_of[e] = (root_color + depth[q[i]]) % 2;
          q.push_back(w);
        }
      }
  };

  if (g.m() == g.n - 1) {  // pure tree
    std::vector<char> blocked(g.m(), 0);
    color_tree_below(0, 1, blocked);  // depth-0 edges get color 1, per the parity rule
    return pc;
  }

  // locate the unique cycle: peel degree-1 vertices
  std::vector<int> deg(g.n);
  std::vector<Vertex> stack;
  for (Vertex v = 0; v < g.n; ++v) {
    deg[v] = g.degree(v);
    if (deg[v] == 1) stack.push_back(v);
  }
  std::vector<char> off(g.n, 0);
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    off[v] = 1;
    for (EdgeId e : g.adj[v]) {
      Vertex w = g.other(e, v);
      if (!off[w] && --deg[w] == 1) stack.push_back(w);
    }
  }
  // walk the cycle
  std::vector<Vertex> cyc;
  std::vector<EdgeId> cyc_edge;  // edge from cyc[i] to cyc[i+1 mod t]
  {
    Vertex start = -1;
    for (Vertex v = 0; v < g.n; ++v)
      if (!off[v]) {
        start = v;
        break;
      }
    Vertex cur = start;
    EdgeId prev_e = -1;
    do {
      cyc.push_back(cur);
      EdgeId next_e = -1;
      for (EdgeId e : g.adj[cur])
        if (!off[g.other(e, cur)] && e != prev_e) {
          next_e = e;
          break;
        }
      cyc_edge.push_back(next_e);
      prev_e = next_e;
      cur = g.other(next_e, cur);
    } while (cur != start);
  }
  const int t = static_cast<int>(cyc.size());

  std::vector<char> on_cycle_edge(g.m(), 0);
  for (EdgeId e : cyc_edge) on_cycle_edge[e] = 1;
  std::vector<char> has_children(t, 0);
  for (int i = 0; i < t; ++i)
    for (EdgeId e : g.adj[cyc[i]])
      if (!on_cycle_edge[e]) has_children[i] = 1;

  std::vector<int> kappa(t, -1);  // color each cycle vertex centers
  std::vector<int> edge_color(t, -1);
  if (t % 2 == 0) {
    for (int i = 0; i < t; ++i) {
      edge_color[i] = i % 2;
      kappa[i] = i % 2;  // x_i served by its own out-edge e_i
    }
  } else {
    int free_idx = -1;
    for (int i = 0; i < t; ++i)
      if (!has_children[i]) free_idx = i;
    if (free_idx < 0)
      throw Error("infeasible",
                  "pseudotree_two_star_forests: odd cycle with subtrees at every cycle vertex "
                  "admits no two-star-forest split");
    // rotate so the childless vertex sits last; double run lands on its successor
    std::vector<Vertex> rc(t);
    std::vector<EdgeId> re(t);
    std::vector<char> rh(t);
    for (int i = 0; i < t; ++i) {
      int j = (free_idx + 1 + i) % t;
      rc[i] = cyc[j];
      re[i] = cyc_edge[j];
      rh[i] = has_children[j];
    }
    cyc.swap(rc);
    cyc_edge.swap(re);
    has_children.swap(rh);
    for (int i = 0; i + 1 < t; ++i) edge_color[i] = i % 2;
    edge_color[t - 1] = 0;  // double run {e_{t-1}, e_0} centered at x_0
    kappa[0] = 0;
    for (int i = 1; i + 1 < t; ++i) kappa[i] = i % 2;
    kappa[t - 1] = -1;  // the childless vertex centers nothing
  }
  for (int i = 0; i < t; ++i) pc.color_of[cyc_edge[i]] = edge_color[i];
  for (int i = 0; i < t; ++i)
    if (has_children[i]) color_tree_below(cyc[i], kappa[i], on_cycle_edge);
  return pc;
}

}  // namespace arbor
