#pragma once
// Exact combinatorial oracles: Nash-Williams arboricity (subset enumeration),
// pseudo-arboricity (binary search over a unit-capacity flow), degeneracy
// (min-degree peeling). These are the ground truth the algorithm tests compare
// against.

#include <algorithm>
#include <limits>
#include <vector>

#include "multigraph.hpp"

namespace arbor {

struct DensityCertificate {
  int value = 0;
  std::vector<Vertex> witness_vertices;
};

inline constexpr int kExactArboricityLimit = 18;

// max over vertex subsets H, |H| >= 2, of ceil(|E(H)| / (|H|-1))
inline DensityCertificate nash_williams_arboricity(const MultiGraph& g,
                                                   int vertex_limit = kExactArboricityLimit) {
  if (g.n > vertex_limit)
    throw Error("graph-too-large",
                "nash_williams_arboricity: n=" + std::to_string(g.n) + " exceeds limit " +
                    std::to_string(vertex_limit));
  DensityCertificate cert;
  if (g.n < 2 || g.m() == 0) return cert;

  const int n = g.n;
  const int half = (n + 1) / 2;
  const int lo_bits = half, hi_bits = n - half;
  // per-vertex multiplicity sums over half-masks, so edge counts per subset are O(1)
  std::vector<std::vector<int>> cnt(n, std::vector<int>(n, 0));
  for (auto [u, v] : g.edges) {
    cnt[u][v]++;
    cnt[v][u]++;
  }
  std::vector<std::vector<int>> lo_tbl(n, std::vector<int>(1 << lo_bits, 0));
  std::vector<std::vector<int>> hi_tbl(n, std::vector<int>(1 << hi_bits, 0));
  for (int v = 0; v < n; ++v) {
    for (int mask = 1; mask < (1 << lo_bits); ++mask) {
      int b = mask & -mask;
      lo_tbl[v][mask] = lo_tbl[v][mask ^ b] + cnt[v][__builtin_ctz(b)];
    }
    for (int mask = 1; mask < (1 << hi_bits); ++mask) {
      int b = mask & -mask;
      hi_tbl[v][mask] = hi_tbl[v][mask ^ b] + cnt[v][half + __builtin_ctz(b)];
    }
  }
  auto edges_from = [&](int v, unsigned s) {
    return lo_tbl[v][s & ((1u << lo_bits) - 1)] + hi_tbl[v][s >> lo_bits];
  };

  std::vector<int> edge_count(1u << n, 0);
  unsigned best_mask = 0;
  for (unsigned s = 1; s < (1u << n); ++s) {
    int v = __builtin_ctz(s & -s);
    edge_count[s] = edge_count[s & (s - 1)] + edges_from(v, s & (s - 1));
    int sz = __builtin_popcount(s);
    if (sz < 2 || edge_count[s] == 0) continue;
    int val = (edge_count[s] + sz - 2) / (sz - 1);
    if (val > cert.value) {
      cert.value = val;
      best_mask = s;
    }
  }
  for (int v = 0; v < n; ++v)
    if (best_mask >> v & 1) cert.witness_vertices.push_back(v);
  return cert;
}

namespace detail {

// Dinic max-flow, enough for the orientation feasibility network
struct Dinic {
  struct Arc {
    int to;
    int cap;
  };
  std::vector<Arc> arcs;
  std::vector<std::vector<int>> head;
  std::vector<int> level, it;

  explicit Dinic(int n) : head(n), level(n), it(n) {}

  int add(int u, int v, int cap) {
    int id = static_cast<int>(arcs.size());
    arcs.push_back({v, cap});
    arcs.push_back({u, 0});
    head[u].push_back(id);
    head[v].push_back(id + 1);
    return id;
  }

  bool bfs(int s, int t) {
    std::fill(level.begin(), level.end(), -1);
    std::queue<int> q;
    level[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int id : head[v])
        if (arcs[id].cap > 0 && level[arcs[id].to] < 0) {
          level[arcs[id].to] = level[v] + 1;
          q.push(arcs[id].to);
        }
    }
    return level[t] >= 0;
  }

  int dfs(int v, int t, int f) {
    if (v == t) return f;
    for (int& i = it[v]; i < static_cast<int>(head[v].size()); ++i) {
      int id = head[v][i];
      if (arcs[id].cap > 0 && level[arcs[id].to] == level[v] + 1) {
        int d = dfs(arcs[id].to, t, std::min(f, arcs[id].cap));
        if (d > 0) {
          arcs[id].cap -= d;
          arcs[id ^ 1].cap += d;
          return d;
        }
      }
    }
    return 0;
  }

  long long max_flow(int s, int t) {
    long long flow = 0;
    while (bfs(s, t)) {
      std::fill(it.begin(), it.end(), 0);
      int f;
      while ((f = dfs(s, t, std::numeric_limits<int>::max())) > 0) flow += f;
    }
    return flow;
  }

  std::vector<char> source_side(int s) {
    std::vector<char> in(head.size(), 0);
    std::queue<int> q;
    in[s] = 1;
    q.push(s);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int id : head[v])
        if (arcs[id].cap > 0 && !in[arcs[id].to]) {
          in[arcs[id].to] = 1;
          q.push(arcs[id].to);
        }
    }
    return in;
  }
};

// network: source -> each edge (cap 1) -> its endpoints (cap 1) -> sink (cap k)
struct OrientFlow {
  const MultiGraph& g;
  Dinic net;
  int S, T;
  std::vector<int> to_endpoint_arc_u, to_endpoint_arc_v, sink_arc;

  OrientFlow(const MultiGraph& g_, int k)
      : g(g_), net(g_.m() + g_.n + 2), S(g_.m() + g_.n), T(g_.m() + g_.n + 1) {
    to_endpoint_arc_u.resize(g.m());
    to_endpoint_arc_v.resize(g.m());
    for (EdgeId e = 0; e < g.m(); ++e) {
      net.add(S, e, 1);
      auto [u, v] = g.edges[e];
      to_endpoint_arc_u[e] = net.add(e, g.m() + u, 1);
      to_endpoint_arc_v[e] = u == v ? -1 : net.add(e, g.m() + v, 1);
    }
    for (Vertex v = 0; v < g.n; ++v) sink_arc.push_back(net.add(g.m() + v, T, k));
  }

  bool feasible() { return net.max_flow(S, T) == g.m(); }
};

}  // namespace detail

// minimum k admitting a k-orientation; Hakimi witness from the dual cut
inline std::pair<DensityCertificate, Orientation> pseudo_arboricity(const MultiGraph& g) {
  DensityCertificate cert;
  Orientation psi(g.m());
  if (g.m() == 0) return {cert, psi};

  int lo = std::max(1, static_cast<int>((g.m() + g.n - 1) / g.n));
  int hi = g.max_degree();
  while (lo < hi) {
    int mid = lo + (hi - lo) / 2;
    detail::OrientFlow f(g, mid);
    if (f.feasible())
      hi = mid;
    else
      lo = mid + 1;
  }
  cert.value = lo;

  {  // orientation attaining the value: edge assigned to the endpoint it flows into
    detail::OrientFlow f(g, cert.value);
    f.feasible();
    for (EdgeId e = 0; e < g.m(); ++e) {
      // flow on the e->u arc means u pays for e, i.e. e is oriented out of u
      bool u_pays = f.net.arcs[f.to_endpoint_arc_u[e]].cap == 0;
      psi.toward_v[e] = u_pays;  // tail u => points toward v
    }
  }

  {  // witness: reachable vertex side of the min cut at k = value-1
    detail::OrientFlow f(g, cert.value - 1);
    if (f.feasible())
      throw Error("oracle-bug", "pseudo_arboricity: value-1 unexpectedly feasible");
    auto side = f.net.source_side(f.S);
    for (Vertex v = 0; v < g.n; ++v)
      if (side[g.m() + v]) cert.witness_vertices.push_back(v);
  }
  return {cert, psi};
}

// re-evaluate the defining formulas on a witness set (invariant checks)
inline int density_on_subset(const MultiGraph& g, const std::vector<Vertex>& verts,
                             bool nash_williams) {
  std::vector<char> in(g.n, 0);
  for (Vertex v : verts) in[v] = 1;
  long long e_in = 0;
  for (auto [u, v] : g.edges) e_in += in[u] && in[v];
  long long denom = nash_williams ? static_cast<long long>(verts.size()) - 1
                                  : static_cast<long long>(verts.size());
  if (denom <= 0 || e_in == 0) return 0;
  return static_cast<int>((e_in + denom - 1) / denom);
}

// min-degree peeling; orienting toward later-removed neighbors is acyclic.
// Lazy-deletion heap keyed by (degree, vertex) so ties break by index.
inline std::pair<int, std::vector<Vertex>> degeneracy(const MultiGraph& g) {
  std::vector<int> deg(g.n);
  std::priority_queue<std::pair<int, Vertex>, std::vector<std::pair<int, Vertex>>,
                      std::greater<>>
      heap;
  for (Vertex v = 0; v < g.n; ++v) {
    deg[v] = g.degree(v);
    heap.push({deg[v], v});
  }
  std::vector<char> removed(g.n, 0);
  std::vector<Vertex> order;
  int value = 0;
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (removed[v] || d != deg[v]) continue;
    removed[v] = 1;
    order.push_back(v);
    value = std::max(value, d);
    for (EdgeId e : g.adj[v]) {
      Vertex w = g.other(e, v);
      if (!removed[w]) {
        deg[w]--;
        heap.push({deg[w], w});
      }
    }
  }
  return {value, order};
}

// orientation induced by an elimination order: each edge out of the vertex
// removed first (acyclic, outdegree <= degeneracy)
inline Orientation orientation_from_elimination(const MultiGraph& g,
                                                const std::vector<Vertex>& order) {
  std::vector<int> pos(g.n);
  for (size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
  Orientation psi(g.m());
  for (EdgeId e = 0; e < g.m(); ++e) {
    auto [u, v] = g.edges[e];
    psi.toward_v[e] = pos[u] < pos[v];  // tail = earlier-removed endpoint
  }
  return psi;
}

}  // namespace arbor
