#pragma once
// Network decomposition (ball growing with the doubling rule, power-graph
// aware) and stochastic decomposition (exponential start-time shifts).

#include <cmath>
#include <queue>
#include <tuple>
#include <vector>

#include "multigraph.hpp"
#include "runtime.hpp"

namespace arbor {

struct NetworkDecomposition {
  std::vector<int> class_of;    // per vertex
  std::vector<int> cluster_of;  // per vertex
  int D = 0;
  int chi = 0;
  std::vector<std::vector<Vertex>> clusters;  // by cluster id
  std::vector<int> cluster_class;             // class per cluster id

  nlohmann::json to_json() const {
    return {{"classes", class_of}, {"clusters", cluster_of}, {"D", D}, {"chi", chi}};
  }
};

inline constexpr int kNdDiameterConst = 2;  // c1 = c2 = 2, frozen

namespace detail {
// eligible vertices within base-graph distance <= power_radius of the seed set
inline std::vector<Vertex> power_expand(const MultiGraph& g, const std::vector<Vertex>& seeds,
                                        int power_radius, const std::vector<char>& eligible) {
  auto dist = bfs_distances(g, seeds, power_radius);
  std::vector<Vertex> out;
  for (Vertex v = 0; v < g.n; ++v)
    if (dist[v] > 0 && eligible[v]) out.push_back(v);
  return out;
}
}  // namespace detail

// (O(log n), O(log n)) decomposition of G^power_radius. Ball growing with the
// doubling rule: grow while the next shell more than doubles the ball; the
// final shell is deferred to later classes, so same-class clusters are never
// adjacent in the power graph and the per-class survivor count halves.
inline NetworkDecomposition network_decomposition(const MultiGraph& g, RandomStream stream,
                                                  RoundLedger& ledger, int power_radius = 1) {
  NetworkDecomposition nd;
  nd.class_of.assign(g.n, -1);
  nd.cluster_of.assign(g.n, -1);
  int log2n = std::max(1, ceil_log2(g.n));
  nd.D = kNdDiameterConst * log2n;
  ledger.charge("network_decomposition", static_cast<long long>(power_radius) * log2n,
                log2n);

  std::vector<char> remaining(g.n, 1);
  int left = g.n;
  RandomStream rs = stream.derive("netdecomp");
  for (int cls = 0; left > 0; ++cls) {
    std::vector<char> eligible = remaining;
    std::vector<Vertex> pool;
    for (Vertex v = 0; v < g.n; ++v)
      if (eligible[v]) pool.push_back(v);
    while (!pool.empty()) {
      Vertex center = pool[rs.uniform_int(pool.size())];
      // grow B_0={center} while |B_{k+1}| > 2|B_k|
      std::vector<Vertex> ballv{center};
      std::vector<char> in_ball(g.n, 0);
      in_ball[center] = 1;
      std::vector<Vertex> shell;
      while (true) {
        shell = detail::power_expand(g, ballv, power_radius, eligible);
        std::vector<Vertex> fresh;
        for (Vertex v : shell)
          if (!in_ball[v]) fresh.push_back(v);
        if (ballv.size() + fresh.size() <= 2 * ballv.size()) {
          shell = fresh;
          break;
        }
        for (Vertex v : fresh) {
          in_ball[v] = 1;
          ballv.push_back(v);
        }
      }
      int cid = static_cast<int>(nd.clusters.size());
      nd.clusters.push_back(ballv);
      nd.cluster_class.push_back(cls);
      for (Vertex v : ballv) {
        nd.class_of[v] = cls;
        nd.cluster_of[v] = cid;
        remaining[v] = 0;
        eligible[v] = 0;
        --left;
      }
      for (Vertex v : shell) eligible[v] = 0;  // deferred to later classes
      std::vector<Vertex> next_pool;
      for (Vertex v : pool)
        if (eligible[v]) next_pool.push_back(v);
      pool.swap(next_pool);
    }
    nd.chi = cls + 1;
  }
  if (g.n == 0) nd.chi = 0;
  if (g.n == 1) nd.D = 0;
  return nd;
}

struct StochasticDecomposition {
  std::vector<EdgeId> kept_edges;
  std::vector<int> component_of;
  int D = 0;
  double beta = 0;

  nlohmann::json to_json() const {
    return {{"kept_edges", kept_edges}, {"components", component_of}, {"D", D}, {"beta", beta}};
  }
};

inline constexpr int kStochDiameterConst = 8;  // c3, frozen

// exponential-shift clustering: v joins the center minimizing dist(u,v) - delta_u
inline StochasticDecomposition stochastic_decomposition(const MultiGraph& g, double beta,
                                                        RandomStream stream,
                                                        RoundLedger& ledger) {
  if (!(beta > 0 && beta <= 0.5))
    throw Error("bad-beta", "stochastic_decomposition: beta in (0, 1/2]");
  StochasticDecomposition sd;
  sd.beta = beta;
  int log2n = std::max(1, ceil_log2(g.n));
  sd.D = static_cast<int>(std::ceil(kStochDiameterConst * log2n / beta));
  ledger.charge("stochastic_decomposition", sd.D, 1);

  const double rate = beta / 2;  // slack factor c = 2 on the shift rate
  const double cap = sd.D / 2.0;
  RandomStream rs = stream.derive("stochdecomp");
  std::vector<double> delta(g.n);
  for (Vertex v = 0; v < g.n; ++v) delta[v] = std::min(rs.derive("shift", v).exponential(rate), cap);

  // Dijkstra from all shifted sources; ties broken by center id for determinism
  std::vector<double> key(g.n, std::numeric_limits<double>::infinity());
  std::vector<int> owner(g.n, -1);
  using Item = std::tuple<double, int, Vertex>;  // (key, center, vertex)
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  for (Vertex v = 0; v < g.n; ++v) pq.push({-delta[v], v, v});
  while (!pq.empty()) {
    auto [k, c, v] = pq.top();
    pq.pop();
    if (owner[v] >= 0) continue;
    owner[v] = c;
    key[v] = k;
    for (EdgeId e : g.adj[v]) {
      Vertex w = g.other(e, v);
      if (owner[w] < 0) pq.push({k + 1, c, w});
    }
  }
  for (EdgeId e = 0; e < g.m(); ++e)
    if (owner[g.edges[e].first] == owner[g.edges[e].second]) sd.kept_edges.push_back(e);

  DSU dsu(g.n);
  for (EdgeId e : sd.kept_edges) dsu.unite(g.edges[e].first, g.edges[e].second);
  sd.component_of.assign(g.n, -1);
  std::vector<int> remap(g.n, -1);
  int next = 0;
  for (Vertex v = 0; v < g.n; ++v) {
    int r = dsu.find(v);
    if (remap[r] < 0) remap[r] = next++;
    sd.component_of[v] = remap[r];
  }
  return sd;
}

// ---------------------------------------------------------------------------
// Invariant checkers.

inline bool check_network_decomposition(const MultiGraph& g, const NetworkDecomposition& nd,
                                        int power_radius, std::string* why = nullptr) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  // clusters = connected components of their class, in the power graph
  for (size_t cid = 0; cid < nd.clusters.size(); ++cid) {
    const auto& cl = nd.clusters[cid];
    if (cl.empty()) return fail("empty cluster");
    // power adjacency among cluster members (base paths may leave the cluster)
    std::vector<int> local(g.n, -1);
    for (size_t i = 0; i < cl.size(); ++i) local[cl[i]] = static_cast<int>(i);
    std::vector<std::vector<int>> padj(cl.size());
    for (size_t i = 0; i < cl.size(); ++i) {
      auto dist = bfs_distances(g, {cl[i]}, power_radius);
      for (size_t j = 0; j < cl.size(); ++j)
        if (i != j && dist[cl[j]] >= 1) padj[i].push_back(static_cast<int>(j));
    }
    // strong diameter inside the induced power subgraph
    for (size_t i = 0; i < cl.size(); ++i) {
      std::vector<int> d(cl.size(), -1);
      std::queue<int> q;
      d[i] = 0;
      q.push(static_cast<int>(i));
      while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : padj[v])
          if (d[w] < 0) {
            d[w] = d[v] + 1;
            q.push(w);
          }
      }
      for (size_t j = 0; j < cl.size(); ++j) {
        if (d[j] < 0) return fail("cluster not connected in induced power graph");
        if (d[j] > nd.D) return fail("strong diameter exceeds D");
      }
    }
  }
  // same-class distinct clusters non-adjacent in the power graph
  for (size_t cid = 0; cid < nd.clusters.size(); ++cid) {
    auto dist = bfs_distances(g, nd.clusters[cid], power_radius);
    for (Vertex v = 0; v < g.n; ++v)
      if (dist[v] >= 1 && nd.cluster_of[v] != static_cast<int>(cid) &&
          nd.class_of[v] == nd.cluster_class[cid])
        return fail("same-class clusters adjacent");
  }
  for (Vertex v = 0; v < g.n; ++v)
    if (nd.class_of[v] < 0 || nd.cluster_of[v] < 0) return fail("unassigned vertex");
  return true;
}

}  // namespace arbor
