#pragma once
// Low-outdegree orientation: reversal paths toward underloaded sinks, cluster
// patching, and the network-decomposition driver. Loops are allowed here;
// a loop contributes one to its vertex's outdegree and is never reversed.

#include <algorithm>
#include <cmath>
#include <vector>

#include "multigraph.hpp"
#include "netdecomp.hpp"
#include "oracles.hpp"
#include "runtime.hpp"

namespace arbor {

struct LoadThreshold {
  int a_star_bound = 0;
  double eps = 0;
  int threshold = 0;  // ceil(a_star_bound * (1 + eps))

  LoadThreshold() = default;
  LoadThreshold(int a_star, double e)
      : a_star_bound(a_star), eps(e),
        threshold(static_cast<int>(std::ceil(a_star * (1.0 + e)))) {}

  bool overloaded(int outdeg) const { return outdeg > threshold; }
  // a sink can absorb one more out-edge without ever becoming overloaded
  bool is_sink(int outdeg) const { return outdeg < a_star_bound * (1.0 + eps); }
};

struct ReversalPath {
  std::vector<Vertex> vertices;
  std::vector<EdgeId> edges;
};

// BFS along psi-directed edges from v to the first underloaded vertex.
// Deterministic: vertices expand in discovery order, out-edges in EdgeId order.
inline ReversalPath find_reversal_path(const MultiGraph& g, const Orientation& psi, Vertex v,
                                       const LoadThreshold& th) {
  auto outdeg = psi.outdegrees(g);
  auto outs = psi.out_edges(g);
  std::vector<EdgeId> via(g.n, -1);
  std::vector<Vertex> prev(g.n, -1);
  std::vector<char> seen(g.n, 0);
  std::vector<Vertex> q{v};
  seen[v] = 1;
  Vertex sink = -1;
  for (size_t i = 0; i < q.size() && sink < 0; ++i) {
    Vertex x = q[i];
    for (EdgeId e : outs[x]) {
      if (g.is_loop(e)) continue;
      Vertex w = psi.head(g, e);
      if (seen[w]) continue;
      seen[w] = 1;
      via[w] = e;
      prev[w] = x;
      if (th.is_sink(outdeg[w])) {
        sink = w;
        break;
      }
      q.push_back(w);
    }
  }
  if (sink < 0)
    throw Error("no-sink-found",
                "find_reversal_path: no underloaded vertex reachable from " + std::to_string(v) +
                    " (a* bound too low?)");
  ReversalPath path;
  for (Vertex x = sink; x != v; x = prev[x]) {
    path.vertices.push_back(x);
    path.edges.push_back(via[x]);
  }
  path.vertices.push_back(v);
  std::reverse(path.vertices.begin(), path.vertices.end());
  std::reverse(path.edges.begin(), path.edges.end());
  return path;
}

// Reverse paths until no vertex of L is overloaded. Overloaded vertices are
// processed in ascending index order; each reversal moves one unit of load
// from the path tail to an underloaded sink, so no new overload appears.
inline Orientation patch_orientation(const MultiGraph& g, Orientation psi,
                                     const std::vector<Vertex>& L, const LoadThreshold& th,
                                     RoundLedger& ledger) {
  std::vector<Vertex> targets = L;
  std::sort(targets.begin(), targets.end());
  long long max_len = 0;
  long long reversals = 0;
  for (bool again = true; again;) {
    again = false;
    auto outdeg = psi.outdegrees(g);
    for (Vertex v : targets) {
      if (!th.overloaded(outdeg[v])) continue;
      auto path = find_reversal_path(g, psi, v, th);
      for (EdgeId e : path.edges) psi.reverse(e);
      max_len = std::max<long long>(max_len, static_cast<long long>(path.edges.size()));
      ++reversals;
      again = true;
      break;  // recompute loads; keep the ascending-index policy honest
    }
  }
  if (reversals > 0) ledger.charge("patch_orientation", std::max(1LL, max_len), reversals);
  return psi;
}

// Algorithm driver: network decomposition of G^{2R}, then per class and per
// cluster patch all overloaded cluster vertices.
inline Orientation low_outdegree_orientation(const MultiGraph& g, double eps, RandomStream stream,
                                             RoundLedger& ledger, int a_star_bound = -1) {
  if (eps <= 0) throw Error("bad-eps", "low_outdegree_orientation: eps > 0 required");
  if (a_star_bound < 0) a_star_bound = pseudo_arboricity(g).first.value;
  LoadThreshold th(a_star_bound, eps);
  Orientation psi = orient_toward_higher_index(g);
  if (g.m() == 0) return psi;

  const int log2n = std::max(1, ceil_log2(g.n));
  const int K = 4;
  const int R = static_cast<int>(std::ceil(K * log2n / eps));
  auto nd = network_decomposition(g, stream.derive("orient_nd"), ledger, 2 * R);
  for (int cls = 0; cls < nd.chi; ++cls) {
    bool any = false;
    for (size_t cid = 0; cid < nd.clusters.size(); ++cid) {
      if (nd.cluster_class[cid] != cls) continue;
      psi = patch_orientation(g, psi, nd.clusters[cid], th, ledger);
      any = true;
    }
    // clusters of one class run in parallel: one leader round-trip per class
    if (any) ledger.charge("orientation_class", static_cast<long long>(nd.D) * 2 * R + R, 1);
  }
  return psi;
}

}  // namespace arbor
