#pragma once
// Loopless multigraph with stable EdgeIds, edge-list I/O, neighborhood and
// power-graph queries.

#include <algorithm>
#include <queue>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "runtime.hpp"

namespace arbor {

using Vertex = int;
using EdgeId = int;

struct MultiGraph {
  int n = 0;
  std::vector<std::pair<Vertex, Vertex>> edges;  // position = EdgeId
  std::vector<std::vector<EdgeId>> adj;          // incident EdgeIds per vertex

  MultiGraph() = default;
  MultiGraph(int n_, std::vector<std::pair<Vertex, Vertex>> es, bool allow_loops = false)
      : n(n_), edges(std::move(es)) {
    for (size_t i = 0; i < edges.size(); ++i) {
      auto [u, v] = edges[i];
      if (u < 0 || u >= n || v < 0 || v >= n)
        throw Error("vertex-out-of-range", "edge " + std::to_string(i) + " out of range");
      if (u == v && !allow_loops)
        throw Error("loop-edge", "loop at edge " + std::to_string(i));
    }
    rebuild_adjacency();
  }

  int m() const { return static_cast<int>(edges.size()); }

  void rebuild_adjacency() {
    adj.assign(n, {});
    for (EdgeId e = 0; e < m(); ++e) {
      adj[edges[e].first].push_back(e);
      if (edges[e].second != edges[e].first) adj[edges[e].second].push_back(e);
    }
  }

  bool is_loop(EdgeId e) const { return edges[e].first == edges[e].second; }

  Vertex other(EdgeId e, Vertex v) const {
    return edges[e].first == v ? edges[e].second : edges[e].first;
  }

  int degree(Vertex v) const { return static_cast<int>(adj[v].size()); }

  int max_degree() const {
    int d = 0;
    for (Vertex v = 0; v < n; ++v) d = std::max(d, degree(v));
    return d;
  }

  bool is_simple() const {
    std::vector<std::pair<Vertex, Vertex>> seen;
    seen.reserve(edges.size());
    for (auto [u, v] : edges) seen.emplace_back(std::min(u, v), std::max(u, v));
    std::sort(seen.begin(), seen.end());
    return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
  }
};

// ---------------------------------------------------------------------------
// Edge-list text format: "n m" header, then m lines "u v", '#' comments.

inline MultiGraph from_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  int n = -1;
  long long m = -1;
  std::vector<std::pair<Vertex, Vertex>> edges;
  auto fail = [&](const std::string& what) {
    throw Error("parse-error", what + " at line " + std::to_string(lineno));
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    if (n < 0) {
      if (!(ls >> n >> m) || n < 0 || m < 0) fail("malformed header");
      continue;
    }
    long long u, v;
    if (!(ls >> u >> v)) fail("malformed edge line");
    std::string rest;
    if (ls >> rest) fail("trailing tokens");
    if (u < 0 || u >= n || v < 0 || v >= n) fail("vertex index out of range");
    if (u == v) fail("loop edge");
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  if (n < 0) throw Error("parse-error", "missing header");
  if (static_cast<long long>(edges.size()) != m)
    throw Error("parse-error", "edge count mismatch: header says " + std::to_string(m) +
                                   ", found " + std::to_string(edges.size()));
  return MultiGraph(n, std::move(edges));
}

inline std::string to_edge_list(const MultiGraph& g) {
  std::ostringstream out;
  out << g.n << ' ' << g.m() << '\n';
  for (auto [u, v] : g.edges) out << u << ' ' << v << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// Orientation: per-edge flag; true = directed toward endpoint_v.

struct Orientation {
  std::vector<char> toward_v;  // per EdgeId

  Orientation() = default;
  explicit Orientation(int m) : toward_v(m, 1) {}

  Vertex head(const MultiGraph& g, EdgeId e) const {
    return toward_v[e] ? g.edges[e].second : g.edges[e].first;
  }
  Vertex tail(const MultiGraph& g, EdgeId e) const {
    return toward_v[e] ? g.edges[e].first : g.edges[e].second;
  }
  void reverse(EdgeId e) { toward_v[e] = !toward_v[e]; }

  std::vector<int> outdegrees(const MultiGraph& g) const {
    std::vector<int> out(g.n, 0);
    for (EdgeId e = 0; e < g.m(); ++e) out[tail(g, e)]++;  // a loop charges its vertex once
    return out;
  }
  int max_outdegree(const MultiGraph& g) const {
    auto od = outdegrees(g);
    return od.empty() ? 0 : *std::max_element(od.begin(), od.end());
  }
  std::vector<std::vector<EdgeId>> out_edges(const MultiGraph& g) const {
    std::vector<std::vector<EdgeId>> out(g.n);
    for (EdgeId e = 0; e < g.m(); ++e) out[tail(g, e)].push_back(e);
    return out;
  }
};

// baseline used by the orientation module: every edge toward its higher index
inline Orientation orient_toward_higher_index(const MultiGraph& g) {
  Orientation psi(g.m());
  for (EdgeId e = 0; e < g.m(); ++e)
    psi.toward_v[e] = g.edges[e].second >= g.edges[e].first;
  return psi;
}

// ---------------------------------------------------------------------------
// BFS utilities.

// distances from a source set, -1 = unreachable; optional depth cap
inline std::vector<int> bfs_distances(const MultiGraph& g, const std::vector<Vertex>& sources,
                                      int max_depth = -1) {
  std::vector<int> dist(g.n, -1);
  std::queue<Vertex> q;
  for (Vertex s : sources)
    if (dist[s] < 0) {
      dist[s] = 0;
      q.push(s);
    }
  while (!q.empty()) {
    Vertex v = q.front();
    q.pop();
    if (max_depth >= 0 && dist[v] >= max_depth) continue;
    for (EdgeId e : g.adj[v]) {
      Vertex w = g.other(e, v);
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        q.push(w);
      }
    }
  }
  return dist;
}

struct InducedSubgraph {
  MultiGraph graph;
  std::vector<Vertex> to_original;         // local vertex -> original vertex
  std::vector<Vertex> to_local;            // original vertex -> local or -1
  std::vector<EdgeId> edge_to_original;    // local EdgeId -> original EdgeId
};

inline InducedSubgraph induced_subgraph(const MultiGraph& g, const std::vector<Vertex>& verts) {
  InducedSubgraph s;
  s.to_local.assign(g.n, -1);
  for (Vertex v : verts)
    if (s.to_local[v] < 0) {
      s.to_local[v] = static_cast<Vertex>(s.to_original.size());
      s.to_original.push_back(v);
    }
  std::vector<std::pair<Vertex, Vertex>> es;
  for (EdgeId e = 0; e < g.m(); ++e) {
    auto [u, v] = g.edges[e];
    if (s.to_local[u] >= 0 && s.to_local[v] >= 0) {
      es.emplace_back(s.to_local[u], s.to_local[v]);
      s.edge_to_original.push_back(e);
    }
  }
  s.graph = MultiGraph(static_cast<int>(s.to_original.size()), std::move(es));
  return s;
}

// N^r(center): vertices at distance <= r, induced edges, with a vertex map
inline InducedSubgraph neighborhood(const MultiGraph& g, const std::vector<Vertex>& center, int r) {
  if (center.empty()) throw Error("empty-center", "neighborhood: empty center set");
  if (r < 0) throw Error("bad-radius", "neighborhood: r >= 0 required");
  auto dist = bfs_distances(g, center, r);
  std::vector<Vertex> verts;
  for (Vertex v = 0; v < g.n; ++v)
    if (dist[v] >= 0) verts.push_back(v);
  return induced_subgraph(g, verts);
}

inline std::vector<Vertex> ball(const MultiGraph& g, const std::vector<Vertex>& center, int r) {
  auto dist = bfs_distances(g, center, r);
  std::vector<Vertex> verts;
  for (Vertex v = 0; v < g.n; ++v)
    if (dist[v] >= 0) verts.push_back(v);
  return verts;
}

// G^r: simple graph with edge uv iff 1 <= dist(u,v) <= r
inline MultiGraph power_graph(const MultiGraph& g, int r) {
  if (r < 1) throw Error("bad-radius", "power_graph: r >= 1 required");
  std::vector<std::pair<Vertex, Vertex>> es;
  for (Vertex u = 0; u < g.n; ++u) {
    auto dist = bfs_distances(g, {u}, r);
    for (Vertex v = u + 1; v < g.n; ++v)
      if (dist[v] >= 1) es.emplace_back(u, v);
  }
  return MultiGraph(g.n, std::move(es));
}

// ---------------------------------------------------------------------------
// Small disjoint-set used by the forest checkers and augmentation oracle.

struct DSU {
  std::vector<int> parent, rank_;
  explicit DSU(int n) : parent(n), rank_(n, 0) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent[b] = a;
    if (rank_[a] == rank_[b]) rank_[a]++;
    return true;
  }
};

}  // namespace arbor
