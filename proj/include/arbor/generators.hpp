#pragma once
// Seeded test-graph families, including the lower-bound gadgets.

#include <map>
#include <string>
#include <vector>

#include "multigraph.hpp"
#include "runtime.hpp"

namespace arbor {

struct GeneratorSpec {
  std::string family;  // path_multigraph | lower_bound_G | lower_bound_G_prime |
                       // k4_expanded | random_forest_union | gnp | star
  std::map<std::string, double> params;
  uint64_t seed = 0;

  long long p_int(const std::string& key) const {
    auto it = params.find(key);
    if (it == params.end()) throw Error("param-missing", "generator parameter '" + key + "'");
    return static_cast<long long>(it->second);
  }
  double p_real(const std::string& key) const {
    auto it = params.find(key);
    if (it == params.end()) throw Error("param-missing", "generator parameter '" + key + "'");
    return it->second;
  }
};

// l vertices in a line, k parallel edges between consecutive pairs
inline MultiGraph gen_path_multigraph(long long l, long long k) {
  if (l < 1 || k < 1) throw Error("param-out-of-range", "path_multigraph: l >= 1, k >= 1");
  std::vector<std::pair<Vertex, Vertex>> es;
  for (long long i = 0; i + 1 < l; ++i)
    for (long long j = 0; j < k; ++j) es.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(i + 1));
  return MultiGraph(static_cast<int>(l), std::move(es));
}

namespace detail {
inline void add_bundle(std::vector<std::pair<Vertex, Vertex>>& es, Vertex u, Vertex v, long long c) {
  for (long long i = 0; i < c; ++i) es.emplace_back(u, v);
}
}  // namespace detail

// four named vertices x1,x2,y1,y2; floor(a/2) parallel edges on (x1,x2) and
// (y1,y2); two paths of t+2 vertices (x1..y1 and x2..y2) whose consecutive
// pairs carry a parallel edges
inline MultiGraph gen_lower_bound_G(long long a, long long t) {
  if (a < 2 || t < 1) throw Error("param-out-of-range", "lower_bound_G: a >= 2, t >= 1");
  const Vertex x1 = 0, x2 = 1, y1 = 2, y2 = 3;
  int n = static_cast<int>(4 + 2 * t);
  std::vector<std::pair<Vertex, Vertex>> es;
  detail::add_bundle(es, x1, x2, a / 2);
  detail::add_bundle(es, y1, y2, a / 2);
  auto path = [&](Vertex from, Vertex to, Vertex first_internal) {
    Vertex prev = from;
    for (long long i = 0; i < t; ++i) {
      Vertex cur = first_internal + static_cast<Vertex>(i);
      detail::add_bundle(es, prev, cur, a);
      prev = cur;
    }
    detail::add_bundle(es, prev, to, a);
  };
  path(x1, y1, 4);
  path(x2, y2, static_cast<Vertex>(4 + t));
  return MultiGraph(n, std::move(es));
}

// lower_bound_G with x1/x2 and y1/y2 contracted; the contracted bundles would
// be loops and are dropped
inline MultiGraph gen_lower_bound_G_prime(long long a, long long t) {
  if (a < 2 || t < 1) throw Error("param-out-of-range", "lower_bound_G_prime: a >= 2, t >= 1");
  const Vertex x = 0, y = 1;
  int n = static_cast<int>(2 + 2 * t);
  std::vector<std::pair<Vertex, Vertex>> es;
  auto path = [&](Vertex first_internal) {
    Vertex prev = x;
    for (long long i = 0; i < t; ++i) {
      Vertex cur = first_internal + static_cast<Vertex>(i);
      detail::add_bundle(es, prev, cur, a);
      prev = cur;
    }
    detail::add_bundle(es, prev, y, a);
  };
  path(2);
  path(static_cast<Vertex>(2 + t));
  return MultiGraph(n, std::move(es));
}

// simple-graph variant of lower_bound_G(a=2, t): every parallel-edge bundle of
// size >= 2 becomes a copy of K4 on the two endpoints plus two fresh vertices
inline MultiGraph gen_k4_expanded(long long t) {
  if (t < 1) throw Error("param-out-of-range", "k4_expanded: t >= 1");
  MultiGraph base = gen_lower_bound_G(2, t);
  std::map<std::pair<Vertex, Vertex>, int> mult;
  for (auto [u, v] : base.edges) mult[{std::min(u, v), std::max(u, v)}]++;
  int n = base.n;
  std::vector<std::pair<Vertex, Vertex>> es;
  for (auto& [uv, c] : mult) {
    auto [u, v] = uv;
    if (c == 1) {
      es.emplace_back(u, v);
    } else {
      Vertex w1 = n++, w2 = n++;
      Vertex quad[4] = {u, v, w1, w2};
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) es.emplace_back(quad[i], quad[j]);
    }
  }
  return MultiGraph(n, std::move(es));
}

// uniform labeled tree via a random Pruefer sequence
inline std::vector<std::pair<Vertex, Vertex>> random_tree(int n, RandomStream& rs) {
  std::vector<std::pair<Vertex, Vertex>> es;
  if (n <= 1) return es;
  if (n == 2) {
    es.emplace_back(0, 1);
    return es;
  }
  std::vector<int> prufer(n - 2), deg(n, 1);
  for (int i = 0; i < n - 2; ++i) {
    prufer[i] = static_cast<int>(rs.uniform_int(n));
    deg[prufer[i]]++;
  }
  std::priority_queue<int, std::vector<int>, std::greater<>> leaves;
  for (int v = 0; v < n; ++v)
    if (deg[v] == 1) leaves.push(v);
  for (int i = 0; i < n - 2; ++i) {
    int leaf = leaves.top();
    leaves.pop();
    es.emplace_back(leaf, prufer[i]);
    if (--deg[prufer[i]] == 1) leaves.push(prufer[i]);
  }
  int a = leaves.top();
  leaves.pop();
  int b = leaves.top();
  es.emplace_back(a, b);
  return es;
}

// union of k uniformly random spanning trees; arboricity <= k by construction
inline MultiGraph gen_random_forest_union(long long n, long long k, uint64_t seed) {
  if (n < 1 || k < 1) throw Error("param-out-of-range", "random_forest_union: n >= 1, k >= 1");
  RandomStream root(seed);
  std::vector<std::pair<Vertex, Vertex>> es;
  for (long long i = 0; i < k; ++i) {
    RandomStream rs = root.derive("tree", static_cast<uint64_t>(i));
    auto tree = random_tree(static_cast<int>(n), rs);
    es.insert(es.end(), tree.begin(), tree.end());
  }
  return MultiGraph(static_cast<int>(n), std::move(es));
}

inline MultiGraph gen_gnp(long long n, double p, uint64_t seed) {
  if (n < 1 || p < 0 || p > 1) throw Error("param-out-of-range", "gnp: n >= 1, p in [0,1]");
  RandomStream rs = RandomStream(seed).derive("gnp");
  std::vector<std::pair<Vertex, Vertex>> es;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rs.bernoulli(p)) es.emplace_back(u, v);
  return MultiGraph(static_cast<int>(n), std::move(es));
}

inline MultiGraph gen_star(long long n) {
  if (n < 1) throw Error("param-out-of-range", "star: n >= 1");
  std::vector<std::pair<Vertex, Vertex>> es;
  for (Vertex v = 1; v < n; ++v) es.emplace_back(0, v);
  return MultiGraph(static_cast<int>(n), std::move(es));
}

inline MultiGraph generate(const GeneratorSpec& spec) {
  if (spec.family == "path_multigraph") return gen_path_multigraph(spec.p_int("l"), spec.p_int("k"));
  if (spec.family == "lower_bound_G") return gen_lower_bound_G(spec.p_int("a"), spec.p_int("t"));
  if (spec.family == "lower_bound_G_prime")
    return gen_lower_bound_G_prime(spec.p_int("a"), spec.p_int("t"));
  if (spec.family == "k4_expanded") return gen_k4_expanded(spec.p_int("t"));
  if (spec.family == "random_forest_union")
    return gen_random_forest_union(spec.p_int("n"), spec.p_int("k"), spec.seed);
  if (spec.family == "gnp") return gen_gnp(spec.p_int("n"), spec.p_real("p"), spec.seed);
  if (spec.family == "star") return gen_star(spec.p_int("n"));
  throw Error("unknown-family", "generate: unknown family '" + spec.family + "'");
}

}  // namespace arbor
