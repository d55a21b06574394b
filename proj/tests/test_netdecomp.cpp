#include <doctest.h>

#include "arbor/generators.hpp"
#include "arbor/netdecomp.hpp"

using namespace arbor;

TEST_CASE("single vertex") {
  MultiGraph g(1, {});
  RoundLedger led;
  auto nd = network_decomposition(g, RandomStream(0), led);
  CHECK(nd.chi == 1);
  CHECK(nd.clusters.size() == 1);
  CHECK(nd.D == 0);
  CHECK(check_network_decomposition(g, nd, 1));
}

TEST_CASE("clique K5") {
  MultiGraph g = gen_gnp(5, 1.0, 0);
  RoundLedger led;
  auto nd = network_decomposition(g, RandomStream(1), led);
  CHECK(nd.chi <= kNdDiameterConst * ceil_log2(5));
  std::string why;
  CHECK_MESSAGE(check_network_decomposition(g, nd, 1, &why), why);
  CHECK(led.total_rounds > 0);
}

TEST_CASE("random graphs across seeds") {
  for (uint64_t seed = 0; seed < 8; ++seed) {
    MultiGraph g = gen_gnp(120, 0.03, seed);
    RoundLedger led;
    auto nd = network_decomposition(g, RandomStream(seed), led);
    std::string why;
    CHECK_MESSAGE(check_network_decomposition(g, nd, 1, &why), why);
    CHECK(nd.chi <= kNdDiameterConst * ceil_log2(120));
  }
}

TEST_CASE("power graph decomposition keeps same-class clusters far apart") {
  MultiGraph g = gen_gnp(300, 0.01, 3);
  RoundLedger led;
  auto nd = network_decomposition(g, RandomStream(7), led, 2);
  std::string why;
  CHECK_MESSAGE(check_network_decomposition(g, nd, 2, &why), why);
  // non-adjacent in G^2 means base-graph distance >= 3 between same-class clusters
  for (size_t cid = 0; cid < nd.clusters.size(); ++cid) {
    auto dist = bfs_distances(g, nd.clusters[cid], 2);
    for (Vertex v = 0; v < g.n; ++v)
      if (dist[v] >= 1 && nd.cluster_of[v] != static_cast<int>(cid))
        CHECK(nd.class_of[v] != nd.cluster_class[cid]);
  }
}

TEST_CASE("decomposition deterministic per stream") {
  MultiGraph g = gen_gnp(60, 0.1, 2);
  RoundLedger l1, l2;
  auto a = network_decomposition(g, RandomStream(9), l1);
  auto b = network_decomposition(g, RandomStream(9), l2);
  CHECK(a.class_of == b.class_of);
  CHECK(a.cluster_of == b.cluster_of);
  CHECK(l1.total_rounds == l2.total_rounds);
}

TEST_CASE("stochastic decomposition basics") {
  MultiGraph g(1, {});
  RoundLedger led;
  auto sd = stochastic_decomposition(g, 0.5, RandomStream(0), led);
  CHECK(sd.kept_edges.empty());
  CHECK(sd.component_of == std::vector<int>{0});

  MultiGraph path = gen_path_multigraph(64, 1);
  auto sd2 = stochastic_decomposition(path, 0.5, RandomStream(4), led);
  // component diameters within D
  std::vector<std::vector<Vertex>> comps;
  for (Vertex v = 0; v < path.n; ++v) {
    if (sd2.component_of[v] >= static_cast<int>(comps.size())) comps.resize(sd2.component_of[v] + 1);
    comps[sd2.component_of[v]].push_back(v);
  }
  for (auto& comp : comps) {
    if (comp.empty()) continue;
    auto sub = induced_subgraph(path, comp);
    // keep only kept edges of the component
    std::vector<char> kept(path.m(), 0);
    for (EdgeId e : sd2.kept_edges) kept[e] = 1;
    for (Vertex v = 0; v < sub.graph.n; ++v) {
      auto d = bfs_distances(sub.graph, {v});
      for (int x : d) CHECK(x <= sd2.D);
    }
  }
  CHECK_THROWS_AS(stochastic_decomposition(path, 0.0, RandomStream(0), led), Error);
  CHECK_THROWS_AS(stochastic_decomposition(path, 0.9, RandomStream(0), led), Error);
}

TEST_CASE("stochastic cut probability within bound") {
  // single edge: empirical cut frequency <= beta within 3 sigma
  MultiGraph g(2, {{0, 1}});
  const double beta = 0.3;
  int cut = 0;
  const int trials = 10000;
  RoundLedger led;
  for (int t = 0; t < trials; ++t) {
    auto sd = stochastic_decomposition(g, beta, RandomStream(1000 + t), led);
    cut += sd.kept_edges.empty();
  }
  double sigma = std::sqrt(trials * beta * (1 - beta));
  CHECK(cut <= trials * beta + 3 * sigma);
}
