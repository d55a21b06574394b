#include <doctest.h>

#include "arbor/multigraph.hpp"

using namespace arbor;

TEST_CASE("edge list parsing") {
  MultiGraph g = from_edge_list("2 1\n0 1\n");
  CHECK(g.n == 2);
  CHECK(g.m() == 1);

  MultiGraph par = from_edge_list("2 2\n0 1\n0 1\n");
  CHECK(par.m() == 2);
  CHECK(par.edges[0] == par.edges[1]);

  CHECK_THROWS_WITH_AS(from_edge_list("3 1\n0 0\n"), doctest::Contains("line 2"), Error);
  CHECK_THROWS_AS(from_edge_list("2 1\n0 5\n"), Error);
  CHECK_THROWS_AS(from_edge_list("2 1\nzero one\n"), Error);
  CHECK_THROWS_AS(from_edge_list("2 3\n0 1\n"), Error);
  CHECK_THROWS_AS(from_edge_list(""), Error);
}

TEST_CASE("comments and roundtrip") {
  MultiGraph g = from_edge_list("# header comment\n3 2\n0 1\n# middle\n1 2\n");
  CHECK(g.m() == 2);
  std::string text = to_edge_list(g);
  CHECK(text == "3 2\n0 1\n1 2\n");
  MultiGraph g2 = from_edge_list(text);
  CHECK(g2.edges == g.edges);
  CHECK(to_edge_list(g2) == text);
}

TEST_CASE("loops rejected unless allowed") {
  CHECK_THROWS_AS(MultiGraph(2, {{0, 0}}), Error);
  MultiGraph g(2, {{0, 0}, {0, 1}}, true);
  CHECK(g.is_loop(0));
  CHECK(g.degree(0) == 2);  // loop indexed once in adjacency
  Orientation psi(g.m());
  auto od = psi.outdegrees(g);
  CHECK(od[0] == 1 + 1);  // loop charges its vertex once
}

TEST_CASE("neighborhood") {
  // path 0-1-2-3-4
  MultiGraph g(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  auto n0 = neighborhood(g, {2}, 0);
  CHECK(n0.graph.n == 1);
  CHECK(n0.graph.m() == 0);
  CHECK(n0.to_original[0] == 2);

  auto n2 = neighborhood(g, {0}, 2);
  CHECK(n2.graph.n == 3);
  CHECK(n2.graph.m() == 2);

  MultiGraph star(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  auto ns = neighborhood(star, {0}, 1);
  CHECK(ns.graph.n == 5);
  CHECK(ns.graph.m() == 4);

  CHECK_THROWS_AS(neighborhood(g, {}, 1), Error);
}

TEST_CASE("power graph") {
  MultiGraph simple(3, {{0, 1}, {1, 2}});
  auto p1 = power_graph(simple, 1);
  CHECK(p1.m() == 2);

  MultiGraph path4(4, {{0, 1}, {1, 2}, {2, 3}});
  auto p2 = power_graph(path4, 2);
  CHECK(p2.m() == 5);  // adds (0,2),(1,3)

  auto pbig = power_graph(path4, 3);
  CHECK(pbig.m() == 6);  // complete

  // parallel edges collapse in the power graph
  MultiGraph par(2, {{0, 1}, {0, 1}});
  CHECK(power_graph(par, 1).m() == 1);
}

TEST_CASE("orientation basics") {
  MultiGraph g(3, {{0, 1}, {1, 2}, {2, 0}});
  auto psi = orient_toward_higher_index(g);
  CHECK(psi.tail(g, 0) == 0);
  CHECK(psi.head(g, 0) == 1);
  CHECK(psi.tail(g, 2) == 0);  // edge (2,0): tail is lower index 0
  auto od = psi.outdegrees(g);
  CHECK(od[0] == 2);
  psi.reverse(0);
  CHECK(psi.tail(g, 0) == 1);
}

TEST_CASE("bfs and induced subgraph") {
  MultiGraph g(6, {{0, 1}, {1, 2}, {3, 4}});
  auto d = bfs_distances(g, {0});
  CHECK(d[2] == 2);
  CHECK(d[3] == -1);
  auto dc = bfs_distances(g, {0}, 1);
  CHECK(dc[2] == -1);

  auto sub = induced_subgraph(g, {0, 1, 3, 4});
  CHECK(sub.graph.n == 4);
  CHECK(sub.graph.m() == 2);
  CHECK(sub.edge_to_original == std::vector<EdgeId>{0, 2});
}
