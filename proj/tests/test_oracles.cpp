#include <doctest.h>

#include "arbor/generators.hpp"
#include "arbor/oracles.hpp"
#include "arbor/verify.hpp"

using namespace arbor;

static MultiGraph k4() {
  return MultiGraph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
}

TEST_CASE("arboricity oracle") {
  CHECK(nash_williams_arboricity(gen_path_multigraph(5, 3)).value == 3);
  CHECK(nash_williams_arboricity(MultiGraph(2, {{0, 1}})).value == 1);
  CHECK(nash_williams_arboricity(k4()).value == 2);
  // triangle: ceil(3/2) = 2
  CHECK(nash_williams_arboricity(MultiGraph(3, {{0, 1}, {1, 2}, {2, 0}})).value == 2);
  CHECK(nash_williams_arboricity(MultiGraph(3, {})).value == 0);
  CHECK_THROWS_AS(nash_williams_arboricity(gen_star(30)), Error);
  CHECK(nash_williams_arboricity(gen_star(30), 30).value == 1);
}

TEST_CASE("arboricity witness reevaluates") {
  auto cert = nash_williams_arboricity(gen_path_multigraph(5, 3));
  CHECK(density_on_subset(gen_path_multigraph(5, 3), cert.witness_vertices, true) == cert.value);
  auto c2 = nash_williams_arboricity(k4());
  CHECK(density_on_subset(k4(), c2.witness_vertices, true) == c2.value);
}

TEST_CASE("pseudo arboricity oracle") {
  auto [tri, tri_psi] = pseudo_arboricity(MultiGraph(3, {{0, 1}, {1, 2}, {2, 0}}));
  CHECK(tri.value == 1);
  CHECK(tri_psi.max_outdegree(MultiGraph(3, {{0, 1}, {1, 2}, {2, 0}})) == 1);

  auto [five, _] = pseudo_arboricity(gen_path_multigraph(2, 5));
  CHECK(five.value == 3);  // ceil(5/2)

  MultiGraph p34 = gen_path_multigraph(3, 4);
  auto [cert, psi] = pseudo_arboricity(p34);
  CHECK(cert.value == 3);  // ceil(8/3)
  CHECK(psi.max_outdegree(p34) == 3);
  CHECK(density_on_subset(p34, cert.witness_vertices, false) == 3);

  auto [empty, epsi] = pseudo_arboricity(MultiGraph(4, {}));
  CHECK(empty.value == 0);
}

TEST_CASE("pseudo arboricity witness certifies on random graphs") {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    MultiGraph g = gen_random_forest_union(14, 1 + seed % 4, seed);
    auto [cert, psi] = pseudo_arboricity(g);
    CHECK(psi.max_outdegree(g) == cert.value);
    CHECK(density_on_subset(g, cert.witness_vertices, false) == cert.value);
  }
}

TEST_CASE("degeneracy") {
  CHECK(degeneracy(gen_star(9)).first == 1);
  CHECK(degeneracy(MultiGraph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}})).first == 2);
  CHECK(degeneracy(k4()).first == 3);
  auto [d, order] = degeneracy(k4());
  CHECK(order.size() == 4);
  auto psi = orientation_from_elimination(k4(), order);
  auto rep = check_orientation(k4(), psi, d, true);
  CHECK(rep.ok);
  CHECK(rep.metrics.at("acyclic") == 1);
}

TEST_CASE("oracle sandwich on small random graphs") {
  for (uint64_t seed = 0; seed < 30; ++seed) {
    MultiGraph g = seed % 2 ? gen_random_forest_union(12, 1 + seed % 5, seed)
                            : gen_gnp(13, 0.2 + 0.05 * (seed % 8), seed);
    auto a = nash_williams_arboricity(g);
    auto [astar, psi] = pseudo_arboricity(g);
    if (g.m() == 0) continue;
    CHECK(astar.value <= a.value);
    CHECK(a.value <= 2 * astar.value);
    if (g.is_simple()) CHECK(a.value <= astar.value + 1);
    auto [d, order] = degeneracy(g);
    // standard bounds (the tighter min form fails already on K4)
    CHECK(d <= 2 * a.value - 1);
    CHECK(d <= 2 * astar.value);
  }
}
