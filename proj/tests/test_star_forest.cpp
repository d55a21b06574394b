#include <doctest.h>

#include <numeric>

#include "arbor/generators.hpp"
#include "arbor/star_forest.hpp"
#include "arbor/verify.hpp"

using namespace arbor;

TEST_CASE("build_hv follows the membership rule") {
  // out-star at 0 with hand-picked center sets and palettes
  MultiGraph g(4, {{0, 1}, {0, 2}, {0, 3}});
  Orientation A = orient_toward_higher_index(g);
  PaletteSet ps(3, {0, 1, 2});
  ps.q = {{0, 1, 2}, {0, 1}, {1, 2}};
  CenterAssignment ca;
  ca.colors_of = {{0, 1}, {1}, {}, {0, 2}};
  auto h = build_hv(g, A, ca, ps, 0, 3);
  CHECK(h.left == std::vector<Color>{0, 1, 2});
  CHECK(h.right == std::vector<Vertex>{1, 2, 3});
  CHECK(h.adj[0] == std::vector<int>{0, 1});  // color 0: u=1 and u=2 qualify
  CHECK(h.adj[1] == std::vector<int>{1, 2});  // color 1: u=1 is a 1-leaf, skip
  CHECK(h.adj[2].empty());                    // 0 is a 2-center, not a leaf

  // C_v empty -> no edges at all
  CenterAssignment none;
  none.colors_of = {{}, {}, {}, {}};
  auto h0 = build_hv(g, A, none, ps, 0, 3);
  for (const auto& row : h0.adj) CHECK(row.empty());

  // C_v = all colors, neighbors empty, full palettes -> complete bipartite
  CenterAssignment allc;
  allc.colors_of = {{0, 1, 2}, {}, {}, {}};
  auto full = PaletteSet::full(3, 3);
  auto hc = build_hv(g, A, allc, full, 0, 3);
  for (const auto& row : hc.adj) CHECK(row == std::vector<int>{0, 1, 2});

  // dummies beyond the real out-degree never get edges
  auto hd = build_hv(g, A, allc, full, 1, 3);
  CHECK(hd.right == std::vector<Vertex>{-1, -1, -1});
  for (const auto& row : hd.adj) CHECK(row.empty());

  MultiGraph multi(2, {{0, 1}, {0, 1}});
  CHECK_THROWS_AS(build_hv(multi, orient_toward_higher_index(multi), none, full, 0, 2), Error);
}

TEST_CASE("max_bipartite_matching is maximum") {
  // complete t x t
  LocalBipartite comp;
  comp.left = {0, 1, 2, 3};
  comp.right = {0, 1, 2, 3};
  comp.right_edge = {0, 1, 2, 3};
  comp.adj.assign(4, {0, 1, 2, 3});
  CHECK(matching_size(max_bipartite_matching(comp)) == 4);

  LocalBipartite empty;
  empty.left = {0, 1};
  empty.right = {-1, -1};
  empty.right_edge = {-1, -1};
  empty.adj.assign(2, {});
  CHECK(matching_size(max_bipartite_matching(empty)) == 0);

  // random 6x6 instances vs brute force over permutations
  for (uint64_t seed = 0; seed < 20; ++seed) {
    RandomStream rs(seed);
    LocalBipartite h;
    h.left.resize(6);
    std::iota(h.left.begin(), h.left.end(), 0);
    h.right.assign(6, 0);
    h.right_edge.assign(6, 0);
    h.adj.assign(6, {});
    bool mat[6][6];
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) {
        mat[i][j] = rs.derive("cell", i * 6 + j).bernoulli(0.4);
        if (mat[i][j]) h.adj[i].push_back(j);
      }
    int best = 0;
    std::array<int, 6> perm{0, 1, 2, 3, 4, 5};
    do {
      int cnt = 0;
      for (int i = 0; i < 6; ++i) cnt += mat[i][perm[i]];
      best = std::max(best, cnt);
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(matching_size(max_bipartite_matching(h)) == best);
  }
}

TEST_CASE("sfd_from_matchings") {
  MultiGraph g(3, {{0, 1}, {0, 2}});
  Orientation A = orient_toward_higher_index(g);
  auto full = PaletteSet::full(2, 2);
  CenterAssignment ca;
  ca.colors_of = {{0}, {}, {}};  // only color 0 usable at vertex 0
  std::vector<LocalBipartite> hs;
  std::vector<std::vector<int>> ms;
  for (Vertex v = 0; v < g.n; ++v) {
    hs.push_back(build_hv(g, A, ca, full, v, 2));
    ms.push_back(max_bipartite_matching(hs.back()));
  }
  // deficit 1 at vertex 0: exactly one out-edge stays in E1
  auto res = sfd_from_matchings(g, hs, ms, 1);
  CHECK(res.e1.size() == 1);
  CHECK(res.coloring.colored_count() == 1);
  CHECK(check_star_forest(g, res.coloring).ok);
  CHECK_THROWS_AS(sfd_from_matchings(g, hs, ms, 0), Error);

  // perfect matchings -> empty E1
  CenterAssignment both;
  both.colors_of = {{0, 1}, {}, {}};
  hs.clear();
  ms.clear();
  for (Vertex v = 0; v < g.n; ++v) {
    hs.push_back(build_hv(g, A, both, full, v, 2));
    ms.push_back(max_bipartite_matching(hs.back()));
  }
  auto perfect = sfd_from_matchings(g, hs, ms, 0);
  CHECK(perfect.e1.empty());
  CHECK(perfect.coloring.colored_count() == 2);
}

TEST_CASE("distributed_lll") {
  // five boolean variables, event i violated while variable i is set
  std::vector<char> var(5, 0);
  LllProblem prob;
  prob.num_events = 5;
  prob.violated = [&](int i) { return var[i] != 0; };
  prob.resample = [&](int i, RandomStream rs) { var[i] = rs.bernoulli(0.5); };
  prob.dependents = [](int i) { return std::vector<int>{i}; };

  RoundLedger led;
  CHECK(distributed_lll(prob, RandomStream(1), led) == 0);  // nothing violated

  var[2] = 1;
  RoundLedger led2;
  int rounds = distributed_lll(prob, RandomStream(2), led2);
  CHECK(rounds >= 1);
  CHECK(rounds <= 10);
  CHECK(var[2] == 0);

  // an event that can never be satisfied surfaces, not loops forever
  LllProblem stuck = prob;
  stuck.violated = [](int i) { return i == 0; };
  RoundLedger led3;
  try {
    distributed_lll(stuck, RandomStream(3), led3);
    CHECK(false);
  } catch (const Error& err) {
    CHECK(err.code == "budget-exhausted");
    CHECK(std::string(err.what()).find("still violated") != std::string::npos);
  }
}

TEST_CASE("sample_centers_sfd meets the deficit threshold") {
  MultiGraph g = gen_gnp(80, 0.15, 4);
  RoundLedger led;
  const double eps = 0.5;
  int a = pseudo_arboricity(g).first.value;
  Orientation psi = low_outdegree_orientation(g, eps, RandomStream(5), led, a);
  const int t = static_cast<int>(std::ceil((1 + eps) * a));
  std::string met;
  auto centers = sample_centers_sfd(g, psi, a, eps, RandomStream(6), led, true, &met);
  CHECK((met == "both" || met == "a(1-eps)" || met == "t-2aeps"));
  const int required = std::min(static_cast<int>(std::ceil(a * (1 - eps))),
                                t - static_cast<int>(std::ceil(2 * a * eps)));
  auto full = PaletteSet::full(g.m(), t);
  auto outdeg = psi.outdegrees(g);
  for (Vertex v = 0; v < g.n; ++v) {
    CHECK(static_cast<int>(centers.colors_of[v].size()) == std::min(a, t));
    auto h = build_hv(g, psi, centers, full, v, t);
    CHECK(matching_size(max_bipartite_matching(h)) >= std::min(required, outdeg[v]));
  }
  // center assignments round-trip through JSON
  auto back = CenterAssignment::from_json(centers.to_json());
  CHECK(back.colors_of == centers.colors_of);

  // outside test mode the small-parameter precondition bites
  CHECK_THROWS_AS(sample_centers_sfd(g, psi, 2, 0.1, RandomStream(7), led, false), Error);
  CHECK_THROWS_AS(sample_centers_sfd(g, psi, 2, 0.0, RandomStream(7), led, true), Error);
}

TEST_CASE("sample_centers_lsfd yields perfect matchings and an empty leftover") {
  MultiGraph g = gen_random_forest_union(30, 1, 8);  // a tree
  RoundLedger led;
  const double eps = 0.1;
  const int a = 1;
  Orientation psi = low_outdegree_orientation(g, eps, RandomStream(9), led, a);
  const int t = static_cast<int>(std::ceil((1 + eps) * a));
  auto palettes = PaletteSet::full(g.m(), 60);
  auto centers =
      sample_centers_lsfd(g, psi, a, eps, palettes, RandomStream(10), led, true);
  std::vector<LocalBipartite> hs;
  std::vector<std::vector<int>> ms;
  for (Vertex v = 0; v < g.n; ++v) {
    hs.push_back(build_hv(g, psi, centers, palettes, v, t));
    ms.push_back(max_bipartite_matching(hs.back()));
  }
  auto res = sfd_from_matchings(g, hs, ms, 0);
  CHECK(res.e1.empty());
  CHECK(res.coloring.colored_count() == g.m());
  CHECK(check_star_forest(g, res.coloring).ok);
  for (EdgeId e = 0; e < g.m(); ++e) CHECK(palettes.admissible(e, res.coloring.color_of[e]));

  CHECK_THROWS_AS(sample_centers_lsfd(g, psi, a, 1.5, palettes, RandomStream(11), led, true),
                  Error);
}

TEST_CASE("star_forest_decomposition sfd mode") {
  RoundLedger led;
  // a tree with generous eps
  MultiGraph tree = gen_random_forest_union(40, 1, 12);
  auto phi = star_forest_decomposition(tree, 0.5, StarMode::sfd, nullptr, RandomStream(13), led,
                                       1, true);
  CHECK(phi.colored_count() == tree.m());
  CHECK(check_star_forest(tree, phi).ok);
  CHECK(static_cast<int>(phi.used_colors().size()) <= 8);

  // a denser simple toy
  MultiGraph g = gen_gnp(60, 0.15, 14);
  int a = pseudo_arboricity(g).first.value;
  auto phig = star_forest_decomposition(g, 0.5, StarMode::sfd, nullptr, RandomStream(15), led,
                                        a, true);
  CHECK(phig.colored_count() == g.m());
  CHECK(check_star_forest(g, phig).ok);
  const int t = static_cast<int>(std::ceil(1.5 * a));
  const int delta = std::max(t - static_cast<int>(std::ceil(a * 0.5)),
                             static_cast<int>(std::ceil(a * 1.0)));
  CHECK(static_cast<int>(phig.used_colors().size()) <= t + 3 * static_cast<int>(2.1 * delta));

  // multigraphs are rejected
  MultiGraph multi(2, {{0, 1}, {0, 1}});
  try {
    star_forest_decomposition(multi, 0.5, StarMode::sfd, nullptr, RandomStream(16), led, 1,
                              true);
    CHECK(false);
  } catch (const Error& err) {
    CHECK(err.code == "not-simple");
  }
}

TEST_CASE("star_forest_decomposition lsfd mode honors the palettes") {
  RoundLedger led;
  MultiGraph g = gen_random_forest_union(30, 1, 21);
  auto palettes = PaletteSet::full(g.m(), 60);
  auto phi = star_forest_decomposition(g, 0.1, StarMode::lsfd, &palettes, RandomStream(22), led,
                                       1, true);
  CHECK(phi.colored_count() == g.m());
  CHECK(check_star_forest(g, phi).ok);
  for (EdgeId e = 0; e < g.m(); ++e) CHECK(palettes.admissible(e, phi.color_of[e]));

  CHECK_THROWS_AS(star_forest_decomposition(g, 0.1, StarMode::lsfd, nullptr, RandomStream(23),
                                            led, 1, true),
                  Error);
}
