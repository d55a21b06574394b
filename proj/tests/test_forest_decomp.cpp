#include <doctest.h>

#include <numeric>

#include "arbor/forest_decomp.hpp"
#include "arbor/generators.hpp"
#include "arbor/oracles.hpp"
#include "arbor/verify.hpp"

using namespace arbor;

namespace {

PaletteSet random_palettes(const MultiGraph& g, int universe_size, int per_edge, uint64_t seed) {
  std::vector<Color> uni(universe_size);
  std::iota(uni.begin(), uni.end(), 0);
  PaletteSet ps(g.m(), uni);
  RandomStream rs(seed);
  for (EdgeId e = 0; e < g.m(); ++e) {
    auto cols = uni;
    rs.derive("edge", e).shuffle(cols);
    cols.resize(per_edge);
    std::sort(cols.begin(), cols.end());
    ps.q[e] = cols;
  }
  return ps;
}

MultiGraph colored_path(int nverts, PartialColoring& pc) {
  std::vector<std::pair<Vertex, Vertex>> es;
  for (Vertex v = 0; v + 1 < nverts; ++v) es.push_back({v, v + 1});
  MultiGraph g(nverts, std::move(es));
  pc = PartialColoring(g.m());
  for (EdgeId e = 0; e < g.m(); ++e) pc.color_of[e] = 0;
  return g;
}

}  // namespace

TEST_CASE("cut_random_depth prunes one depth class mod N") {
  PartialColoring pc;
  MultiGraph g = colored_path(11, pc);  // path 0-1-...-10, all color 0
  AlgorithmParams ap;
  ap.eps = 1.0;
  ap.a_bound = 10;
  ap.a_star_bound = 1;
  ap.R = 6;  // N = 3
  ap.c_pre = 0;
  auto scope = detail::make_scope(g, {0}, 100, 100);
  RoundLedger led;
  auto state = CutState::init(g, led, 1);
  auto removed = cut_random_depth(g, pc, scope, ap, RandomStream(7), state);
  REQUIRE(!removed.empty());
  const int N = 3;
  // edge e = (v, v+1) sits at tree depth v+1 when rooted at vertex 0
  int j = (removed[0] + 1) % N;
  std::vector<char> hit(g.m(), 0);
  for (EdgeId e : removed) {
    CHECK(static_cast<int>(e + 1) % N == j);
    CHECK(pc.color_of[e] == kUncolored);
    CHECK(state.is_removed[e]);
    hit[e] = 1;
  }
  // the pruned depth class is taken completely
  for (EdgeId e = 0; e < g.m(); ++e)
    if (static_cast<int>(e + 1) % N == j) CHECK(hit[e]);
  // residual monochromatic paths are short
  auto rep = check_forest_decomposition(g, pc);
  CHECK(rep.ok);
  for (EdgeId a = 0; a < g.m(); ++a) {
    if (state.is_removed[a]) continue;
    int run = 1;
    for (EdgeId b = a + 1; b < g.m() && !state.is_removed[b]; ++b) ++run;
    CHECK(run <= 2 * N);
  }
}

TEST_CASE("cut_random_outedge sheds one out-edge per selected vertex up to the cap") {
  MultiGraph g = gen_gnp(60, 0.1, 5);
  PartialColoring pc(g.m());
  AlgorithmParams ap;
  ap.eps = 0.25;
  ap.a_bound = 4;  // cap = 1
  ap.p = 1.0;
  auto scope = detail::make_scope(g, {0}, g.n, g.n);
  RoundLedger led;
  auto state = CutState::init(g, led, -1);
  auto outs = state.J.out_edges(g);
  auto first = cut_random_outedge(g, pc, scope, ap, RandomStream(11), state);
  int with_out = 0;
  for (Vertex v = 0; v < g.n; ++v) with_out += !outs[v].empty();
  CHECK(static_cast<int>(first.size()) == with_out);
  for (Vertex v = 0; v < g.n; ++v) CHECK(state.load[v] <= ap.load_cap());
  // every vertex is at its cap, so a second pass removes nothing
  auto second = cut_random_outedge(g, pc, scope, ap, RandomStream(12), state);
  CHECK(second.empty());
  // removed edges form a low-outdegree witness: pseudo-arboricity <= cap
  std::vector<std::pair<Vertex, Vertex>> es;
  for (EdgeId e : state.removed) es.push_back(g.edges[e]);
  if (!es.empty()) {
    MultiGraph sub(g.n, std::move(es));
    CHECK(pseudo_arboricity(sub).first.value <= ap.load_cap());
  }
}

TEST_CASE("cut_diameter removes a decolored, load-bounded set") {
  MultiGraph g = gen_random_forest_union(100, 3, 2);
  PartialColoring pc(g.m());
  for (EdgeId e = 0; e < g.m(); ++e) pc.color_of[e] = e / 99;  // one color per tree
  AlgorithmParams ap;
  ap.eps = 0.9;
  ap.a_bound = 3;
  ap.T = 4;
  ap.c_pre = 0;
  auto scope = detail::make_scope(g, {0}, g.n, g.n);
  RoundLedger led;
  auto state = CutState::init(g, led, -1);
  auto removed = cut_diameter(g, pc, scope, ap, RandomStream(3), state, led);
  for (EdgeId e : removed) {
    CHECK(pc.color_of[e] == kUncolored);
    CHECK(state.is_removed[e]);
  }
  for (Vertex v = 0; v < g.n; ++v) CHECK(state.load[v] <= ap.load_cap());
  CHECK(check_forest_decomposition(g, pc).ok);
}

TEST_CASE("forest_decomposition_main colors all kept edges into valid list forests") {
  MultiGraph g = gen_random_forest_union(300, 4, 17);
  auto palettes = PaletteSet::full(g.m(), 6);
  auto params = AlgorithmParams::make(g, 0.5, CutStrategy::random_depth);
  RoundLedger led;
  auto res = forest_decomposition_main(g, palettes, params, CutStrategy::random_depth,
                                       RandomStream(23), led);
  CHECK(res.good);
  std::vector<char> removed(g.m(), 0);
  for (EdgeId e : res.leftover) removed[e] = 1;
  for (EdgeId e = 0; e < g.m(); ++e) CHECK(res.coloring.colored(e) == !removed[e]);
  CHECK(check_forest_decomposition(g, res.coloring, &palettes).ok);
  CHECK(led.total_rounds > 0);
  auto rep = res.report(led);
  CHECK(rep.contains("colors"));
  CHECK(rep.contains("leftover_edges"));
  CHECK(rep.contains("good"));
  CHECK(rep.contains("retries"));
  CHECK(rep.contains("rounds"));
  CHECK(rep["strategy"] == "random_depth");
}

TEST_CASE("forest_decomposition_main with the out-edge cut keeps the leftover sparse") {
  MultiGraph g = gen_random_forest_union(200, 4, 9);
  auto palettes = PaletteSet::full(g.m(), 7);
  auto params = AlgorithmParams::make(g, 0.5, CutStrategy::random_outedge);
  RoundLedger led;
  auto res = forest_decomposition_main(g, palettes, params, CutStrategy::random_outedge,
                                       RandomStream(31), led);
  CHECK(res.good);
  CHECK(check_forest_decomposition(g, res.coloring, &palettes).ok);
  for (EdgeId e = 0; e < g.m(); ++e)
    if (!res.coloring.colored(e))
      CHECK(std::find(res.leftover.begin(), res.leftover.end(), e) != res.leftover.end());
  if (!res.leftover.empty()) {
    std::vector<std::pair<Vertex, Vertex>> es;
    for (EdgeId e : res.leftover) es.push_back(g.edges[e]);
    MultiGraph sub(g.n, std::move(es));
    CHECK(pseudo_arboricity(sub).first.value <= params.load_cap());
  }
}

TEST_CASE("combine_fd meets the color budget on the benchmark instances") {
  RoundLedger led;
  MultiGraph fu = gen_random_forest_union(400, 6, 41);
  auto phi = combine_fd(fu, 0.6, RandomStream(1), led, 6);
  CHECK(phi.colored_count() == fu.m());
  CHECK(check_forest_decomposition(fu, phi).ok);
  CHECK(static_cast<int>(phi.used_colors().size()) <= 10);  // ceil((1+0.6)*6)

  MultiGraph pm = gen_path_multigraph(100, 4);
  auto phip = combine_fd(pm, 1.0, RandomStream(2), led, 4);
  CHECK(phip.colored_count() == pm.m());
  CHECK(check_forest_decomposition(pm, phip).ok);
  CHECK(static_cast<int>(phip.used_colors().size()) <= 8);  // (1+1)*4

  // eps * a < 3 is rejected
  CHECK_THROWS_AS(combine_fd(pm, 0.5, RandomStream(3), led, 4), Error);
}

TEST_CASE("vertex_color_split stochastic meets the per-edge guarantees") {
  MultiGraph g = gen_gnp(500, 0.008, 13);
  auto palettes = random_palettes(g, 600, 300, 99);
  const double eps = 0.5;
  RoundLedger led;
  auto split = vertex_color_split(g, palettes, eps, SplitMode::stochastic, RandomStream(5), led);
  const double a_impl = 300 / (1 + eps);
  auto q0 = split.project(g, palettes, 0);
  auto q1 = split.project(g, palettes, 1);
  for (EdgeId e = 0; e < g.m(); ++e) {
    CHECK(static_cast<double>(q0.q[e].size()) >= (1 + eps / 2) * a_impl);
    CHECK(static_cast<double>(q1.q[e].size()) >= eps * a_impl / 20);
    // disjoint and inside the original palette
    std::vector<Color> inter;
    std::set_intersection(q0.q[e].begin(), q0.q[e].end(), q1.q[e].begin(), q1.q[e].end(),
                          std::back_inserter(inter));
    CHECK(inter.empty());
    for (Color c : q1.q[e]) CHECK(palettes.admissible(e, c));
  }
  CHECK(split.retries < 20);
  CHECK(led.total_rounds > 0);
}

TEST_CASE("vertex_color_split independent mode resamples to the guarantees") {
  MultiGraph g = gen_gnp(200, 0.015, 21);
  auto palettes = random_palettes(g, 6000, 3000, 77);
  const double eps = 0.5;
  RoundLedger led;
  auto split =
      vertex_color_split(g, palettes, eps, SplitMode::independent, RandomStream(6), led);
  const double a_impl = 3000 / (1 + eps);
  auto q0 = split.project(g, palettes, 0);
  auto q1 = split.project(g, palettes, 1);
  for (EdgeId e = 0; e < g.m(); ++e) {
    CHECK(static_cast<double>(q0.q[e].size()) >= (1 + eps / 2) * a_impl);
    CHECK(static_cast<double>(q1.q[e].size()) >= eps * eps * a_impl / 200);
  }
}

TEST_CASE("vertex_color_split gives up loudly on impossible palettes") {
  MultiGraph g(2, {{0, 1}});
  PaletteSet one(1, {0});
  one.q[0] = {0};
  RoundLedger led;
  try {
    vertex_color_split(g, one, 0.5, SplitMode::stochastic, RandomStream(8), led);
    CHECK(false);
  } catch (const Error& err) {
    CHECK(err.code == "guarantee-violated-after-retries");
  }
  CHECK_THROWS_AS(vertex_color_split(g, one, 0.0, SplitMode::stochastic, RandomStream(8), led),
                  Error);
}

TEST_CASE("combine_lfd produces a full valid list forest decomposition") {
  MultiGraph g = gen_random_forest_union(120, 3, 33);
  auto palettes = random_palettes(g, 600, 300, 55);
  RoundLedger led;
  auto phi = combine_lfd(g, palettes, 0.5, SplitMode::stochastic, RandomStream(9), led, 3);
  CHECK(phi.colored_count() == g.m());
  auto rep = check_forest_decomposition(g, phi, &palettes);
  CHECK_MESSAGE(rep.ok, (rep.violations.empty() ? "" : rep.violations[0]));
  CHECK(led.total_rounds > 0);
}
