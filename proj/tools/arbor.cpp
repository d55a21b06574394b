// arbor: graph decomposition toolkit CLI.
//
// Subcommands: gen, orient, decompose, star, lfd, verify, bench, oracle.
// All randomness flows from --seed (default 0; the ARBOR_SEED environment
// variable overrides the default when the flag is absent). Given the same
// plan and seed, every artifact is byte-identical; only the bench wall_time
// column varies between runs.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "arbor/augmentation.hpp"
#include "arbor/forest_decomp.hpp"
#include "arbor/generators.hpp"
#include "arbor/multigraph.hpp"
#include "arbor/oracles.hpp"
#include "arbor/orientation.hpp"
#include "arbor/star_forest.hpp"
#include "arbor/verify.hpp"

namespace {

using nlohmann::json;

uint64_t default_seed() {
  if (const char* env = std::getenv("ARBOR_SEED")) return std::strtoull(env, nullptr, 10);
  return 0;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw arbor::Error("io-error", "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& data) {
  if (path.empty() || path == "-") {
    std::cout << data;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw arbor::Error("io-error", "cannot write " + path);
  out << data;
}

arbor::MultiGraph load_graph(const std::string& path) {
  return arbor::from_edge_list(read_file(path));
}

const CLI::Validator kEpsRange(
    [](std::string& s) {
      double v = 0;
      try {
        v = std::stod(s);
      } catch (...) {
        return std::string("eps must be a number");
      }
      if (v <= 0 || v > 1) return std::string("eps must lie in (0, 1], got " + s);
      return std::string();
    },
    "EPS:(0,1]");

int max_class_diameter(const arbor::MultiGraph& g, const arbor::PartialColoring& pc) {
  int d = 0;
  for (const auto& [c, dia] : arbor::color_class_diameters(g, pc)) d = std::max(d, dia);
  return d;
}

// the replayable plan embedded in every artifact
json make_plan(const std::string& command, const json& fields) {
  json plan = fields;
  plan["command"] = command;
  return plan;
}

arbor::PaletteSet synthetic_palettes(const arbor::MultiGraph& g, int universe_size, int per_edge,
                                     uint64_t seed) {
  std::vector<arbor::Color> uni(universe_size);
  std::iota(uni.begin(), uni.end(), 0);
  arbor::PaletteSet ps(g.m(), uni);
  arbor::RandomStream rs(seed);
  for (arbor::EdgeId e = 0; e < g.m(); ++e) {
    auto cols = uni;
    rs.derive("palette", e).shuffle(cols);
    cols.resize(std::min<size_t>(per_edge, cols.size()));
    std::sort(cols.begin(), cols.end());
    ps.q[e] = cols;
  }
  return ps;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graph decomposition toolkit"};
  app.require_subcommand(1);

  // ---- shared option storage -------------------------------------------
  uint64_t seed = default_seed();
  double eps = 0.5;
  std::string in_path, out_path;
  int jobs = 1;

  // ---- gen -------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "generate a graph family to an edge list");
  std::string family;
  double p_l = -1, p_k = -1, p_a = -1, p_t = -1, p_n = -1, p_p = -1;
  gen->add_option("--family", family, "family name")->required();
  gen->add_option("--l", p_l, "path length parameter");
  gen->add_option("--k", p_k, "multiplicity / tree count");
  gen->add_option("--a", p_a, "arboricity parameter");
  gen->add_option("--t", p_t, "bundle parameter");
  gen->add_option("--n", p_n, "vertex count");
  gen->add_option("--p", p_p, "edge probability");
  gen->add_option("--seed", seed, "random seed");
  gen->add_option("-o,--out", out_path, "output path (default stdout)");

  // ---- orient ----------------------------------------------------------
  auto* orient = app.add_subcommand("orient", "low-outdegree orientation");
  orient->add_option("--in", in_path, "input edge list")->required();
  orient->add_option("--eps", eps, "slack parameter")->check(kEpsRange);
  orient->add_option("--seed", seed, "random seed");
  orient->add_option("-o,--out", out_path, "output path (default stdout)");

  // ---- decompose -------------------------------------------------------
  auto* dec = app.add_subcommand("decompose", "forest decomposition");
  std::string algo = "combine-fd";
  std::string strategy = "random_depth";
  dec->add_option("--in", in_path, "input edge list")->required();
  dec->add_option("--eps", eps, "slack parameter")->check(kEpsRange);
  dec->add_option("--algo", algo, "algorithm id")
      ->check(CLI::IsMember({"combine-fd"}));
  dec->add_option("--strategy", strategy, "cut strategy")
      ->check(CLI::IsMember({"diameter", "random_depth", "random_outedge"}));
  dec->add_option("--seed", seed, "random seed");
  dec->add_option("--jobs", jobs, "worker cap (runs are sequential today)");
  dec->add_option("-o,--out", out_path, "output path (default stdout)");

  // ---- lfd -------------------------------------------------------------
  auto* lfd = app.add_subcommand("lfd", "list forest decomposition over synthetic palettes");
  std::string split_mode = "stochastic";
  int universe = 600, per_edge = 300;
  lfd->add_option("--in", in_path, "input edge list")->required();
  lfd->add_option("--eps", eps, "slack parameter")->check(kEpsRange);
  lfd->add_option("--mode", split_mode, "vertex-color split mode")
      ->check(CLI::IsMember({"stochastic", "independent"}));
  lfd->add_option("--universe", universe, "palette universe size");
  lfd->add_option("--palette-size", per_edge, "colors per edge");
  lfd->add_option("--seed", seed, "random seed");
  lfd->add_option("-o,--out", out_path, "output path (default stdout)");

  // ---- star ------------------------------------------------------------
  auto* star = app.add_subcommand("star", "star-forest decomposition (simple graphs)");
  std::string star_mode = "sfd";
  int star_colors = 60;
  bool strict = false;
  star->add_option("--in", in_path, "input edge list")->required();
  star->add_option("--eps", eps, "slack parameter")->check(kEpsRange);
  star->add_option("--mode", star_mode, "sfd or lsfd")->check(CLI::IsMember({"sfd", "lsfd"}));
  star->add_option("--colors", star_colors, "palette universe size (lsfd mode)");
  star->add_flag("--strict", strict, "enforce the full parameter preconditions");
  star->add_option("--seed", seed, "random seed");
  star->add_option("-o,--out", out_path, "output path (default stdout)");

  // ---- verify ----------------------------------------------------------
  auto* ver = app.add_subcommand("verify", "check a stored coloring against a graph");
  std::string coloring_path, kind = "forest";
  ver->add_option("--in", in_path, "input edge list")->required();
  ver->add_option("--coloring", coloring_path, "coloring JSON (artifact or bare)")->required();
  ver->add_option("--kind", kind, "forest or star")->check(CLI::IsMember({"forest", "star"}));
  ver->add_option("-o,--out", out_path, "output path (default stdout)");

  // ---- bench -----------------------------------------------------------
  auto* bench = app.add_subcommand("bench", "benchmark CSV over the calibration family");
  long long min_n = 256, max_n = 16384;
  long long trees = 12;  // keeps eps*k >= 3 for every benchmark eps
  bench->add_option("--min-n", min_n, "smallest size (power of two)");
  bench->add_option("--max-n", max_n, "largest size (power of two)");
  bench->add_option("--k", trees, "forest-union tree count");
  bench->add_option("--seed", seed, "random seed");
  bench->add_option("-o,--out", out_path, "output path (default stdout)");

  // ---- oracle ----------------------------------------------------------
  auto* orc = app.add_subcommand("oracle", "exact density oracles");
  bool force_exact = false;
  orc->add_option("--in", in_path, "input edge list")->required();
  orc->add_flag("--exact", force_exact, "force the exponential arboricity oracle");
  orc->add_option("-o,--out", out_path, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      arbor::GeneratorSpec spec;
      spec.family = family;
      spec.seed = seed;
      if (p_l >= 0) spec.params["l"] = p_l;
      if (p_k >= 0) spec.params["k"] = p_k;
      if (p_a >= 0) spec.params["a"] = p_a;
      if (p_t >= 0) spec.params["t"] = p_t;
      if (p_n >= 0) spec.params["n"] = p_n;
      if (p_p >= 0) spec.params["p"] = p_p;
      write_output(out_path, arbor::to_edge_list(arbor::generate(spec)));
      return 0;
    }

    if (*orient) {
      auto g = load_graph(in_path);
      arbor::RoundLedger ledger;
      auto psi = arbor::low_outdegree_orientation(g, eps, arbor::RandomStream(seed), ledger);
      int a_star = arbor::pseudo_arboricity(g).first.value;
      int bound = static_cast<int>(std::ceil(a_star * (1 + eps)));
      auto rep = arbor::check_orientation(g, psi, bound);
      json out = {
          {"plan", make_plan("orient", {{"in", in_path}, {"eps", eps}, {"seed", seed}})},
          {"orientation", std::vector<int>(psi.toward_v.begin(), psi.toward_v.end())},
          {"max_outdegree", psi.max_outdegree(g)},
          {"bound", bound},
          {"report", rep.to_json()},
          {"rounds", ledger.to_json()}};
      write_output(out_path, out.dump(2) + "\n");
      return rep.ok ? 0 : 1;
    }

    if (*dec) {
      auto g = load_graph(in_path);
      arbor::CutStrategy cs = strategy == "diameter"       ? arbor::CutStrategy::diameter
                              : strategy == "random_depth" ? arbor::CutStrategy::random_depth
                                                           : arbor::CutStrategy::random_outedge;
      arbor::RoundLedger ledger;
      auto phi = arbor::combine_fd(g, eps, arbor::RandomStream(seed), ledger, -1, cs);
      auto rep = arbor::check_forest_decomposition(g, phi);
      json out = {{"plan", make_plan("decompose", {{"in", in_path},
                                                   {"eps", eps},
                                                   {"algo", algo},
                                                   {"strategy", strategy},
                                                   {"seed", seed}})},
                  {"coloring", phi.to_json()},
                  {"colors", static_cast<int>(phi.used_colors().size())},
                  {"max_diameter", max_class_diameter(g, phi)},
                  {"report", rep.to_json()},
                  {"rounds", ledger.to_json()}};
      write_output(out_path, out.dump(2) + "\n");
      return rep.ok ? 0 : 1;
    }

    if (*lfd) {
      auto g = load_graph(in_path);
      auto palettes = synthetic_palettes(g, universe, per_edge, seed + 0x9e3779b9ULL);
      arbor::SplitMode m = split_mode == "stochastic" ? arbor::SplitMode::stochastic
                                                      : arbor::SplitMode::independent;
      arbor::RoundLedger ledger;
      auto phi = arbor::combine_lfd(g, palettes, eps, m, arbor::RandomStream(seed), ledger);
      auto rep = arbor::check_forest_decomposition(g, phi, &palettes);
      json out = {{"plan", make_plan("lfd", {{"in", in_path},
                                             {"eps", eps},
                                             {"mode", split_mode},
                                             {"universe", universe},
                                             {"palette_size", per_edge},
                                             {"seed", seed}})},
                  {"coloring", phi.to_json()},
                  {"colors", static_cast<int>(phi.used_colors().size())},
                  {"report", rep.to_json()},
                  {"rounds", ledger.to_json()}};
      write_output(out_path, out.dump(2) + "\n");
      return rep.ok ? 0 : 1;
    }

    if (*star) {
      auto g = load_graph(in_path);
      arbor::RoundLedger ledger;
      arbor::PartialColoring phi;
      if (star_mode == "sfd") {
        phi = arbor::star_forest_decomposition(g, eps, arbor::StarMode::sfd, nullptr,
                                               arbor::RandomStream(seed), ledger, -1, !strict);
      } else {
        auto palettes = arbor::PaletteSet::full(g.m(), star_colors);
        phi = arbor::star_forest_decomposition(g, eps, arbor::StarMode::lsfd, &palettes,
                                               arbor::RandomStream(seed), ledger, -1, !strict);
      }
      auto rep = arbor::check_star_forest(g, phi);
      json out = {{"plan", make_plan("star", {{"in", in_path},
                                              {"eps", eps},
                                              {"mode", star_mode},
                                              {"colors", star_colors},
                                              {"strict", strict},
                                              {"seed", seed}})},
                  {"coloring", phi.to_json()},
                  {"colors", static_cast<int>(phi.used_colors().size())},
                  {"max_diameter", max_class_diameter(g, phi)},
                  {"report", rep.to_json()},
                  {"rounds", ledger.to_json()}};
      write_output(out_path, out.dump(2) + "\n");
      return rep.ok ? 0 : 1;
    }

    if (*ver) {
      auto g = load_graph(in_path);
      json j = json::parse(read_file(coloring_path));
      if (j.contains("coloring")) j = j["coloring"];
      auto pc = arbor::PartialColoring::from_json(j);
      if (static_cast<int>(pc.color_of.size()) != g.m())
        throw arbor::Error("size-mismatch", "coloring covers " +
                                                std::to_string(pc.color_of.size()) +
                                                " edges, graph has " + std::to_string(g.m()));
      auto rep = kind == "star" ? arbor::check_star_forest(g, pc)
                                : arbor::check_forest_decomposition(g, pc);
      write_output(out_path, rep.to_json().dump(2) + "\n");
      return rep.ok ? 0 : 1;
    }

    if (*bench) {
      std::ostringstream csv;
      csv << "n,eps,algorithm,colors,max_diameter,rounds,wall_time\n";
      for (long long n = min_n; n <= max_n; n *= 2) {
        for (double e : {1.0, 0.5, 0.25}) {
          auto g = arbor::gen_random_forest_union(n, trees, seed + n);
          arbor::RoundLedger ledger;
          auto start = std::chrono::steady_clock::now();
          auto phi = arbor::combine_fd(g, e, arbor::RandomStream(seed), ledger,
                                       static_cast<int>(trees));
          double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                            .count();
          if (!arbor::check_forest_decomposition(g, phi).ok)
            throw arbor::Error("bench-invalid", "invalid decomposition at n=" +
                                                    std::to_string(n));
          csv << n << ',' << e << ",combine-fd," << phi.used_colors().size() << ','
              << max_class_diameter(g, phi) << ',' << ledger.total_rounds << ',' << secs
              << '\n';
        }
      }
      write_output(out_path, csv.str());
      return 0;
    }

    if (*orc) {
      auto g = load_graph(in_path);
      auto [cert, psi] = arbor::pseudo_arboricity(g);
      auto [degen, order] = arbor::degeneracy(g);
      (void)order;
      json out = {{"pseudo_arboricity", cert.value},
                  {"max_orientation_outdegree", psi.max_outdegree(g)},
                  {"degeneracy", degen}};
      if (force_exact || g.n <= arbor::kExactArboricityLimit)
        out["arboricity"] = arbor::nash_williams_arboricity(g).value;
      else
        out["arboricity"] = nullptr;
      write_output(out_path, out.dump(2) + "\n");
      return 0;
    }
  } catch (const arbor::Error& err) {
    std::cerr << "error [" << err.code << "]: " << err.what() << "\n";
    return 1;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 2;
}
