#pragma once
// Ground-truth checkers and the exhaustive min-diameter oracle.

#include <map>
#include <string>
#include <vector>

#include "coloring.hpp"
#include "multigraph.hpp"

namespace arbor {

struct ValidityReport {
  std::string kind;
  bool ok = true;
  std::vector<std::string> violations;
  std::map<std::string, double> metrics;

  void violate(const std::string& what) {
    ok = false;
    violations.push_back(what);
  }

  nlohmann::json to_json() const {
    return {{"kind", kind}, {"ok", ok}, {"violations", violations}, {"metrics", metrics}};
  }
};

// per-color union-find cycle detection, optional palette membership
inline ValidityReport check_forest_decomposition(const MultiGraph& g, const PartialColoring& pc,
                                                 const PaletteSet* palettes = nullptr) {
  ValidityReport rep;
  rep.kind = "forest-decomposition";
  auto by = edges_by_color(pc);
  int colors_used = 0;
  for (Color c = 0; c < static_cast<Color>(by.size()); ++c) {
    if (by[c].empty()) continue;
    ++colors_used;
    DSU dsu(g.n);
    for (EdgeId e : by[c]) {
      if (g.is_loop(e) || !dsu.unite(g.edges[e].first, g.edges[e].second)) {
        rep.violate("color " + std::to_string(c) + ": cycle closed by edge " + std::to_string(e));
        break;
      }
    }
  }
  if (palettes) {
    for (EdgeId e = 0; e < g.m(); ++e)
      if (pc.colored(e) && !palettes->admissible(e, pc.color_of[e]))
        rep.violate("edge " + std::to_string(e) + ": color " + std::to_string(pc.color_of[e]) +
                    " not in palette");
  }
  rep.metrics["colors"] = colors_used;
  rep.metrics["colored_edges"] = pc.colored_count();
  return rep;
}

// every monochromatic component must have a vertex incident to all its edges
inline ValidityReport check_star_forest(const MultiGraph& g, const PartialColoring& pc) {
  ValidityReport rep = check_forest_decomposition(g, pc);
  rep.kind = "star-forest";
  auto by = edges_by_color(pc);
  for (Color c = 0; c < static_cast<Color>(by.size()); ++c) {
    if (by[c].empty()) continue;
    DSU dsu(g.n);
    for (EdgeId e : by[c]) dsu.unite(g.edges[e].first, g.edges[e].second);
    // component edge count vs. max vertex degree inside the class
    std::map<int, int> comp_edges;
    std::vector<int> class_deg(g.n, 0);
    for (EdgeId e : by[c]) {
      comp_edges[dsu.find(g.edges[e].first)]++;
      class_deg[g.edges[e].first]++;
      class_deg[g.edges[e].second]++;
    }
    std::map<int, int> comp_center_deg;
    for (EdgeId e : by[c]) {
      int root = dsu.find(g.edges[e].first);
      comp_center_deg[root] = std::max(
          {comp_center_deg[root], class_deg[g.edges[e].first], class_deg[g.edges[e].second]});
    }
    for (auto [root, cnt] : comp_edges)
      if (comp_center_deg[root] < cnt)
        rep.violate("color " + std::to_string(c) + ": component at " + std::to_string(root) +
                    " has no all-incident center");
  }
  return rep;
}

// exact per-color max tree diameter (double BFS per component)
inline std::map<Color, int> color_class_diameters(const MultiGraph& g, const PartialColoring& pc) {
  auto forest = check_forest_decomposition(g, pc);
  if (!forest.ok) throw Error("cyclic-class", "color_class_diameters: " + forest.violations[0]);
  auto by = edges_by_color(pc);
  std::map<Color, int> result;
  for (Color c = 0; c < static_cast<Color>(by.size()); ++c) {
    if (by[c].empty()) continue;
    std::vector<std::vector<Vertex>> adjc(g.n);
    std::vector<Vertex> touched;
    for (EdgeId e : by[c]) {
      auto [u, v] = g.edges[e];
      adjc[u].push_back(v);
      adjc[v].push_back(u);
      touched.push_back(u);
      touched.push_back(v);
    }
    std::vector<int> seen(g.n, 0);
    auto far = [&](Vertex s) {
      // BFS in the class, returns (farthest vertex, distance) and marks seen
      std::vector<std::pair<Vertex, int>> q{{s, 0}};
      std::vector<int> dist(g.n, -1);
      dist[s] = 0;
      std::pair<Vertex, int> best{s, 0};
      for (size_t i = 0; i < q.size(); ++i) {
        auto [v, d] = q[i];
        seen[v] = 1;
        if (d > best.second) best = {v, d};
        for (Vertex w : adjc[v])
          if (dist[w] < 0) {
            dist[w] = d + 1;
            q.push_back({w, d + 1});
          }
      }
      return best;
    };
    int diam = 0;
    for (Vertex s : touched)
      if (!seen[s]) {
        auto [far_v, _] = far(s);
        auto [_v2, d2] = far(far_v);
        diam = std::max(diam, d2);
      }
    result[c] = diam;
  }
  return result;
}

inline ValidityReport check_orientation(const MultiGraph& g, const Orientation& psi, int k,
                                        bool require_acyclic = false) {
  ValidityReport rep;
  rep.kind = "orientation";
  auto od = psi.outdegrees(g);
  int mx = 0;
  for (Vertex v = 0; v < g.n; ++v) {
    mx = std::max(mx, od[v]);
    if (od[v] > k)
      rep.violate("vertex " + std::to_string(v) + ": outdegree " + std::to_string(od[v]) + " > " +
                  std::to_string(k));
  }
  rep.metrics["max_outdegree"] = mx;
  if (require_acyclic) {
    // Kahn on the directed multigraph (loops break acyclicity by definition)
    std::vector<int> indeg(g.n, 0);
    for (EdgeId e = 0; e < g.m(); ++e) indeg[psi.head(g, e)]++;
    auto outs = psi.out_edges(g);
    std::vector<Vertex> q;
    for (Vertex v = 0; v < g.n; ++v)
      if (indeg[v] == 0) q.push_back(v);
    size_t done = 0;
    while (done < q.size()) {
      Vertex v = q[done++];
      for (EdgeId e : outs[v])
        if (--indeg[psi.head(g, e)] == 0) q.push_back(psi.head(g, e));
    }
    if (static_cast<int>(q.size()) != g.n) rep.violate("orientation has a directed cycle");
    rep.metrics["acyclic"] = static_cast<int>(q.size()) == g.n ? 1 : 0;
  }
  return rep;
}

// enumerate all k-colorings (first edge pinned to color 0), keep forest-valid
// ones, minimize the max tree diameter
inline int exhaustive_min_diameter_fd(const MultiGraph& g, int k,
                                      long long budget = 100000000LL) {
  if (g.m() == 0) return 0;
  long long count = 1;
  for (int i = 1; i < g.m(); ++i) {
    count *= k;
    if (count > budget) throw Error("budget-exceeded", "exhaustive_min_diameter_fd");
  }
  PartialColoring pc(g.m());
  pc.color_of[0] = 0;
  int best = -1;
  std::vector<int> digits(g.m(), 0);
  while (true) {
    for (EdgeId e = 1; e < g.m(); ++e) pc.color_of[e] = digits[e];
    if (check_forest_decomposition(g, pc).ok) {
      int diam = 0;
      for (auto [c, d] : color_class_diameters(g, pc)) diam = std::max(diam, d);
      if (best < 0 || diam < best) best = diam;
    }
    int i = 1;
    while (i < g.m() && digits[i] == k - 1) digits[i++] = 0;
    if (i >= g.m()) break;
    digits[i]++;
  }
  if (best < 0) throw Error("no-valid-coloring", "exhaustive_min_diameter_fd: no k-FD exists");
  return best;
}

}  // namespace arbor
