#pragma once
// Augmenting sequences over partial list-forest decompositions: fundamental
// paths, the A1-A5 validity report, augmentation application, layered
// discovery with backtracking, shortcutting, and batch coloring.

#include <algorithm>
#include <cmath>
#include <vector>

#include "coloring.hpp"
#include "multigraph.hpp"
#include "runtime.hpp"
#include "verify.hpp"

namespace arbor {

struct AugmentingSequence {
  std::vector<EdgeId> edges;
  Color final_color = kUncolored;

  nlohmann::json to_json() const { return {{"edges", edges}, {"color", final_color}}; }
};

namespace detail {

// per-color adjacency snapshot; colors are whatever ids the coloring uses
struct ColorForests {
  int n = 0;
  // adj[c][v] = list of (neighbor, edge) in color class c
  std::vector<std::vector<std::vector<std::pair<Vertex, EdgeId>>>> adj;

  ColorForests(const MultiGraph& g, const PartialColoring& pc) : n(g.n) {
    int top = pc.max_color();
    adj.resize(top + 1);
    for (auto& a : adj) a.resize(g.n);
    for (EdgeId e = 0; e < g.m(); ++e) {
      Color c = pc.color_of[e];
      if (c == kUncolored) continue;
      auto [u, v] = g.edges[e];
      adj[c][u].push_back({v, e});
      adj[c][v].push_back({u, e});
    }
  }

  // u-v path in class c as an edge list, or empty if disconnected
  std::vector<EdgeId> path(Vertex u, Vertex v, Color c) const {
    if (c < 0 || c >= static_cast<Color>(adj.size())) return {};
    std::vector<EdgeId> via(n, -2);  // parent edge in the BFS tree; -2 unseen
    std::vector<Vertex> prev(n, -1);
    std::vector<Vertex> q{u};
    via[u] = -1;
    for (size_t i = 0; i < q.size() && via[v] == -2; ++i)
      for (auto [w, e] : adj[c][q[i]])
        if (via[w] == -2) {
          via[w] = e;
          prev[w] = q[i];
          q.push_back(w);
        }
    if (via[v] == -2) return {};
    std::vector<EdgeId> out;
    for (Vertex x = v; via[x] >= 0; x = prev[x]) out.push_back(via[x]);
    std::reverse(out.begin(), out.end());
    return out;
  }
};

}  // namespace detail

// The unique path between e's endpoints in color class c. Normative
// convention: a c-colored edge is its own single-edge path. Empty result
// means the endpoints lie in different c-components.
inline std::vector<EdgeId> fundamental_path(const MultiGraph& g, const PartialColoring& pc,
                                            EdgeId e, Color c) {
  if (pc.color_of[e] == c) return {e};
  auto [u, v] = g.edges[e];
  // forest validity of class c (cheap union-find sweep)
  std::vector<std::vector<std::pair<Vertex, EdgeId>>> adjc(g.n);
  {
    DSU dsu(g.n);
    for (EdgeId f = 0; f < g.m(); ++f) {
      if (pc.color_of[f] != c) continue;
      auto [x, y] = g.edges[f];
      if (g.is_loop(f) || !dsu.unite(x, y))
        throw Error("cyclic-class", "fundamental_path: color " + std::to_string(c));
      adjc[x].push_back({y, f});
      adjc[y].push_back({x, f});
    }
  }
  std::vector<EdgeId> via(g.n, -2);
  std::vector<Vertex> prev(g.n, -1);
  std::vector<Vertex> q{u};
  via[u] = -1;
  for (size_t i = 0; i < q.size() && via[v] == -2; ++i)
    for (auto [w, f] : adjc[q[i]])
      if (via[w] == -2) {
        via[w] = f;
        prev[w] = q[i];
        q.push_back(w);
      }
  if (via[v] == -2) return {};
  std::vector<EdgeId> out;
  for (Vertex x = v; via[x] >= 0; x = prev[x]) out.push_back(via[x]);
  std::reverse(out.begin(), out.end());
  return out;
}

inline ValidityReport is_augmenting_sequence(const MultiGraph& g, const PartialColoring& pc,
                                             const PaletteSet& palettes,
                                             const AugmentingSequence& seq) {
  ValidityReport rep;
  rep.kind = "augmenting-sequence";
  const auto& es = seq.edges;
  const int l = static_cast<int>(es.size());
  if (l == 0) {
    rep.violate("empty sequence");
    return rep;
  }
  auto in_path = [&](EdgeId target, EdgeId base, Color c) {
    auto p = fundamental_path(g, pc, base, c);
    return std::find(p.begin(), p.end(), target) != p.end();
  };
  if (pc.colored(es[0])) rep.violate("A1: edge " + std::to_string(es[0]) + " is colored");
  for (int i = 1; i < l; ++i)
    if (!pc.colored(es[i]) || !in_path(es[i], es[i - 1], pc.color_of[es[i]]))
      rep.violate("A2: index " + std::to_string(i));
  for (int i = 0; i < l; ++i) {
    if (!pc.colored(es[i])) continue;
    for (int j = 0; j < i - 1; ++j)
      if (in_path(es[i], es[j], pc.color_of[es[i]]))
        rep.violate("A3: index " + std::to_string(i) + " vs " + std::to_string(j));
  }
  if (!fundamental_path(g, pc, es[l - 1], seq.final_color).empty())
    rep.violate("A4: final cycle nonempty");
  for (int i = 0; i + 1 < l; ++i)
    if (!pc.colored(es[i + 1]) || !palettes.admissible(es[i], pc.color_of[es[i + 1]]))
      rep.violate("A5: index " + std::to_string(i));
  if (!palettes.admissible(es[l - 1], seq.final_color)) rep.violate("A5: final color");
  return rep;
}

// shift colors down the sequence: psi'(e_i) = psi(e_{i+1}), psi'(e_l) = c
inline PartialColoring apply_augmentation(const MultiGraph& g, const PartialColoring& pc,
                                          const PaletteSet& palettes,
                                          const AugmentingSequence& seq) {
  auto rep = is_augmenting_sequence(g, pc, palettes, seq);
  if (!rep.ok) throw Error("invalid-sequence", "apply_augmentation: " + rep.violations[0]);
  PartialColoring out = pc;
  const auto& es = seq.edges;
  for (size_t i = 0; i + 1 < es.size(); ++i) out.color_of[es[i]] = pc.color_of[es[i + 1]];
  out.color_of[es.back()] = seq.final_color;
  return out;
}

struct Discovery {
  AugmentingSequence seq;
  std::vector<int> layer_sizes;  // |E_1|, |E_2|, ... (completed layers only)
};

// Layered discovery of an almost augmenting sequence (A1, A2, A4, A5).
// Expansion order is lexicographic by (layer, EdgeId, palette position).
inline Discovery find_almost_augmenting(const MultiGraph& g, const PartialColoring& pc,
                                        const PaletteSet& palettes, EdgeId e_init,
                                        int radius_cap) {
  if (pc.colored(e_init))
    throw Error("not-uncolored", "find_almost_augmenting: e_init is colored");
  detail::ColorForests forests(g, pc);
  auto cycle = [&](EdgeId e, Color c) -> std::vector<EdgeId> {
    if (pc.color_of[e] == c) return {e};
    auto p = forests.path(g.edges[e].first, g.edges[e].second, c);
    return p;
  };

  std::vector<char> in_E(g.m(), 0);
  std::vector<EdgeId> pi(g.m(), -1);
  std::vector<int> layer_of(g.m(), 0);
  std::vector<char> in_V(g.n, 0);
  std::vector<EdgeId> frontier_order{e_init};
  layer_of[e_init] = 1;
  in_E[e_init] = 1;
  in_V[g.edges[e_init].first] = in_V[g.edges[e_init].second] = 1;

  Discovery d;
  auto backtrack = [&](EdgeId e, Color c) {
    std::vector<EdgeId> chain;
    for (EdgeId x = e; x >= 0; x = pi[x]) chain.push_back(x);
    std::reverse(chain.begin(), chain.end());
    d.seq.edges = std::move(chain);
    d.seq.final_color = c;
  };

  for (int iter = 1; iter <= radius_cap; ++iter) {
    size_t layer_end = frontier_order.size();
    std::vector<EdgeId> snapshot(frontier_order.begin(), frontier_order.begin() + layer_end);
    std::sort(snapshot.begin(), snapshot.end(), [&](EdgeId a, EdgeId b) {
      return std::pair(layer_of[a], a) < std::pair(layer_of[b], b);
    });
    std::vector<char> v_snapshot = in_V;
    d.layer_sizes.push_back(static_cast<int>(layer_end));
    for (EdgeId e : snapshot) {
      for (Color c : palettes.q[e]) {
        auto cyc = cycle(e, c);
        if (cyc.empty()) {
          backtrack(e, c);
          return d;
        }
        for (EdgeId ep : cyc) {
          if (in_E[ep]) continue;
          auto [x, y] = g.edges[ep];
          if (!v_snapshot[x] && !v_snapshot[y]) continue;
          in_E[ep] = 1;
          pi[ep] = e;
          layer_of[ep] = iter + 1;
          frontier_order.push_back(ep);
          in_V[x] = in_V[y] = 1;
        }
      }
    }
  }
  throw Error("radius-cap-exceeded",
              "find_almost_augmenting: no empty cycle within " + std::to_string(radius_cap) +
                  " layers from edge " + std::to_string(e_init));
}

// Splice out detours until A3 holds; the result is a subsequence.
inline AugmentingSequence shortcut(const MultiGraph& g, const PartialColoring& pc,
                                   const AugmentingSequence& input) {
  AugmentingSequence seq = input;
  bool changed = true;
  while (changed) {
    changed = false;
    const auto& es = seq.edges;
    const int l = static_cast<int>(es.size());
    for (int j = 0; j < l && !changed; ++j) {
      for (int i = j + 2; i < l && !changed; ++i) {
        if (!pc.colored(es[i])) continue;
        auto p = fundamental_path(g, pc, es[j], pc.color_of[es[i]]);
        if (std::find(p.begin(), p.end(), es[i]) != p.end()) {
          std::vector<EdgeId> next(es.begin(), es.begin() + j + 1);
          next.insert(next.end(), es.begin() + i, es.end());
          seq.edges = std::move(next);
          changed = true;
        }
      }
    }
  }
  return seq;
}

// Color every uncolored edge of L by discover -> shortcut -> apply, in
// EdgeId order. Edges outside the discovery radius are untouched.
inline PartialColoring color_edge_set(const MultiGraph& g, PartialColoring pc,
                                      const PaletteSet& palettes, const std::vector<EdgeId>& L,
                                      RoundLedger& ledger, double eps = 0.1,
                                      int radius_cap = -1) {
  if (radius_cap < 0) {
    double layers = std::log(std::max(2, g.n)) / std::log1p(eps);
    radius_cap = 2 * (static_cast<int>(std::ceil(layers)) + 2);
  }
  std::vector<EdgeId> targets = L;
  std::sort(targets.begin(), targets.end());
  int augmentations = 0;
  for (EdgeId e : targets) {
    if (pc.colored(e)) continue;
    Discovery d;
    try {
      d = find_almost_augmenting(g, pc, palettes, e, radius_cap);
    } catch (const Error& err) {
      throw Error(err.code, "color_edge_set stuck on edge " + std::to_string(e) + ": " +
                                err.what());
    }
    auto seq = shortcut(g, pc, d.seq);
    pc = apply_augmentation(g, pc, palettes, seq);
    ++augmentations;
  }
  ledger.charge("color_edge_set", radius_cap, std::max(1, augmentations));
  return pc;
}

}  // namespace arbor
