#pragma once
// Partial edge colorings and per-edge palettes.

#include <algorithm>
#include <vector>

#include <json.hpp>

#include "multigraph.hpp"

namespace arbor {

using Color = int;
inline constexpr Color kUncolored = -1;

struct PartialColoring {
  std::vector<Color> color_of;  // per EdgeId; -1 = uncolored

  PartialColoring() = default;
  explicit PartialColoring(int m) : color_of(m, kUncolored) {}

  bool colored(EdgeId e) const { return color_of[e] != kUncolored; }

  int colored_count() const {
    return static_cast<int>(std::count_if(color_of.begin(), color_of.end(),
                                          [](Color c) { return c != kUncolored; }));
  }

  std::vector<Color> used_colors() const {
    std::vector<Color> cs;
    for (Color c : color_of)
      if (c != kUncolored) cs.push_back(c);
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    return cs;
  }

  Color max_color() const {
    Color mx = -1;
    for (Color c : color_of) mx = std::max(mx, c);
    return mx;
  }

  nlohmann::json to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (Color c : color_of) {
      if (c == kUncolored)
        arr.push_back(nullptr);
      else
        arr.push_back(c);
    }
    return {{"colors", static_cast<int>(used_colors().size())}, {"assignment", arr}};
  }

  static PartialColoring from_json(const nlohmann::json& j) {
    PartialColoring pc;
    for (const auto& x : j.at("assignment"))
      pc.color_of.push_back(x.is_null() ? kUncolored : x.get<Color>());
    return pc;
  }
};

struct PaletteSet {
  std::vector<Color> universe;             // sorted, duplicate free
  std::vector<std::vector<Color>> q;       // per EdgeId admissible colors

  PaletteSet() = default;
  PaletteSet(int m, std::vector<Color> univ) : universe(std::move(univ)), q(m) {
    std::sort(universe.begin(), universe.end());
    universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
  }

  // every edge gets the full universe {0..k-1}
  static PaletteSet full(int m, int k) {
    std::vector<Color> u(k);
    for (int i = 0; i < k; ++i) u[i] = i;
    PaletteSet p(m, u);
    for (auto& lst : p.q) lst = u;
    return p;
  }

  bool admissible(EdgeId e, Color c) const {
    return std::binary_search(q[e].begin(), q[e].end(), c);
  }

  void canonicalize() {
    for (auto& lst : q) {
      std::sort(lst.begin(), lst.end());
      lst.erase(std::unique(lst.begin(), lst.end()), lst.end());
    }
  }

  nlohmann::json to_json() const {
    return {{"universe", universe}, {"palettes", q}};
  }
  static PaletteSet from_json(const nlohmann::json& j) {
    PaletteSet p;
    p.universe = j.at("universe").get<std::vector<Color>>();
    p.q = j.at("palettes").get<std::vector<std::vector<Color>>>();
    return p;
  }
};

// per-color edge lists, rebuilt on demand by checkers and path queries
inline std::vector<std::vector<EdgeId>> edges_by_color(const PartialColoring& pc) {
  std::vector<std::vector<EdgeId>> by;
  for (EdgeId e = 0; e < static_cast<EdgeId>(pc.color_of.size()); ++e) {
    Color c = pc.color_of[e];
    if (c == kUncolored) continue;
    if (c >= static_cast<Color>(by.size())) by.resize(c + 1);
    by[c].push_back(e);
  }
  return by;
}

}  // namespace arbor
