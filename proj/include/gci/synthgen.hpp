// Copyright 2026 The GCI Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Generators for the three synthetic colored Barabasi-Albert benchmarks.
//
// Every graph is built from its own random stream, indexed by graph id, so
// content never depends on generation order. Subset choices (which graphs get
// a square, which get a purple node) come from separate recipe-level streams.

#include <cstdint>
#include <string>
#include <vector>

#include "gci/common.hpp"
#include "gci/graph.hpp"

namespace gci::synth {

struct RecipeConfig {
  std::size_t count = 1000;
  std::size_t nodes_min = 8;
  std::size_t nodes_max = 15;
  std::uint64_t seed = 0;

  void check() const {
    if (count < 4) throw Error(Errc::kInvalidParams, "count must be >= 4");
    if (nodes_min < 2 || nodes_min > nodes_max)
      throw Error(Errc::kInvalidParams, "need 2 <= nodes_min <= nodes_max");
  }
};

// Stream ids for recipe-level draws; graph streams use the graph id.
inline constexpr std::uint64_t kSquareSubsetStream = 1ULL << 40;
inline constexpr std::uint64_t kPurpleSubsetStream = 2ULL << 40;
inline constexpr std::uint64_t kDecorateStream = 3ULL << 40;

/// Preferential attachment: a star on m+1 nodes, then each new node links to
/// m distinct existing nodes drawn proportionally to degree.
inline Graph barabasi_albert(std::size_t n, std::size_t m, Rng& rng,
                             Color color = Color::kBlue) {
  if (m < 1 || n <= m) throw Error(Errc::kInvalidParams, "barabasi_albert needs n > m >= 1");
  Graph g;
  g.nodes.assign(n, color);
  // Each node appears once per incident edge end.
  std::vector<int> ends;
  for (std::size_t i = 1; i <= m; ++i) {
    g.add_edge(0, static_cast<int>(i));
    ends.push_back(0);
    ends.push_back(static_cast<int>(i));
  }
  std::vector<int> targets;
  for (std::size_t v = m + 1; v < n; ++v) {
    targets.clear();
    while (targets.size() < m) {
      const int t = ends[rng.below(ends.size())];
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
    }
    for (int t : targets) {
      g.add_edge(t, static_cast<int>(v));
      ends.push_back(t);
      ends.push_back(static_cast<int>(v));
    }
  }
  return g;
}

/// Appends a 4-cycle in the graph's majority color, bridged by one edge from
/// a random square node to a random original node.
inline Graph attach_square(const Graph& graph, Rng& rng) {
  if (graph.nodes.empty()) throw Error(Errc::kEmptyGraph, "attach_square on empty graph");
  Graph g = graph;
  const Color c = majority_color(graph);
  const int base = static_cast<int>(g.nodes.size());
  for (int i = 0; i < 4; ++i) g.nodes.emplace_back(c);
  for (int i = 0; i < 4; ++i) g.add_edge(base + i, base + (i + 1) % 4);
  const int from = base + static_cast<int>(rng.below(4));
  const int to = static_cast<int>(rng.below(static_cast<std::uint64_t>(base)));
  g.add_edge(to, from);
  return g;
}

inline Graph recolor_random_node(const Graph& graph, Color color, Rng& rng) {
  if (graph.nodes.empty()) throw Error(Errc::kEmptyGraph, "recolor_random_node on empty graph");
  Graph g = graph;
  g.nodes[rng.below(g.nodes.size())] = color;
  return g;
}

namespace detail {

inline Graph base_graph(const RecipeConfig& cfg, std::size_t id, Color color, int label) {
  Rng rng(cfg.seed, id);
  const auto n = static_cast<std::size_t>(
      rng.between(static_cast<long>(cfg.nodes_min), static_cast<long>(cfg.nodes_max)));
  Graph g = barabasi_albert(n, 1, rng, color);
  g.label = label;
  return g;
}

inline std::vector<char> choose_subset(const std::vector<std::size_t>& members,
                                       std::size_t size, std::size_t total,
                                       Rng rng) {
  std::vector<char> chosen(total, 0);
  for (std::size_t pick : rng.sample_without_replacement(members.size(), size))
    chosen[members[pick]] = 1;
  return chosen;
}

}  // namespace detail

/// Half blue (label 0), a quarter red and the rest yellow (both label 1).
inline Dataset recipe_colors3(const RecipeConfig& cfg) {
  cfg.check();
  Dataset ds;
  ds.task_name = "colors3";
  ds.num_classes = 2;
  const std::size_t blue = cfg.count / 2;
  const std::size_t red = cfg.count / 4;
  for (std::size_t i = 0; i < cfg.count; ++i) {
    const Color c = i < blue ? Color::kBlue : (i < blue + red ? Color::kRed : Color::kYellow);
    ds.graphs.push_back(detail::base_graph(cfg, i, c, i < blue ? 0 : 1));
  }
  return ds;
}

/// Half blue (label 0), half red (label 1); 80% of red graphs carry a square.
inline Dataset recipe_square_correlated(const RecipeConfig& cfg) {
  cfg.check();
  Dataset ds;
  ds.task_name = "square-corr";
  ds.num_classes = 2;
  const std::size_t blue = cfg.count / 2;
  std::vector<std::size_t> red_ids;
  for (std::size_t i = blue; i < cfg.count; ++i) red_ids.push_back(i);
  const auto squares = detail::choose_subset(
      red_ids, round_half_up_fraction(red_ids.size(), 4, 5), cfg.count,
      Rng(cfg.seed, kSquareSubsetStream));
  for (std::size_t i = 0; i < cfg.count; ++i) {
    const bool is_red = i >= blue;
    Graph g = detail::base_graph(cfg, i, is_red ? Color::kRed : Color::kBlue, is_red ? 1 : 0);
    if (squares[i]) {
      Rng rng(cfg.seed, kDecorateStream + i);
      g = attach_square(g, rng);
    }
    ds.graphs.push_back(std::move(g));
  }
  return ds;
}

/// Half blue (label 0), half red (label 1). Within each class, 15% of graphs
/// get one purple node and an independently drawn 15% get a square.
inline Dataset recipe_independent(const RecipeConfig& cfg) {
  cfg.check();
  Dataset ds;
  ds.task_name = "independent";
  ds.num_classes = 2;
  const std::size_t blue = cfg.count / 2;
  std::vector<char> purple(cfg.count, 0);
  std::vector<char> square(cfg.count, 0);
  for (int cls = 0; cls < 2; ++cls) {
    std::vector<std::size_t> ids;
    for (std::size_t i = 0; i < cfg.count; ++i) {
      if ((i >= blue) == (cls == 1)) ids.push_back(i);
    }
    const std::size_t size = round_half_up_fraction(ids.size(), 3, 20);
    const auto p = detail::choose_subset(ids, size, cfg.count,
                                         Rng(cfg.seed, kPurpleSubsetStream + cls));
    const auto s = detail::choose_subset(ids, size, cfg.count,
                                         Rng(cfg.seed, kSquareSubsetStream + cls));
    for (std::size_t i : ids) {
      purple[i] = p[i];
      square[i] = s[i];
    }
  }
  for (std::size_t i = 0; i < cfg.count; ++i) {
    const bool is_red = i >= blue;
    Graph g = detail::base_graph(cfg, i, is_red ? Color::kRed : Color::kBlue, is_red ? 1 : 0);
    Rng rng(cfg.seed, kDecorateStream + i);
    if (purple[i]) g = recolor_random_node(g, Color::kPurple, rng);
    if (square[i]) g = attach_square(g, rng);
    ds.graphs.push_back(std::move(g));
  }
  return ds;
}

enum class Recipe { kColors3, kSquareCorrelated, kIndependent };

inline std::optional<Recipe> parse_recipe(std::string_view name) {
  if (name == "colors3") return Recipe::kColors3;
  if (name == "square-corr") return Recipe::kSquareCorrelated;
  if (name == "independent") return Recipe::kIndependent;
  return std::nullopt;
}

inline Dataset generate(Recipe recipe, const RecipeConfig& cfg) {
  switch (recipe) {
    case Recipe::kColors3: return recipe_colors3(cfg);
    case Recipe::kSquareCorrelated: return recipe_square_correlated(cfg);
    case Recipe::kIndependent: return recipe_independent(cfg);
  }
  throw Error(Errc::kInvalidParams, "unknown recipe");
}

}  // namespace gci::synth
