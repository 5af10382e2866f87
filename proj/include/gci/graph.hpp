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

// Graph, node and dataset types shared by the synthetic and molecular
// pipelines, plus the structural queries used by interpretations.

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gci/common.hpp"

namespace gci {

enum class Color { kBlue = 0, kRed = 1, kYellow = 2, kPurple = 3 };
inline constexpr std::size_t kNumColors = 4;

inline std::string_view color_name(Color c) {
  static constexpr std::array<std::string_view, kNumColors> kNames = {
      "blue", "red", "yellow", "purple"};
  return kNames[static_cast<std::size_t>(c)];
}

inline std::optional<Color> parse_color(std::string_view name) {
  for (std::size_t i = 0; i < kNumColors; ++i) {
    if (color_name(static_cast<Color>(i)) == name) return static_cast<Color>(i);
  }
  return std::nullopt;
}

struct Atom {
  std::string element;
  bool aromatic = false;
  int charge = 0;
  // Set for bracket atoms (the count written inside the brackets); unset for
  // organic-subset atoms, whose hydrogens follow the default valence model.
  std::optional<int> explicit_h;

  bool operator==(const Atom&) const = default;
};

using NodeLabel = std::variant<Color, Atom>;

enum class BondKind { kSingle, kDouble, kTriple, kAromatic };

inline std::string_view bond_name(BondKind b) {
  switch (b) {
    case BondKind::kSingle: return "single";
    case BondKind::kDouble: return "double";
    case BondKind::kTriple: return "triple";
    case BondKind::kAromatic: return "aromatic";
  }
  return "single";
}

inline std::optional<BondKind> parse_bond(std::string_view s) {
  if (s == "single") return BondKind::kSingle;
  if (s == "double") return BondKind::kDouble;
  if (s == "triple") return BondKind::kTriple;
  if (s == "aromatic") return BondKind::kAromatic;
  return std::nullopt;
}

struct Edge {
  int u = 0;
  int v = 0;
  BondKind kind = BondKind::kSingle;

  bool operator==(const Edge&) const = default;
};

struct Graph {
  std::vector<NodeLabel> nodes;
  std::vector<Edge> edges;  // stored once per undirected edge, u < v
  int label = 0;
  std::map<std::string, std::string> meta;

  std::size_t size() const noexcept { return nodes.size(); }

  /// Adds an undirected edge, normalizing endpoint order.
  void add_edge(int a, int b, BondKind kind = BondKind::kSingle) {
    edges.push_back({std::min(a, b), std::max(a, b), kind});
  }

  bool operator==(const Graph&) const = default;
};

enum class MetricKind { kAccuracy, kAuroc };

struct Dataset {
  std::vector<Graph> graphs;
  int num_classes = 2;
  std::string task_name;
  MetricKind metric_kind = MetricKind::kAccuracy;

  std::vector<int> labels() const {
    std::vector<int> out;
    out.reserve(graphs.size());
    for (const auto& g : graphs) out.push_back(g.label);
    return out;
  }
};

enum class GraphKind { kColor, kMolecular };

inline GraphKind graph_kind(const Graph& g) {
  if (!g.nodes.empty() && std::holds_alternative<Atom>(g.nodes.front()))
    return GraphKind::kMolecular;
  return GraphKind::kColor;
}

struct GraphError {
  Errc code;
  std::string detail;
};

/// First violated Graph invariant, or nullopt when the graph is valid.
inline std::optional<GraphError> validate(const Graph& g) {
  if (g.nodes.empty()) return GraphError{Errc::kEmptyGraph, "graph has no nodes"};
  const int n = static_cast<int>(g.nodes.size());
  std::set<std::pair<int, int>> seen;
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const Edge& e = g.edges[i];
    const std::string where = "edge " + std::to_string(i) + " (" +
                              std::to_string(e.u) + "," + std::to_string(e.v) + ")";
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
      return GraphError{Errc::kInvalidEdgeEndpoint, where};
    if (e.u == e.v) return GraphError{Errc::kSelfLoop, where};
    if (e.u > e.v)
      return GraphError{Errc::kInvalidEdgeEndpoint, where + " not stored with u < v"};
    if (!seen.emplace(e.u, e.v).second) return GraphError{Errc::kDuplicateEdge, where};
  }
  return std::nullopt;
}

inline void validate_or_throw(const Graph& g) {
  if (auto err = validate(g)) throw Error(err->code, err->detail);
}

struct Neighbor {
  int node;
  BondKind kind;
};

using Adjacency = std::vector<std::vector<Neighbor>>;

inline Adjacency adjacency(const Graph& g) {
  Adjacency adj(g.nodes.size());
  for (const Edge& e : g.edges) {
    adj[static_cast<std::size_t>(e.u)].push_back({e.v, e.kind});
    adj[static_cast<std::size_t>(e.v)].push_back({e.u, e.kind});
  }
  for (auto& row : adj) {
    std::sort(row.begin(), row.end(),
              [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
  }
  return adj;
}

/// Enumerates simple cycles with length in [min_len, max_len].
///
/// Each cycle is visited once, as a node list starting at its smallest node
/// and continuing towards the smaller of that node's two cycle neighbours.
/// `visit` returns false to stop the enumeration early.
template <typename Visit>
void for_each_simple_cycle(const Adjacency& adj, std::size_t min_len,
                           std::size_t max_len, Visit&& visit) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> path;
  std::vector<char> on_path(adj.size(), 0);
  bool stop = false;

  auto dfs = [&](auto&& self, int start, int current) -> void {
    for (const Neighbor& nb : adj[static_cast<std::size_t>(current)]) {
      if (stop) return;
      const int next = nb.node;
      if (next < start) continue;
      if (next == start) {
        if (path.size() >= min_len && path.size() >= 3 && path[1] < path.back()) {
          if (!visit(static_cast<const std::vector<int>&>(path))) stop = true;
        }
        continue;
      }
      if (on_path[static_cast<std::size_t>(next)] || path.size() >= max_len) continue;
      on_path[static_cast<std::size_t>(next)] = 1;
      path.push_back(next);
      self(self, start, next);
      path.pop_back();
      on_path[static_cast<std::size_t>(next)] = 0;
    }
  };

  for (int s = 0; s < n && !stop; ++s) {
    path.assign(1, s);
    on_path[static_cast<std::size_t>(s)] = 1;
    dfs(dfs, s, s);
    on_path[static_cast<std::size_t>(s)] = 0;
  }
}

inline constexpr std::size_t kMaxCycleSearch = 8;

/// True iff the graph has a simple cycle on exactly k distinct nodes.
inline bool contains_cycle_of_length(const Graph& g, std::size_t k) {
  if (k < 3 || k > kMaxCycleSearch)
    throw Error(Errc::kInvalidParams,
                "cycle length must be in [3, " + std::to_string(kMaxCycleSearch) + "]");
  bool found = false;
  for_each_simple_cycle(adjacency(g), k, k, [&](const std::vector<int>&) {
    found = true;
    return false;
  });
  return found;
}

/// Maximal connected node sets, each sorted, ordered by smallest member.
inline std::vector<std::vector<int>> connected_components(const Graph& g) {
  const Adjacency adj = adjacency(g);
  std::vector<int> comp(g.nodes.size(), -1);
  std::vector<std::vector<int>> out;
  for (std::size_t s = 0; s < g.nodes.size(); ++s) {
    if (comp[s] >= 0) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    std::vector<int> stack{static_cast<int>(s)};
    comp[s] = id;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      out.back().push_back(u);
      for (const Neighbor& nb : adj[static_cast<std::size_t>(u)]) {
        if (comp[static_cast<std::size_t>(nb.node)] < 0) {
          comp[static_cast<std::size_t>(nb.node)] = id;
          stack.push_back(nb.node);
        }
      }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

/// Most frequent color; ties go to the earlier palette entry.
inline Color majority_color(const Graph& g) {
  std::array<std::size_t, kNumColors> counts{};
  for (const auto& n : g.nodes) {
    if (const Color* c = std::get_if<Color>(&n)) ++counts[static_cast<std::size_t>(*c)];
  }
  return static_cast<Color>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

/// Copy of `g` with nodes relabelled so that old node i becomes perm[i].
inline Graph permute_nodes(const Graph& g, const std::vector<int>& perm) {
  Graph out;
  out.label = g.label;
  out.meta = g.meta;
  out.nodes.resize(g.nodes.size());
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    out.nodes[static_cast<std::size_t>(perm[i])] = g.nodes[i];
  for (const Edge& e : g.edges)
    out.add_edge(perm[static_cast<std::size_t>(e.u)], perm[static_cast<std::size_t>(e.v)], e.kind);
  return out;
}

}  // namespace gci
