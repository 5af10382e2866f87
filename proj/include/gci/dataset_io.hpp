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

// Newline-delimited JSON dataset files: one header line, then one graph per
// line. Output is byte-stable for equal datasets.

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "gci/graph.hpp"
#include "json.hpp"

namespace gci {

using json = nlohmann::json;

inline std::string_view metric_name(MetricKind m) {
  return m == MetricKind::kAuroc ? "auroc" : "accuracy";
}

inline json node_to_json(const NodeLabel& label) {
  if (const Color* c = std::get_if<Color>(&label))
    return json{{"kind", "color"}, {"value", color_name(*c)}};
  const Atom& a = std::get<Atom>(label);
  json j{{"kind", "atom"}, {"element", a.element}, {"aromatic", a.aromatic},
         {"charge", a.charge}};
  j["h"] = a.explicit_h ? json(*a.explicit_h) : json(nullptr);
  return j;
}

inline NodeLabel node_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "color") {
    auto c = parse_color(j.at("value").get<std::string>());
    if (!c) throw Error(Errc::kMalformedFile, "unknown color " + j.at("value").dump());
    return *c;
  }
  if (kind == "atom") {
    Atom a;
    a.element = j.at("element").get<std::string>();
    a.aromatic = j.value("aromatic", false);
    a.charge = j.value("charge", 0);
    if (j.contains("h") && !j.at("h").is_null()) a.explicit_h = j.at("h").get<int>();
    return a;
  }
  throw Error(Errc::kMalformedFile, "unknown node kind " + kind);
}

inline json graph_to_json(const Graph& g, std::size_t id) {
  json nodes = json::array();
  for (const auto& n : g.nodes) nodes.push_back(node_to_json(n));
  json edges = json::array();
  for (const Edge& e : g.edges) edges.push_back(json::array({e.u, e.v, bond_name(e.kind)}));
  json meta = json::object();
  for (const auto& [k, v] : g.meta) meta[k] = v;
  return json{{"id", id}, {"label", g.label}, {"nodes", std::move(nodes)},
              {"edges", std::move(edges)}, {"meta", std::move(meta)}};
}

inline Graph graph_from_json(const json& j) {
  Graph g;
  g.label = j.at("label").get<int>();
  for (const auto& n : j.at("nodes")) g.nodes.push_back(node_from_json(n));
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 3) throw Error(Errc::kMalformedFile, "edge must be [u, v, kind]");
    auto kind = parse_bond(e[2].get<std::string>());
    if (!kind) throw Error(Errc::kMalformedFile, "unknown bond kind " + e[2].dump());
    g.edges.push_back({e[0].get<int>(), e[1].get<int>(), *kind});
  }
  if (j.contains("meta")) {
    for (const auto& [k, v] : j.at("meta").items()) g.meta[k] = v.get<std::string>();
  }
  validate_or_throw(g);
  return g;
}

inline void write_dataset(std::ostream& out, const Dataset& ds) {
  json header{{"task", ds.task_name}, {"num_classes", ds.num_classes},
              {"metric", metric_name(ds.metric_kind)}};
  out << header.dump() << '\n';
  for (std::size_t i = 0; i < ds.graphs.size(); ++i) out << graph_to_json(ds.graphs[i], i).dump() << '\n';
}

inline std::string dataset_to_string(const Dataset& ds) {
  std::ostringstream os;
  write_dataset(os, ds);
  return os.str();
}

inline Dataset read_dataset(std::istream& in) {
  Dataset ds;
  std::string line;
  bool have_header = false;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw Error(Errc::kMalformedFile, "line " + std::to_string(lineno) + ": " + e.what());
    }
    try {
      if (!have_header) {
        ds.task_name = j.at("task").get<std::string>();
        ds.num_classes = j.at("num_classes").get<int>();
        const std::string metric = j.at("metric").get<std::string>();
        if (metric == "auroc") ds.metric_kind = MetricKind::kAuroc;
        else if (metric == "accuracy") ds.metric_kind = MetricKind::kAccuracy;
        else throw Error(Errc::kMalformedFile, "unknown metric " + metric);
        have_header = true;
        continue;
      }
      ds.graphs.push_back(graph_from_json(j));
    } catch (const json::exception& e) {
      throw Error(Errc::kMalformedFile, "line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!have_header) throw Error(Errc::kMalformedFile, "missing dataset header line");
  if (ds.num_classes < 1) throw Error(Errc::kMalformedFile, "num_classes must be positive");
  if (ds.metric_kind == MetricKind::kAuroc && ds.num_classes != 2)
    throw Error(Errc::kMalformedFile, "auroc metric requires two classes");
  for (const auto& g : ds.graphs) {
    if (g.label < 0 || g.label >= ds.num_classes)
      throw Error(Errc::kMalformedFile, "graph label out of range");
  }
  return ds;
}

inline void save_dataset(const std::string& path, const Dataset& ds) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::kFileNotFound, "cannot write " + path);
  write_dataset(out, ds);
}

inline Dataset load_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kFileNotFound, "cannot read " + path);
  return read_dataset(in);
}

}  // namespace gci
