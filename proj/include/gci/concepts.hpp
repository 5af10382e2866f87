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

// Concept extractors: k-means over pooled GCN embeddings, plus the noisy and
// random baselines that degrade an existing extraction.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "gci/common.hpp"
#include "gci/gnn.hpp"
#include "gci/graph.hpp"
#include "gci/mlkit.hpp"
#include "json.hpp"

namespace gci::concepts {

using Matrix = Eigen::MatrixXd;
using json = nlohmann::json;

enum class ExtractorKind { kGcExplainer, kNoisy, kRandom };

struct Provenance {
  ExtractorKind kind = ExtractorKind::kGcExplainer;
  std::optional<double> theta;  // noisy only
  std::uint64_t seed = 0;       // seed of this extractor
  std::uint64_t base_seed = 0;  // seed of the clustering it derives from
  std::string model_fingerprint;
  std::optional<int> class_filter;
};

/// Partition of a (possibly class-filtered) list of dataset graphs into k
/// concepts. assignment[i] is the concept of dataset graph indices[i].
struct ConceptAssignment {
  int k = 0;
  std::vector<std::size_t> indices;
  std::vector<int> assignment;
  Matrix centroids;  // k x hidden
  Provenance provenance;
  std::vector<std::vector<std::size_t>> representatives;  // dataset indices

  std::vector<std::size_t> concept_sizes() const {
    std::vector<std::size_t> sizes(static_cast<std::size_t>(k), 0);
    for (int a : assignment) ++sizes[static_cast<std::size_t>(a)];
    return sizes;
  }

  /// Dataset indices of the graphs in concept c.
  std::vector<std::size_t> members(int c) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < assignment.size(); ++i)
      if (assignment[i] == c) out.push_back(indices[i]);
    return out;
  }
};

inline std::vector<std::size_t> filtered_indices(const Dataset& ds, std::optional<int> class_filter) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < ds.graphs.size(); ++i)
    if (!class_filter || ds.graphs[i].label == *class_filter) out.push_back(i);
  return out;
}

inline ConceptAssignment gcexplainer_extract(const gnn::GcnModel& model, const Dataset& ds, int k,
                                             std::uint64_t seed,
                                             std::optional<int> class_filter = std::nullopt,
                                             const ml::KMeansOptions& opt = {}) {
  if (k < 2) throw Error(Errc::kInvalidParams, "k must be at least 2");
  ConceptAssignment out;
  out.indices = filtered_indices(ds, class_filter);
  if (out.indices.size() < static_cast<std::size_t>(k))
    throw Error(Errc::kTooFewGraphs, std::to_string(out.indices.size()) + " graphs for k=" + std::to_string(k));
  const Matrix emb = gnn::embed_all(model, ds, out.indices);
  ml::Clustering c = ml::kmeans(emb, k, seed, opt);
  out.k = k;
  out.assignment = std::move(c.assignment);
  out.centroids = std::move(c.centroids);
  out.provenance = {ExtractorKind::kGcExplainer, std::nullopt, seed, seed,
                    gnn::model_fingerprint(model), class_filter};
  return out;
}

/// Moves exactly round(theta * N) graphs, chosen without replacement, each to
/// a uniformly drawn different concept. Centroids are kept from the base.
inline ConceptAssignment noisy_extract(const ConceptAssignment& base, double theta, std::uint64_t seed) {
  if (!(theta >= 0.0 && theta <= 1.0)) throw Error(Errc::kInvalidTheta, "theta must be in [0, 1]");
  const std::size_t n = base.assignment.size();
  const auto moves = static_cast<std::size_t>(std::llround(theta * static_cast<double>(n)));
  if (moves > 0 && base.k < 2) throw Error(Errc::kInvalidTheta, "cannot move graphs with a single concept");
  ConceptAssignment out = base;
  Rng rng(seed, 0x4015eULL);
  for (std::size_t i : rng.sample_without_replacement(n, moves)) {
    const int current = out.assignment[i];
    const int r = static_cast<int>(rng.below(static_cast<std::uint64_t>(base.k - 1)));
    out.assignment[i] = r < current ? r : r + 1;
  }
  out.provenance.kind = ExtractorKind::kNoisy;
  out.provenance.theta = theta;
  out.provenance.base_seed = base.provenance.seed;
  out.provenance.seed = seed;
  out.representatives.clear();
  return out;
}

/// Uniform random permutation of the base assignment list.
inline ConceptAssignment random_extract(const ConceptAssignment& base, std::uint64_t seed) {
  ConceptAssignment out = base;
  Rng rng(seed, 0xa11ULL);
  rng.shuffle(out.assignment);
  out.provenance.kind = ExtractorKind::kRandom;
  out.provenance.theta.reset();
  out.provenance.base_seed = base.provenance.seed;
  out.provenance.seed = seed;
  out.representatives.clear();
  return out;
}

/// Per concept, up to top_n dataset indices nearest to the centroid.
/// `embeddings` rows align with assignment.indices. Ties keep index order.
inline std::vector<std::vector<std::size_t>> representatives(const ConceptAssignment& a,
                                                             const Matrix& embeddings,
                                                             std::size_t top_n = 5) {
  if (static_cast<std::size_t>(embeddings.rows()) != a.assignment.size())
    throw Error(Errc::kDimensionMismatch, "embeddings do not align with the assignment");
  std::vector<std::vector<std::pair<double, std::size_t>>> ranked(static_cast<std::size_t>(a.k));
  for (std::size_t i = 0; i < a.assignment.size(); ++i) {
    const int c = a.assignment[i];
    const double d = (embeddings.row(static_cast<Eigen::Index>(i)) - a.centroids.row(c)).norm();
    ranked[static_cast<std::size_t>(c)].emplace_back(d, a.indices[i]);
  }
  std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(a.k));
  for (std::size_t c = 0; c < ranked.size(); ++c) {
    std::stable_sort(ranked[c].begin(), ranked[c].end(),
                     [](const auto& x, const auto& y) { return x.first < y.first; });
    for (std::size_t r = 0; r < std::min(top_n, ranked[c].size()); ++r) out[c].push_back(ranked[c][r].second);
  }
  return out;
}

inline std::string extractor_name(ExtractorKind k) {
  switch (k) {
    case ExtractorKind::kGcExplainer: return "gcexplainer";
    case ExtractorKind::kNoisy: return "noisy";
    case ExtractorKind::kRandom: return "random";
  }
  return "gcexplainer";
}

inline json to_json(const ConceptAssignment& a) {
  json centroids = json::array();
  for (Eigen::Index i = 0; i < a.centroids.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < a.centroids.cols(); ++j) row.push_back(a.centroids(i, j));
    centroids.push_back(std::move(row));
  }
  const Provenance& p = a.provenance;
  return json{{"k", a.k},
              {"extractor", extractor_name(p.kind)},
              {"theta", p.theta ? json(*p.theta) : json(nullptr)},
              {"seed", p.seed},
              {"base_seed", p.base_seed},
              {"model_fingerprint", p.model_fingerprint},
              {"class_filter", p.class_filter ? json(*p.class_filter) : json(nullptr)},
              {"indices", a.indices},
              {"assignment", a.assignment},
              {"centroids", std::move(centroids)},
              {"representatives", a.representatives}};
}

inline ConceptAssignment from_json(const json& j) {
  ConceptAssignment a;
  try {
    a.k = j.at("k").get<int>();
    const std::string kind = j.at("extractor").get<std::string>();
    if (kind == "gcexplainer") a.provenance.kind = ExtractorKind::kGcExplainer;
    else if (kind == "noisy") a.provenance.kind = ExtractorKind::kNoisy;
    else if (kind == "random") a.provenance.kind = ExtractorKind::kRandom;
    else throw Error(Errc::kMalformedFile, "unknown extractor " + kind);
    if (j.contains("theta") && !j.at("theta").is_null()) a.provenance.theta = j.at("theta").get<double>();
    a.provenance.seed = j.at("seed").get<std::uint64_t>();
    a.provenance.base_seed = j.value("base_seed", a.provenance.seed);
    a.provenance.model_fingerprint = j.value("model_fingerprint", std::string());
    if (j.contains("class_filter") && !j.at("class_filter").is_null())
      a.provenance.class_filter = j.at("class_filter").get<int>();
    a.indices = j.at("indices").get<std::vector<std::size_t>>();
    a.assignment = j.at("assignment").get<std::vector<int>>();
    const auto& cs = j.at("centroids");
    const auto width = cs.empty() ? 0 : static_cast<Eigen::Index>(cs.front().size());
    a.centroids = Matrix::Zero(static_cast<Eigen::Index>(cs.size()), width);
    for (std::size_t i = 0; i < cs.size(); ++i)
      for (std::size_t c = 0; c < cs[i].size(); ++c)
        a.centroids(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = cs[i][c].get<double>();
    if (j.contains("representatives"))
      a.representatives = j.at("representatives").get<std::vector<std::vector<std::size_t>>>();
  } catch (const json::exception& e) {
    throw Error(Errc::kMalformedFile, std::string("concepts file: ") + e.what());
  }
  if (a.indices.size() != a.assignment.size())
    throw Error(Errc::kMalformedFile, "indices and assignment lengths differ");
  for (int v : a.assignment)
    if (v < 0 || v >= a.k) throw Error(Errc::kMalformedFile, "assignment value out of range");
  return a;
}

inline void save(const std::string& path, const ConceptAssignment& a) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::kFileNotFound, "cannot write " + path);
  out << to_json(a).dump() << '\n';
}

inline ConceptAssignment load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kFileNotFound, "cannot read " + path);
  try {
    return from_json(json::parse(in));
  } catch (const json::exception& e) {
    throw Error(Errc::kMalformedFile, std::string("concepts file: ") + e.what());
  }
}

}  // namespace gci::concepts
