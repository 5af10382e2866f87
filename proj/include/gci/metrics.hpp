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

// Alignment scores, Interpretation-Alignment matrices, and the completeness
// and predictability reports.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gci/common.hpp"
#include "gci/concepts.hpp"
#include "gci/gnn.hpp"
#include "gci/interpret.hpp"
#include "gci/mlkit.hpp"

namespace gci::metrics {

/// Fraction of `graphs` on which h holds.
inline double alignment(std::span<const Graph> graphs, const interp::Interpretation& h) {
  if (graphs.empty()) throw Error(Errc::kEmptyConcept, "alignment over an empty concept");
  std::size_t hits = 0;
  for (const Graph& g : graphs) hits += interp::eval(h, g) ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(graphs.size());
}

/// Rows are interpretations, columns are concepts. Each value is
/// numerators[r][c] / denominators[c]; empty concepts have denominator 0 and
/// no value.
struct IAMatrix {
  std::vector<std::string> row_names;
  std::vector<std::string> column_names;
  std::vector<std::vector<std::size_t>> numerators;
  std::vector<std::size_t> denominators;

  std::size_t rows() const { return row_names.size(); }
  std::size_t cols() const { return column_names.size(); }

  std::optional<double> value(std::size_t r, std::size_t c) const {
    if (denominators[c] == 0) return std::nullopt;
    return static_cast<double>(numerators[r][c]) / static_cast<double>(denominators[c]);
  }

  double column_max(std::size_t c) const {
    double m = 0.0;
    for (std::size_t r = 0; r < rows(); ++r) m = std::max(m, value(r, c).value_or(0.0));
    return m;
  }

  double row_max(std::size_t r) const {
    double m = 0.0;
    for (std::size_t c = 0; c < cols(); ++c) m = std::max(m, value(r, c).value_or(0.0));
    return m;
  }

  /// Mean of the per-column maxima over non-empty columns.
  double mean_column_max() const {
    double total = 0.0;
    std::size_t used = 0;
    for (std::size_t c = 0; c < cols(); ++c) {
      if (denominators[c] == 0) continue;
      total += column_max(c);
      ++used;
    }
    return used ? total / static_cast<double>(used) : 0.0;
  }
};

inline IAMatrix ia_matrix(const concepts::ConceptAssignment& a, const interp::InterpretationSet& hs,
                          const Dataset& ds) {
  for (std::size_t i : a.indices)
    if (i >= ds.graphs.size()) throw Error(Errc::kDimensionMismatch, "concept index outside dataset");
  const interp::InterpretationMatrix bits = interp::interpretation_matrix(hs, ds, a.indices);
  IAMatrix m;
  for (const auto& h : hs) m.row_names.push_back(h.name);
  for (int c = 0; c < a.k; ++c) m.column_names.push_back("c" + std::to_string(c));
  m.numerators.assign(hs.size(), std::vector<std::size_t>(static_cast<std::size_t>(a.k), 0));
  m.denominators.assign(static_cast<std::size_t>(a.k), 0);
  for (std::size_t i = 0; i < a.assignment.size(); ++i) {
    const auto c = static_cast<std::size_t>(a.assignment[i]);
    ++m.denominators[c];
    for (std::size_t r = 0; r < hs.size(); ++r) m.numerators[r][c] += bits.at(i, r) ? 1 : 0;
  }
  return m;
}

inline std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

/// Header ",c0,c1,..."; one row per interpretation with 4-decimal values.
/// Empty concepts leave their cells blank.
inline std::string to_csv(const IAMatrix& m) {
  std::string out;
  for (const auto& c : m.column_names) out += "," + c;
  out += "\n";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out += m.row_names[r];
    for (std::size_t c = 0; c < m.cols(); ++c) {
      out += ",";
      if (auto v = m.value(r, c)) out += fixed4(*v);
    }
    out += "\n";
  }
  return out;
}

namespace detail {

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace detail

/// Heatmap with one rect per cell, white (0) to dark blue (1), values drawn
/// on top. Output depends only on the matrix.
inline std::string to_svg(const IAMatrix& m, const std::string& title = "") {
  constexpr int kCell = 56, kLeft = 130, kTop = 60;
  const int width = kLeft + kCell * static_cast<int>(m.cols()) + 20;
  const int height = kTop + kCell * static_cast<int>(m.rows()) + 20;
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  if (!title.empty())
    s << "<text x=\"" << kLeft << "\" y=\"20\" font-size=\"14\">" << detail::xml_escape(title) << "</text>\n";
  for (std::size_t c = 0; c < m.cols(); ++c) {
    s << "<text x=\"" << kLeft + kCell * static_cast<int>(c) + kCell / 2 << "\" y=\"" << kTop - 8
      << "\" text-anchor=\"middle\">" << detail::xml_escape(m.column_names[c]) << "</text>\n";
  }
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const int y = kTop + kCell * static_cast<int>(r);
    s << "<text x=\"" << kLeft - 8 << "\" y=\"" << y + kCell / 2 + 4 << "\" text-anchor=\"end\">"
      << detail::xml_escape(m.row_names[r]) << "</text>\n";
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const int x = kLeft + kCell * static_cast<int>(c);
      const auto v = m.value(r, c);
      const double t = v.value_or(0.0);
      // Linear ramp from white to rgb(8, 48, 107).
      const int red = static_cast<int>(std::lround(255.0 + t * (8.0 - 255.0)));
      const int green = static_cast<int>(std::lround(255.0 + t * (48.0 - 255.0)));
      const int blue = static_cast<int>(std::lround(255.0 + t * (107.0 - 255.0)));
      s << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << kCell << "\" height=\"" << kCell
        << "\" fill=\"" << (v ? "rgb(" + std::to_string(red) + "," + std::to_string(green) + "," +
                                      std::to_string(blue) + ")"
                                : std::string("#dddddd"))
        << "\" stroke=\"#999999\"/>\n";
      s << "<text x=\"" << x + kCell / 2 << "\" y=\"" << y + kCell / 2 + 4 << "\" text-anchor=\"middle\" fill=\""
        << (t > 0.5 ? "white" : "black") << "\">" << (v ? fixed4(*v).substr(0, 4) : std::string("-"))
        << "</text>\n";
    }
  }
  s << "</svg>\n";
  return s.str();
}

// ------------------------------------------------ completeness/predictability

struct SplitConfig {
  double test_fraction = 0.2;
  std::uint64_t seed = 0;
  double l2 = 1e-4;
  int epochs = 1000;
};

struct CompletenessReport {
  MetricKind metric_kind = MetricKind::kAccuracy;
  double value = 0.0;
  SplitConfig split;
  std::size_t train_size = 0;
  std::size_t test_size = 0;
  std::string classifier;
};

/// Held-out task performance of logistic regression trained only on the
/// interpretation bits.
inline CompletenessReport completeness(const interp::InterpretationSet& hs, const Dataset& ds,
                                       const SplitConfig& cfg = {}) {
  if (ds.graphs.empty()) throw Error(Errc::kDegenerateLabels, "empty dataset");
  const std::vector<int> labels = ds.labels();
  const ml::Matrix x = interp::interpretation_matrix(hs, ds).as_real();
  const ml::Split split = ml::stratified_split(labels, cfg.test_fraction, cfg.seed);
  const std::vector<int> y_train = ml::gather(labels, split.train);
  const std::vector<int> y_test = ml::gather(labels, split.test);
  ml::LogRegOptions opt;
  opt.l2 = cfg.l2;
  opt.seed = cfg.seed;
  opt.epochs = cfg.epochs;
  opt.num_classes = ds.num_classes;
  const ml::LinearClassifier clf = ml::logreg_fit(ml::gather_rows(x, split.train), y_train, opt);
  const ml::Matrix x_test = ml::gather_rows(x, split.test);

  CompletenessReport r;
  r.metric_kind = ds.metric_kind;
  r.split = cfg;
  r.train_size = split.train.size();
  r.test_size = split.test.size();
  r.classifier = "logistic regression (l2=" + fixed4(cfg.l2) + ", epochs=" + std::to_string(cfg.epochs) + ")";
  if (ds.metric_kind == MetricKind::kAuroc) {
    const ml::Matrix p = ml::predict_proba(clf, x_test);
    std::vector<double> score(static_cast<std::size_t>(p.rows()));
    for (Eigen::Index i = 0; i < p.rows(); ++i) score[static_cast<std::size_t>(i)] = p(i, 1);
    r.value = ml::auroc(score, y_test);
  } else {
    r.value = ml::accuracy(ml::predict(clf, x_test), y_test);
  }
  return r;
}

struct PredictabilityEntry {
  std::string name;
  std::optional<double> f1;  // empty when the interpretation is constant
  double prevalence = 0.0;
};

struct PredictabilityReport {
  std::vector<PredictabilityEntry> entries;
  SplitConfig split;
};

/// Per interpretation: held-out F1 of logistic regression predicting its
/// value from the model's pooled last-layer embedding. The split is
/// stratified on the interpretation's own value.
inline PredictabilityReport predictability(const gnn::GcnModel& model, const interp::InterpretationSet& hs,
                                           const Dataset& ds, const SplitConfig& cfg = {}) {
  const auto idx = interp::all_indices(ds);
  const ml::Matrix emb = gnn::embed_all(model, ds, idx);
  const interp::InterpretationMatrix bits = interp::interpretation_matrix(hs, ds, idx);
  PredictabilityReport rep;
  rep.split = cfg;
  for (std::size_t c = 0; c < hs.size(); ++c) {
    PredictabilityEntry e;
    e.name = hs[c].name;
    const std::vector<int> y = bits.column(c);
    std::size_t positives = 0;
    for (int v : y) positives += static_cast<std::size_t>(v);
    e.prevalence = y.empty() ? 0.0 : static_cast<double>(positives) / static_cast<double>(y.size());
    const ml::Split split = ml::stratified_split(y, cfg.test_fraction, cfg.seed);
    const std::vector<int> y_train = ml::gather(y, split.train);
    const bool train_constant =
        std::adjacent_find(y_train.begin(), y_train.end(), std::not_equal_to<>()) == y_train.end();
    if (positives == 0 || positives == y.size() || train_constant || split.test.empty()) {
      rep.entries.push_back(std::move(e));
      continue;
    }
    ml::LogRegOptions opt;
    opt.l2 = cfg.l2;
    opt.seed = cfg.seed;
    opt.epochs = cfg.epochs;
    opt.num_classes = 2;
    const ml::LinearClassifier clf = ml::logreg_fit(ml::gather_rows(emb, split.train), y_train, opt);
    e.f1 = ml::f1(ml::predict(clf, ml::gather_rows(emb, split.test)), ml::gather(y, split.test));
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

}  // namespace gci::metrics
