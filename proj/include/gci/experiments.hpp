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

// End-to-end runs of the four benchmark pipelines with fixed seeds. Each run
// returns its threshold checks plus the IA matrices it produced.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gci/common.hpp"
#include "gci/concepts.hpp"
#include "gci/gnn.hpp"
#include "gci/graph.hpp"
#include "gci/interpret.hpp"
#include "gci/metrics.hpp"
#include "gci/synthgen.hpp"

namespace gci::exp {

inline constexpr std::string_view kColors3Spec =
    "h0 = color(blue)\nh1 = color(red)\nh2 = color(yellow)\n";
inline constexpr std::string_view kSquareSpec =
    "h0 = color(blue)\nh1 = color(red)\nh2 = motif(square)\nh3 = color(red) AND motif(square)\n";
inline constexpr std::string_view kIndependentSpec =
    "h0 = color(blue)\nh1 = color(red)\nh2 = motif(square)\nh3 = hascolor(purple)\n";
inline constexpr std::string_view kFunctionalGroupSpec =
    "hydroxyl = fg(hydroxyl)\nketone = fg(ketone)\nphenyl = fg(phenyl)\nchlorine = fg(chlorine)\n"
    "fluorine = fg(fluorine)\ncarboxyl = fg(carboxyl)\naromatic_ring = fg(aromatic_ring)\n";

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct NamedMatrix {
  std::string name;
  metrics::IAMatrix matrix;
};

struct Report {
  std::string experiment;
  std::vector<Check> checks;
  std::vector<NamedMatrix> matrices;
  std::vector<std::string> notes;
  double seconds = 0.0;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
  }

  void check(std::string name, bool pass, std::string detail) {
    checks.push_back({std::move(name), pass, std::move(detail)});
  }
};

inline std::string fmt(double v) { return metrics::fixed4(v); }

namespace detail {

using Clock = std::chrono::steady_clock;

inline double elapsed(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

inline void runtime_check(Report& r, Clock::time_point t0, double limit_seconds) {
  r.seconds = elapsed(t0);
  r.check("runtime", r.seconds < limit_seconds,
          fmt(r.seconds) + " s (limit " + fmt(limit_seconds) + " s)");
}

inline double prevalence(const interp::InterpretationMatrix& bits, std::size_t c) {
  std::size_t n = 0;
  for (std::size_t r = 0; r < bits.rows; ++r) n += bits.at(r, c) ? 1 : 0;
  return bits.rows ? static_cast<double>(n) / static_cast<double>(bits.rows) : 0.0;
}

inline gnn::TrainResult train_synthetic(const Dataset& ds, std::uint64_t seed) {
  gnn::TrainConfig cfg = gnn::TrainConfig::synthetic();
  cfg.seed = seed;
  return gnn::train(ds, gnn::FeatureEncoder::color(), {3, 16}, cfg);
}

}  // namespace detail

struct SyntheticOptions {
  std::uint64_t seed = 0;
  std::size_t count = 1000;
  int noise_seeds = 10;
};

/// Three-color benchmark: GCExplainer against its noisy and random baselines.
inline Report run_exp1(const SyntheticOptions& opt = {}) {
  const auto t0 = detail::Clock::now();
  Report r;
  r.experiment = "exp1";
  synth::RecipeConfig rc;
  rc.count = opt.count;
  rc.seed = opt.seed;
  const Dataset ds = synth::recipe_colors3(rc);
  const interp::InterpretationSet hs = interp::parse_spec(kColors3Spec);
  const gnn::TrainResult tr = detail::train_synthetic(ds, opt.seed);
  const double acc = tr.history.back().train_metric;
  r.check("train accuracy >= 0.99", acc >= 0.99, fmt(acc));

  const auto gc = concepts::gcexplainer_extract(tr.model, ds, 3, opt.seed);
  const metrics::IAMatrix ia = metrics::ia_matrix(gc, hs, ds);
  r.matrices.push_back({"gcexplainer_k3", ia});
  double worst = 1.0;
  for (std::size_t c = 0; c < ia.cols(); ++c) worst = std::min(worst, ia.column_max(c));
  r.check("gcexplainer per-column max >= 0.90", worst >= 0.90, "min column max " + fmt(worst));

  std::vector<double> noisy_col(ia.cols(), 0.0);
  for (int s = 1; s <= opt.noise_seeds; ++s) {
    const auto noisy = concepts::noisy_extract(gc, 0.2, static_cast<std::uint64_t>(s));
    const metrics::IAMatrix m = metrics::ia_matrix(noisy, hs, ds);
    if (s == 1) r.matrices.push_back({"noisy_k3", m});
    for (std::size_t c = 0; c < m.cols(); ++c) noisy_col[c] += m.column_max(c) / opt.noise_seeds;
  }
  double min_gap = 1.0;
  for (std::size_t c = 0; c < ia.cols(); ++c) min_gap = std::min(min_gap, ia.column_max(c) - noisy_col[c]);
  r.check("noisy mean per-column max at least 0.05 lower", min_gap >= 0.05, "smallest gap " + fmt(min_gap));

  const auto rnd = concepts::random_extract(gc, 1);
  const metrics::IAMatrix rm = metrics::ia_matrix(rnd, hs, ds);
  r.matrices.push_back({"random_k3", rm});
  const auto bits = interp::interpretation_matrix(hs, ds);
  double worst_dev = 0.0;
  for (std::size_t h = 0; h < rm.rows(); ++h) {
    const double p = detail::prevalence(bits, h);
    for (std::size_t c = 0; c < rm.cols(); ++c)
      if (auto v = rm.value(h, c)) worst_dev = std::max(worst_dev, std::abs(*v - p));
  }
  r.check("random entries within 0.10 of prevalence", worst_dev <= 0.10, "largest deviation " + fmt(worst_dev));
  detail::runtime_check(r, t0, 120.0);
  return r;
}

/// Square-correlated benchmark at two clustering granularities.
inline Report run_exp2(const SyntheticOptions& opt = {}) {
  const auto t0 = detail::Clock::now();
  Report r;
  r.experiment = "exp2";
  synth::RecipeConfig rc;
  rc.count = opt.count;
  rc.seed = opt.seed;
  const Dataset ds = synth::recipe_square_correlated(rc);
  const interp::InterpretationSet hs = interp::parse_spec(kSquareSpec);
  const gnn::TrainResult tr = detail::train_synthetic(ds, opt.seed);
  r.notes.push_back("train accuracy " + fmt(tr.history.back().train_metric));

  const metrics::IAMatrix k2 = metrics::ia_matrix(concepts::gcexplainer_extract(tr.model, ds, 2, opt.seed), hs, ds);
  r.matrices.push_back({"gcexplainer_k2", k2});
  std::size_t square_col = 0, red_col = 0;
  for (std::size_t c = 1; c < k2.cols(); ++c) {
    if (k2.value(2, c).value_or(0) > k2.value(2, square_col).value_or(0)) square_col = c;
    if (k2.value(1, c).value_or(0) > k2.value(1, red_col).value_or(0)) red_col = c;
  }
  const double sq = k2.row_max(2);
  r.check("k=2 square row max 0.80 +- 0.10 on the red concept",
          std::abs(sq - 0.80) <= 0.10 && square_col == red_col,
          fmt(sq) + " in c" + std::to_string(square_col) + ", red in c" + std::to_string(red_col));

  const metrics::IAMatrix k3 = metrics::ia_matrix(concepts::gcexplainer_extract(tr.model, ds, 3, opt.seed), hs, ds);
  r.matrices.push_back({"gcexplainer_k3", k3});
  const double and_max = k3.row_max(3);
  r.check("k=3 some column aligns >= 0.70 with the AND interpretation", and_max >= 0.70, fmt(and_max));
  double color_worst = 1.0;
  for (std::size_t c = 0; c < k3.cols(); ++c)
    color_worst = std::min(color_worst, std::max(k3.value(0, c).value_or(0), k3.value(1, c).value_or(0)));
  r.check("k=3 color per-column max >= 0.90", color_worst >= 0.90, "min " + fmt(color_worst));
  detail::runtime_check(r, t0, 120.0);
  return r;
}

/// Independent-marker benchmark: completeness, predictability and k=4
/// alignment.
inline Report run_exp3(const SyntheticOptions& opt = {}) {
  const auto t0 = detail::Clock::now();
  Report r;
  r.experiment = "exp3";
  synth::RecipeConfig rc;
  rc.count = opt.count;
  rc.seed = opt.seed;
  const Dataset ds = synth::recipe_independent(rc);
  const interp::InterpretationSet hs = interp::parse_spec(kIndependentSpec);
  const gnn::TrainResult tr = detail::train_synthetic(ds, opt.seed);
  const double acc = tr.history.back().train_metric;
  r.check("train accuracy >= 0.97", acc >= 0.97, fmt(acc));

  metrics::SplitConfig sc;
  sc.seed = opt.seed;
  const auto comp = metrics::completeness(hs, ds, sc);
  r.check("completeness >= 0.97", comp.value >= 0.97, fmt(comp.value));

  const auto pred = metrics::predictability(tr.model, hs, ds, sc);
  std::vector<double> f(pred.entries.size());
  std::string detail_text;
  for (std::size_t i = 0; i < f.size(); ++i) {
    f[i] = pred.entries[i].f1.value_or(0.0);
    detail_text += (i ? " " : "") + pred.entries[i].name + "=" + fmt(f[i]);
  }
  const bool ordered = std::min(f[0], f[1]) >= std::max(f[2], f[3]);
  r.check("predictability min(F1 h0,h1) >= max(F1 h2,h3)", ordered, detail_text);

  const metrics::IAMatrix k4 = metrics::ia_matrix(concepts::gcexplainer_extract(tr.model, ds, 4, opt.seed), hs, ds);
  r.matrices.push_back({"gcexplainer_k4", k4});
  double worst = 1.0;
  std::string rows;
  for (std::size_t h = 0; h < k4.rows(); ++h) {
    worst = std::min(worst, k4.row_max(h));
    rows += (h ? " " : "") + k4.row_names[h] + "=" + fmt(k4.row_max(h));
  }
  r.check("k=4 per-interpretation row max >= 0.70", worst >= 0.70, rows);
  detail::runtime_check(r, t0, 180.0);
  return r;
}

struct BbbpOptions {
  std::uint64_t seed = 0;
  gnn::TrainConfig train = gnn::TrainConfig::bbbp();
  gnn::ArchParams arch{4, 64};
  int k_per_class = 10;
  std::vector<int> sweep_ks{2, 4, 8, 12, 16, 20, 30};
  int sweep_class = 1;
  double runtime_limit = 1200.0;
};

/// Molecule pipeline on an ingested BBBP dataset.
inline Report run_bbbp(const Dataset& ds, const BbbpOptions& opt = {}) {
  const auto t0 = detail::Clock::now();
  Report r;
  r.experiment = "bbbp";
  const interp::InterpretationSet hs = interp::parse_spec(kFunctionalGroupSpec);
  gnn::TrainConfig tc = opt.train;
  tc.seed = opt.seed;
  const gnn::TrainResult tr = gnn::train(ds, gnn::FeatureEncoder::atom(), opt.arch, tc);
  const double test_auc = tr.history.empty() ? 0.0 : tr.history.back().test_metric;
  r.check("model test AUROC >= 0.80", test_auc >= 0.80, fmt(test_auc));

  metrics::SplitConfig sc;
  sc.seed = opt.seed;
  const auto comp = metrics::completeness(hs, ds, sc);
  r.check("functional-group completeness AUROC >= 0.70", comp.value >= 0.70, fmt(comp.value));

  bool produced = true;
  for (int cls : {0, 1}) {
    const auto a = concepts::gcexplainer_extract(tr.model, ds, opt.k_per_class, opt.seed, cls);
    const auto m = metrics::ia_matrix(a, hs, ds);
    produced = produced && m.cols() == static_cast<std::size_t>(opt.k_per_class);
    r.matrices.push_back({"class" + std::to_string(cls) + "_k" + std::to_string(opt.k_per_class), m});
  }
  const auto all = metrics::ia_matrix(concepts::gcexplainer_extract(tr.model, ds, opt.k_per_class, opt.seed), hs, ds);
  produced = produced && all.cols() == static_cast<std::size_t>(opt.k_per_class);
  r.matrices.push_back({"all_k" + std::to_string(opt.k_per_class), all});
  r.check("per-class and all-sample IA matrices produced", produced,
          std::to_string(r.matrices.size()) + " matrices");

  std::size_t swept = 0;
  for (int k : opt.sweep_ks) {
    const auto a = concepts::gcexplainer_extract(tr.model, ds, k, opt.seed, opt.sweep_class);
    r.matrices.push_back({"sweep_class" + std::to_string(opt.sweep_class) + "_k" + std::to_string(k),
                          metrics::ia_matrix(a, hs, ds)});
    ++swept;
  }
  r.check("k sweep completes", swept == opt.sweep_ks.size(),
          std::to_string(swept) + "/" + std::to_string(opt.sweep_ks.size()) + " values of k");
  detail::runtime_check(r, t0, opt.runtime_limit);
  return r;
}

/// One "PASS|FAIL  experiment: check (detail)" line per check.
inline std::string format_checks(const Report& r) {
  std::ostringstream os;
  for (const Check& c : r.checks)
    os << (c.pass ? "PASS" : "FAIL") << "  " << r.experiment << ": " << c.name << " (" << c.detail << ")\n";
  return os.str();
}

}  // namespace gci::exp
