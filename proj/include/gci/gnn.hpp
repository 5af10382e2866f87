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

// Graph convolutional network with hand-written reverse-mode gradients.
//
// Layer rule: H[l+1] = relu(A_hat * H[l] * W[l] + b[l]) where
// A_hat = D^-1/2 (A + I) D^-1/2. Graph readout is the mean of the last layer's
// node rows, followed by one affine layer to class logits.

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "gci/common.hpp"
#include "gci/graph.hpp"
#include "gci/mlkit.hpp"
#include "json.hpp"

namespace gci::gnn {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using json = nlohmann::json;

// ---------------------------------------------------------------- features

enum class EncoderMode { kColorOneHot, kAtomBasic };

struct FeatureEncoder {
  EncoderMode mode = EncoderMode::kColorOneHot;
  std::vector<std::string> vocab;  // atom-basic only
  int degree_cap = 5;

  static FeatureEncoder color() { return {}; }
  static FeatureEncoder atom(std::vector<std::string> vocab = default_vocab(), int degree_cap = 5) {
    return {EncoderMode::kAtomBasic, std::move(vocab), degree_cap};
  }
  static std::vector<std::string> default_vocab() {
    return {"C", "N", "O", "S", "F", "Cl", "Br", "I", "P", "B"};
  }

  /// color-onehot: 4. atom-basic: |vocab| + other + aromatic + (cap + 1).
  int dim() const {
    if (mode == EncoderMode::kColorOneHot) return static_cast<int>(kNumColors);
    return static_cast<int>(vocab.size()) + 1 + 1 + degree_cap + 1;
  }

  bool operator==(const FeatureEncoder&) const = default;
};

inline Matrix encode(const FeatureEncoder& enc, const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.nodes.size());
  Matrix x = Matrix::Zero(n, enc.dim());
  if (enc.mode == EncoderMode::kColorOneHot) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const Color* c = std::get_if<Color>(&g.nodes[static_cast<std::size_t>(i)]);
      if (!c) throw Error(Errc::kModeMismatch, "color-onehot encoder given an atom node");
      x(i, static_cast<Eigen::Index>(*c)) = 1.0;
    }
    return x;
  }
  std::vector<int> degree(g.nodes.size(), 0);
  for (const Edge& e : g.edges) {
    ++degree[static_cast<std::size_t>(e.u)];
    ++degree[static_cast<std::size_t>(e.v)];
  }
  const auto vocab_size = static_cast<Eigen::Index>(enc.vocab.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    const Atom* a = std::get_if<Atom>(&g.nodes[static_cast<std::size_t>(i)]);
    if (!a) throw Error(Errc::kModeMismatch, "atom-basic encoder given a color node");
    const auto it = std::find(enc.vocab.begin(), enc.vocab.end(), a->element);
    x(i, static_cast<Eigen::Index>(it - enc.vocab.begin())) = 1.0;  // end() is the "other" slot
    x(i, vocab_size + 1) = a->aromatic ? 1.0 : 0.0;
    const int d = std::min(degree[static_cast<std::size_t>(i)], enc.degree_cap);
    x(i, vocab_size + 2 + d) = 1.0;
  }
  return x;
}

/// D^-1/2 (A + I) D^-1/2 with D the degree matrix of A + I.
inline SparseMatrix normalized_adjacency(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.nodes.size());
  std::vector<double> deg(g.nodes.size(), 1.0);
  for (const Edge& e : g.edges) {
    deg[static_cast<std::size_t>(e.u)] += 1.0;
    deg[static_cast<std::size_t>(e.v)] += 1.0;
  }
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(g.nodes.size() + 2 * g.edges.size());
  for (Eigen::Index i = 0; i < n; ++i) t.emplace_back(i, i, 1.0 / deg[static_cast<std::size_t>(i)]);
  for (const Edge& e : g.edges) {
    const double w = 1.0 / std::sqrt(deg[static_cast<std::size_t>(e.u)] * deg[static_cast<std::size_t>(e.v)]);
    t.emplace_back(e.u, e.v, w);
    t.emplace_back(e.v, e.u, w);
  }
  SparseMatrix a(n, n);
  a.setFromTriplets(t.begin(), t.end());
  return a;
}

// ------------------------------------------------------------------- model

struct ArchParams {
  int layers = 3;
  int hidden = 16;
};

struct GcnModel {
  FeatureEncoder encoder;
  std::vector<Matrix> conv;       // in x out per layer
  std::vector<Vector> conv_bias;  // out per layer
  Matrix head;               // hidden x classes
  Vector bias;               // classes

  int layers() const { return static_cast<int>(conv.size()); }
  int hidden() const { return conv.empty() ? 0 : static_cast<int>(conv.back().cols()); }
  int num_classes() const { return static_cast<int>(head.cols()); }

  void check_shapes() const {
    Eigen::Index in = encoder.dim();
    if (conv_bias.size() != conv.size()) throw Error(Errc::kShapeMismatch, "conv bias count mismatch");
    for (std::size_t l = 0; l < conv.size(); ++l) {
      if (conv[l].rows() != in) throw Error(Errc::kShapeMismatch, "conv layer input width mismatch");
      if (conv_bias[l].size() != conv[l].cols()) throw Error(Errc::kShapeMismatch, "conv bias width mismatch");
      in = conv[l].cols();
    }
    if (head.rows() != in || bias.size() != head.cols())
      throw Error(Errc::kShapeMismatch, "head shape mismatch");
  }
};

/// Glorot-uniform weights, zero bias.
inline GcnModel init_model(const FeatureEncoder& enc, const ArchParams& arch, int num_classes,
                           std::uint64_t seed) {
  if (arch.layers < 1 || arch.hidden < 1 || num_classes < 2)
    throw Error(Errc::kInvalidParams, "bad architecture");
  Rng rng(seed, 0x1417ULL);
  auto glorot = [&](Eigen::Index rows, Eigen::Index cols) {
    const double limit = std::sqrt(6.0 / static_cast<double>(rows + cols));
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.uniform(-limit, limit);
    return m;
  };
  GcnModel m;
  m.encoder = enc;
  Eigen::Index in = enc.dim();
  for (int l = 0; l < arch.layers; ++l) {
    m.conv.push_back(glorot(in, arch.hidden));
    m.conv_bias.push_back(Vector::Zero(arch.hidden));
    in = arch.hidden;
  }
  m.head = glorot(in, num_classes);
  m.bias = Vector::Zero(num_classes);
  return m;
}

/// A graph with its features and propagation matrix computed once.
struct PreparedGraph {
  SparseMatrix adj;
  Matrix features;
  int label = 0;
};

inline PreparedGraph prepare(const FeatureEncoder& enc, const Graph& g) {
  return {normalized_adjacency(g), encode(enc, g), g.label};
}

struct ForwardResult {
  Vector logits;
  std::vector<Vector> layer_embeddings;  // mean-pooled output of each conv layer
};

namespace detail {

struct Tape {
  std::vector<Matrix> propagated;  // A_hat * H[l]
  std::vector<Matrix> pre;         // Z[l] = propagated[l] * W[l]
  Vector pooled;
  Vector logits;
};

inline Tape run(const GcnModel& m, const PreparedGraph& pg, std::vector<Vector>* layer_embeddings) {
  Tape t;
  Matrix h = pg.features;
  if (h.cols() != m.encoder.dim()) throw Error(Errc::kShapeMismatch, "feature width mismatch");
  for (std::size_t l = 0; l < m.conv.size(); ++l) {
    const Matrix& w = m.conv[l];
    if (w.rows() != h.cols()) throw Error(Errc::kShapeMismatch, "conv layer input width mismatch");
    t.propagated.push_back(pg.adj * h);
    t.pre.push_back((t.propagated.back() * w).rowwise() + m.conv_bias[l].transpose());
    h = t.pre.back().cwiseMax(0.0);
    if (layer_embeddings) layer_embeddings->push_back(h.colwise().mean().transpose());
  }
  t.pooled = h.colwise().mean().transpose();
  if (m.head.rows() != t.pooled.size()) throw Error(Errc::kShapeMismatch, "head input width mismatch");
  t.logits = m.head.transpose() * t.pooled + m.bias;
  return t;
}

inline Vector softmax(const Vector& logits) {
  Vector p = (logits.array() - logits.maxCoeff()).exp();
  return p / p.sum();
}

}  // namespace detail

inline ForwardResult forward(const GcnModel& m, const PreparedGraph& pg) {
  ForwardResult r;
  r.logits = detail::run(m, pg, &r.layer_embeddings).logits;
  return r;
}

inline ForwardResult forward(const GcnModel& m, const Graph& g) {
  return forward(m, prepare(m.encoder, g));
}

/// Pooled last-conv-layer embedding, length hidden().
inline Vector embed(const GcnModel& m, const Graph& g) {
  return detail::run(m, prepare(m.encoder, g), nullptr).pooled;
}

inline Matrix embed_all(const GcnModel& m, const Dataset& ds, std::span<const std::size_t> indices) {
  Matrix out(static_cast<Eigen::Index>(indices.size()), m.hidden());
  for (std::size_t i = 0; i < indices.size(); ++i)
    out.row(static_cast<Eigen::Index>(i)) = embed(m, ds.graphs.at(indices[i])).transpose();
  return out;
}

inline Vector class_probabilities(const GcnModel& m, const PreparedGraph& pg) {
  return detail::softmax(detail::run(m, pg, nullptr).logits);
}

// --------------------------------------------------------------- gradients

struct Gradients {
  std::vector<Matrix> conv;
  std::vector<Vector> conv_bias;
  Matrix head;
  Vector bias;

  static Gradients zeros_like(const GcnModel& m) {
    Gradients g;
    for (const Matrix& w : m.conv) {
      g.conv.push_back(Matrix::Zero(w.rows(), w.cols()));
      g.conv_bias.push_back(Vector::Zero(w.cols()));
    }
    g.head = Matrix::Zero(m.head.rows(), m.head.cols());
    g.bias = Vector::Zero(m.bias.size());
    return g;
  }
};

/// Cross-entropy of one graph; adds scale * d(loss)/d(params) into `acc`.
inline double accumulate_gradients(const GcnModel& m, const PreparedGraph& pg, double scale,
                                   Gradients& acc) {
  const detail::Tape t = detail::run(m, pg, nullptr);
  const Vector p = detail::softmax(t.logits);
  const double loss = -std::log(std::max(p(pg.label), 1e-300));

  Vector dlogits = p;
  dlogits(pg.label) -= 1.0;
  dlogits *= scale;
  acc.head += t.pooled * dlogits.transpose();
  acc.bias += dlogits;

  const auto n = static_cast<double>(pg.features.rows());
  const Vector dpooled = m.head * dlogits;
  Matrix dh = (dpooled / n).transpose().replicate(pg.features.rows(), 1);
  for (int l = m.layers() - 1; l >= 0; --l) {
    const auto li = static_cast<std::size_t>(l);
    const Matrix dz = (t.pre[li].array() > 0.0).select(dh.array(), 0.0).matrix();
    acc.conv[li] += t.propagated[li].transpose() * dz;
    acc.conv_bias[li] += dz.colwise().sum().transpose();
    if (l > 0) dh = pg.adj * (dz * m.conv[li].transpose());  // A_hat is symmetric
  }
  return loss;
}

/// Mean cross-entropy over `graphs` plus 0.5 * l2 * |weights|^2 (biases are
/// not penalized), with its gradient.
inline double loss_and_gradients(const GcnModel& m, std::span<const PreparedGraph> graphs, double l2,
                                 Gradients& grads) {
  grads = Gradients::zeros_like(m);
  if (graphs.empty()) return 0.0;
  const double scale = 1.0 / static_cast<double>(graphs.size());
  double loss = 0.0;
  for (const PreparedGraph& pg : graphs) loss += scale * accumulate_gradients(m, pg, scale, grads);
  if (l2 > 0.0) {
    for (std::size_t l = 0; l < m.conv.size(); ++l) {
      loss += 0.5 * l2 * m.conv[l].squaredNorm();
      grads.conv[l] += l2 * m.conv[l];
    }
    loss += 0.5 * l2 * m.head.squaredNorm();
    grads.head += l2 * m.head;
  }
  return loss;
}

inline double loss_only(const GcnModel& m, std::span<const PreparedGraph> graphs, double l2) {
  double loss = 0.0;
  for (const PreparedGraph& pg : graphs) {
    const Vector p = class_probabilities(m, pg);
    loss -= std::log(std::max(p(pg.label), 1e-300));
  }
  loss /= static_cast<double>(graphs.size());
  if (l2 > 0.0) {
    for (const Matrix& w : m.conv) loss += 0.5 * l2 * w.squaredNorm();
    loss += 0.5 * l2 * m.head.squaredNorm();
  }
  return loss;
}

namespace detail {

// Flat views over every trainable scalar, in a fixed order.
template <typename Model>
std::vector<double*> parameter_pointers(Model& m) {
  std::vector<double*> out;
  for (std::size_t l = 0; l < m.conv.size(); ++l) {
    for (Eigen::Index i = 0; i < m.conv[l].size(); ++i) out.push_back(m.conv[l].data() + i);
    for (Eigen::Index i = 0; i < m.conv_bias[l].size(); ++i) out.push_back(m.conv_bias[l].data() + i);
  }
  for (Eigen::Index i = 0; i < m.head.size(); ++i) out.push_back(m.head.data() + i);
  for (Eigen::Index i = 0; i < m.bias.size(); ++i) out.push_back(m.bias.data() + i);
  return out;
}

}  // namespace detail

struct GradCheckReport {
  double max_relative_error = 0.0;
  double max_abs_error = 0.0;
  double max_abs_gradient = 0.0;
  std::size_t checked = 0;
};

/// Compares analytic gradients against central differences on a random
/// subset of parameters (at least 50, or all when fewer exist).
inline GradCheckReport grad_check(const GcnModel& model, const Graph& graph, double epsilon,
                                  std::uint64_t seed = 0, std::size_t sample = 64, double l2 = 0.0) {
  if (!(epsilon > 0.0)) throw Error(Errc::kInvalidParams, "epsilon must be positive");
  const PreparedGraph pg = prepare(model.encoder, graph);
  const std::span<const PreparedGraph> one(&pg, 1);
  Gradients analytic;
  loss_and_gradients(model, one, l2, analytic);

  GcnModel probe = model;
  auto params = detail::parameter_pointers(probe);
  auto grads = detail::parameter_pointers(analytic);
  Rng rng(seed, 0x9c4eULL);
  const std::size_t count = std::min(params.size(), std::max<std::size_t>(sample, 50));
  GradCheckReport report;
  for (std::size_t idx : rng.sample_without_replacement(params.size(), count)) {
    double* p = params[idx];
    const double saved = *p;
    *p = saved + epsilon;
    const double up = loss_only(probe, one, l2);
    *p = saved - epsilon;
    const double down = loss_only(probe, one, l2);
    *p = saved;
    const double numeric = (up - down) / (2.0 * epsilon);
    const double exact = *grads[idx];
    const double diff = std::abs(numeric - exact);
    const double denom = std::max(std::abs(numeric), std::abs(exact));
    // Differences below 1e-9 are at the floating-point noise floor of the
    // difference quotient and are not counted as relative error.
    const double rel = diff < 1e-9 ? 0.0 : diff / denom;
    report.max_relative_error = std::max(report.max_relative_error, rel);
    report.max_abs_error = std::max(report.max_abs_error, diff);
    report.max_abs_gradient = std::max(report.max_abs_gradient, std::abs(exact));
    ++report.checked;
  }
  return report;
}

// ---------------------------------------------------------------- training

struct TrainConfig {
  int epochs = 50;
  double learning_rate = 1e-2;
  std::size_t batch_size = 32;
  double l2 = 0.0;
  std::uint64_t seed = 0;
  double split_fraction = 0.2;

  static TrainConfig synthetic() { return {}; }
  static TrainConfig bbbp() { return {100, 1e-3, 32, 1e-5, 0, 0.2}; }
};

struct EpochStats {
  int epoch = 0;
  double train_loss = 0.0;
  double train_metric = 0.0;
  double test_loss = 0.0;
  double test_metric = 0.0;
};

struct TrainResult {
  GcnModel model;
  std::vector<EpochStats> history;
  ml::Split split;
};

/// Accuracy, or AUROC of the class-1 probability.
inline double evaluate_metric(const GcnModel& m, std::span<const PreparedGraph> graphs, MetricKind kind) {
  std::vector<int> truth, pred;
  std::vector<double> score;
  for (const PreparedGraph& pg : graphs) {
    const Vector p = class_probabilities(m, pg);
    Eigen::Index arg;
    p.maxCoeff(&arg);
    truth.push_back(pg.label);
    pred.push_back(static_cast<int>(arg));
    score.push_back(p.size() > 1 ? p(1) : 0.0);
  }
  if (kind == MetricKind::kAuroc) {
    try {
      return ml::auroc(score, truth);
    } catch (const Error&) {
      return 0.5;
    }
  }
  return ml::accuracy(pred, truth);
}

/// RMSProp without momentum: each parameter's step is scaled by the running
/// RMS of its own gradient.
class RmsProp {
 public:
  RmsProp(const GcnModel& m, double lr, double decay = 0.9, double eps = 1e-8)
      : lr_(lr), decay_(decay), eps_(eps), sq_(Gradients::zeros_like(m)) {}

  void step(GcnModel& m, const Gradients& g) {
    for (std::size_t l = 0; l < m.conv.size(); ++l) {
      update(m.conv[l], sq_.conv[l], g.conv[l]);
      update(m.conv_bias[l], sq_.conv_bias[l], g.conv_bias[l]);
    }
    update(m.head, sq_.head, g.head);
    update(m.bias, sq_.bias, g.bias);
  }

 private:
  template <typename T>
  void update(T& param, T& sq, const T& grad) {
    sq = decay_ * sq + (1.0 - decay_) * grad.cwiseProduct(grad);
    param.array() -= lr_ * grad.array() / (sq.array().sqrt() + eps_);
  }

  double lr_, decay_, eps_;
  Gradients sq_;
};

inline void check_finite(const GcnModel& m) {
  bool ok = m.head.allFinite() && m.bias.allFinite();
  for (const Matrix& w : m.conv) ok = ok && w.allFinite();
  for (const Vector& b : m.conv_bias) ok = ok && b.allFinite();
  if (!ok) throw Error(Errc::kNonFinite, "non-finite model weights during training");
}

/// Mini-batch training on a stratified split; deterministic for a fixed seed.
inline TrainResult train(const Dataset& ds, const FeatureEncoder& enc, const ArchParams& arch,
                         const TrainConfig& cfg) {
  if (ds.graphs.empty()) throw Error(Errc::kDegenerateDataset, "empty dataset");
  const std::vector<int> labels = ds.labels();
  if (std::adjacent_find(labels.begin(), labels.end(), std::not_equal_to<>()) == labels.end())
    throw Error(Errc::kDegenerateDataset, "dataset has a single class");
  if (cfg.batch_size == 0 || cfg.epochs < 0 || !(cfg.learning_rate > 0.0))
    throw Error(Errc::kInvalidParams, "bad training configuration");

  TrainResult result;
  result.split = ml::stratified_split(labels, cfg.split_fraction, cfg.seed);
  std::vector<PreparedGraph> train_set, test_set;
  for (std::size_t i : result.split.train) train_set.push_back(prepare(enc, ds.graphs[i]));
  for (std::size_t i : result.split.test) test_set.push_back(prepare(enc, ds.graphs[i]));

  result.model = init_model(enc, arch, std::max(ds.num_classes, 2), cfg.seed);
  GcnModel& model = result.model;
  RmsProp opt(model, cfg.learning_rate);
  std::vector<std::size_t> order(train_set.size());
  std::vector<PreparedGraph> batch;
  Gradients grads;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    Rng rng(cfg.seed, 0x100000ULL + static_cast<std::uint64_t>(epoch));
    rng.shuffle(order);
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t end = std::min(order.size(), start + cfg.batch_size);
      batch.clear();
      for (std::size_t i = start; i < end; ++i) batch.push_back(train_set[order[i]]);
      loss_and_gradients(model, batch, cfg.l2, grads);
      opt.step(model, grads);
    }
    check_finite(model);
    EpochStats s;
    s.epoch = epoch + 1;
    s.train_loss = loss_only(model, train_set, cfg.l2);
    s.train_metric = evaluate_metric(model, train_set, ds.metric_kind);
    if (!test_set.empty()) {
      s.test_loss = loss_only(model, test_set, cfg.l2);
      s.test_metric = evaluate_metric(model, test_set, ds.metric_kind);
    }
    if (!std::isfinite(s.train_loss)) throw Error(Errc::kNonFinite, "non-finite training loss");
    result.history.push_back(s);
  }
  return result;
}

// --------------------------------------------------------------- model I/O

inline json matrix_to_json(const Matrix& m) {
  json data = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back(m(i, j));
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

inline Matrix matrix_from_json(const json& j) {
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  const auto& data = j.at("data");
  if (rows < 0 || cols < 0 || data.size() != static_cast<std::size_t>(rows * cols))
    throw Error(Errc::kShapeMismatch, "matrix data length does not match rows*cols");
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j2 = 0; j2 < cols; ++j2) m(i, j2) = data[static_cast<std::size_t>(i * cols + j2)].get<double>();
  return m;
}

inline json encoder_to_json(const FeatureEncoder& e) {
  if (e.mode == EncoderMode::kColorOneHot) return json{{"mode", "color-onehot"}};
  return json{{"mode", "atom-basic"}, {"vocab", e.vocab}, {"degree_cap", e.degree_cap}};
}

inline FeatureEncoder encoder_from_json(const json& j) {
  const std::string mode = j.at("mode").get<std::string>();
  if (mode == "color-onehot") return FeatureEncoder::color();
  if (mode == "atom-basic")
    return FeatureEncoder::atom(j.at("vocab").get<std::vector<std::string>>(), j.value("degree_cap", 5));
  throw Error(Errc::kMalformedFile, "unknown encoder mode " + mode);
}

inline json model_to_json(const GcnModel& m) {
  json layers = json::array();
  for (std::size_t l = 0; l < m.conv.size(); ++l) {
    json layer = matrix_to_json(m.conv[l]);
    layer["bias"] = std::vector<double>(m.conv_bias[l].data(), m.conv_bias[l].data() + m.conv_bias[l].size());
    layers.push_back(std::move(layer));
  }
  json head = matrix_to_json(m.head);
  head["bias"] = std::vector<double>(m.bias.data(), m.bias.data() + m.bias.size());
  return json{{"encoder", encoder_to_json(m.encoder)},
              {"layers", std::move(layers)},
              {"head", std::move(head)},
              {"arch", {{"L", m.layers()}, {"hidden", m.hidden()}, {"num_classes", m.num_classes()}}}};
}

inline GcnModel model_from_json(const json& j) {
  GcnModel m;
  try {
    m.encoder = encoder_from_json(j.at("encoder"));
    for (const auto& l : j.at("layers")) {
      m.conv.push_back(matrix_from_json(l));
      const auto b = l.at("bias").get<std::vector<double>>();
      m.conv_bias.emplace_back(Eigen::Map<const Vector>(b.data(), static_cast<Eigen::Index>(b.size())));
    }
    m.head = matrix_from_json(j.at("head"));
    const auto bias = j.at("head").at("bias").get<std::vector<double>>();
    m.bias = Eigen::Map<const Vector>(bias.data(), static_cast<Eigen::Index>(bias.size()));
  } catch (const json::exception& e) {
    throw Error(Errc::kMalformedFile, std::string("model file: ") + e.what());
  }
  m.check_shapes();
  return m;
}

inline std::string model_fingerprint(const GcnModel& m) {
  return hex64(fnv1a64(model_to_json(m).dump()));
}

inline void save_model(const std::string& path, const GcnModel& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::kFileNotFound, "cannot write " + path);
  out << model_to_json(m).dump() << '\n';
}

inline GcnModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kFileNotFound, "cannot read " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(Errc::kMalformedFile, std::string("model file: ") + e.what());
  }
  return model_from_json(j);
}

}  // namespace gci::gnn
