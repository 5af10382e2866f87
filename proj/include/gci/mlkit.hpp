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

// Shallow-model toolkit: k-means, logistic regression, ranking and
// classification metrics, stratified splits and mutual information.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "gci/common.hpp"

namespace gci::ml {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// ---------------------------------------------------------------- k-means

struct Clustering {
  int k = 0;
  std::vector<int> assignment;
  Matrix centroids;  // k x d
  double inertia = 0.0;
  // Inertia after each Lloyd iteration of the retained restart.
  std::vector<double> inertia_trace;
};

struct KMeansOptions {
  int max_iters = 300;
  double tol = 1e-6;
  int restarts = 5;
};

namespace detail {

inline double sq_dist(const Matrix& a, Eigen::Index i, const Matrix& b, Eigen::Index j) {
  return (a.row(i) - b.row(j)).squaredNorm();
}

inline Matrix kmeanspp_init(const Matrix& x, int k, Rng& rng) {
  const Eigen::Index n = x.rows();
  Matrix c(k, x.cols());
  std::vector<char> taken(static_cast<std::size_t>(n), 0);
  Eigen::Index first = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n)));
  c.row(0) = x.row(first);
  taken[static_cast<std::size_t>(first)] = 1;
  std::vector<double> d2(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) d2[static_cast<std::size_t>(i)] = sq_dist(x, i, c, 0);
  for (int j = 1; j < k; ++j) {
    double total = 0.0;
    for (double d : d2) total += d;
    Eigen::Index pick = -1;
    if (total > 0.0) {
      const double r = rng.uniform() * total;
      double acc = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        acc += d2[static_cast<std::size_t>(i)];
        if (acc > r && d2[static_cast<std::size_t>(i)] > 0.0) {
          pick = i;
          break;
        }
      }
      if (pick < 0) {
        for (Eigen::Index i = n - 1; i >= 0; --i) {
          if (d2[static_cast<std::size_t>(i)] > 0.0) {
            pick = i;
            break;
          }
        }
      }
    } else {
      // All remaining points coincide with a centre; take the next unused one.
      for (Eigen::Index i = 0; i < n; ++i) {
        if (!taken[static_cast<std::size_t>(i)]) {
          pick = i;
          break;
        }
      }
    }
    c.row(j) = x.row(pick);
    taken[static_cast<std::size_t>(pick)] = 1;
    for (Eigen::Index i = 0; i < n; ++i)
      d2[static_cast<std::size_t>(i)] = std::min(d2[static_cast<std::size_t>(i)], sq_dist(x, i, c, j));
  }
  return c;
}

inline Clustering lloyd(const Matrix& x, Matrix centroids, const KMeansOptions& opt) {
  const Eigen::Index n = x.rows();
  const int k = static_cast<int>(centroids.rows());
  Clustering out;
  out.k = k;
  out.assignment.assign(static_cast<std::size_t>(n), 0);
  std::vector<double> dist(static_cast<std::size_t>(n));
  double previous = std::numeric_limits<double>::infinity();

  for (int iter = 0; iter < opt.max_iters; ++iter) {
    std::vector<Eigen::Index> counts(static_cast<std::size_t>(k), 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      int best = 0;
      double best_d = sq_dist(x, i, centroids, 0);
      for (int j = 1; j < k; ++j) {
        const double d = sq_dist(x, i, centroids, j);
        if (d < best_d) {
          best_d = d;
          best = j;
        }
      }
      out.assignment[static_cast<std::size_t>(i)] = best;
      dist[static_cast<std::size_t>(i)] = best_d;
      ++counts[static_cast<std::size_t>(best)];
    }
    // Empty clusters take the point farthest from its current centre.
    for (int j = 0; j < k; ++j) {
      if (counts[static_cast<std::size_t>(j)] > 0) continue;
      Eigen::Index far = -1;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (counts[static_cast<std::size_t>(out.assignment[static_cast<std::size_t>(i)])] < 2) continue;
        if (far < 0 || dist[static_cast<std::size_t>(i)] > dist[static_cast<std::size_t>(far)]) far = i;
      }
      if (far < 0) break;
      --counts[static_cast<std::size_t>(out.assignment[static_cast<std::size_t>(far)])];
      out.assignment[static_cast<std::size_t>(far)] = j;
      counts[static_cast<std::size_t>(j)] = 1;
      dist[static_cast<std::size_t>(far)] = 0.0;
    }
    centroids.setZero();
    for (Eigen::Index i = 0; i < n; ++i) centroids.row(out.assignment[static_cast<std::size_t>(i)]) += x.row(i);
    for (int j = 0; j < k; ++j) {
      if (counts[static_cast<std::size_t>(j)] > 0)
        centroids.row(j) /= static_cast<double>(counts[static_cast<std::size_t>(j)]);
    }
    double inertia = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      inertia += sq_dist(x, i, centroids, out.assignment[static_cast<std::size_t>(i)]);
    out.inertia_trace.push_back(inertia);
    out.inertia = inertia;
    if (previous - inertia < opt.tol) break;
    previous = inertia;
  }
  out.centroids = std::move(centroids);
  return out;
}

}  // namespace detail

/// Lloyd's algorithm from k-means++ seeds; the restart with the lowest
/// inertia wins (earliest restart on ties).
inline Clustering kmeans(const Matrix& points, int k, std::uint64_t seed,
                         const KMeansOptions& opt = {}) {
  if (k < 1) throw Error(Errc::kInvalidParams, "k must be positive");
  if (static_cast<Eigen::Index>(k) > points.rows())
    throw Error(Errc::kKTooLarge, "k=" + std::to_string(k) + " exceeds " +
                                      std::to_string(points.rows()) + " points");
  Clustering best;
  bool have = false;
  for (int r = 0; r < std::max(1, opt.restarts); ++r) {
    Rng rng(seed, static_cast<std::uint64_t>(r));
    Clustering c = detail::lloyd(points, detail::kmeanspp_init(points, k, rng), opt);
    if (!have || c.inertia < best.inertia) {
      best = std::move(c);
      have = true;
    }
  }
  return best;
}

inline Clustering kmeans(const std::vector<std::vector<double>>& points, int k,
                         std::uint64_t seed, const KMeansOptions& opt = {}) {
  if (points.empty()) throw Error(Errc::kKTooLarge, "no points");
  const std::size_t d = points.front().size();
  Matrix m(static_cast<Eigen::Index>(points.size()), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != d) throw Error(Errc::kDimensionMismatch, "ragged point list");
    for (std::size_t j = 0; j < d; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = points[i][j];
  }
  return kmeans(m, k, seed, opt);
}

// ---------------------------------------------------- logistic regression

struct LinearClassifier {
  Matrix weights;  // features x classes
  Vector bias;     // classes
  int classes = 0;
};

struct LogRegOptions {
  double l2 = 1e-4;
  std::uint64_t seed = 0;
  int epochs = 1000;
  int num_classes = 0;  // 0: one more than the largest label
  std::vector<double>* loss_trace = nullptr;
};

inline Matrix predict_proba(const LinearClassifier& clf, const Matrix& x) {
  if (x.cols() != clf.weights.rows())
    throw Error(Errc::kDimensionMismatch, "feature width " + std::to_string(x.cols()) +
                                              " != " + std::to_string(clf.weights.rows()));
  Matrix scores = (x * clf.weights).rowwise() + clf.bias.transpose();
  for (Eigen::Index i = 0; i < scores.rows(); ++i) {
    const double mx = scores.row(i).maxCoeff();
    scores.row(i) = (scores.row(i).array() - mx).exp();
    scores.row(i) /= scores.row(i).sum();
  }
  return scores;
}

inline std::vector<int> predict(const LinearClassifier& clf, const Matrix& x) {
  const Matrix p = predict_proba(clf, x);
  std::vector<int> out(static_cast<std::size_t>(p.rows()));
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    Eigen::Index arg;
    p.row(i).maxCoeff(&arg);
    out[static_cast<std::size_t>(i)] = static_cast<int>(arg);
  }
  return out;
}

/// Multinomial logistic regression by full-batch gradient descent on
/// standardized features with an L2 penalty on the weights.
///
/// The step is 1/L for L = lambda_max(Z^T Z / n) / 2 + l2, an upper bound on
/// the curvature of the softmax loss, so the objective never increases. The
/// fitted weights are mapped back to the raw feature scale.
inline LinearClassifier logreg_fit(const Matrix& x, std::span<const int> y,
                                   const LogRegOptions& opt = {}) {
  const Eigen::Index n = x.rows();
  const Eigen::Index d = x.cols();
  if (static_cast<std::size_t>(n) != y.size())
    throw Error(Errc::kLengthMismatch, "X rows and y length differ");
  if (n < 2) throw Error(Errc::kDegenerateLabels, "need at least two samples");
  int classes = opt.num_classes;
  int max_label = 0;
  for (int v : y) {
    if (v < 0) throw Error(Errc::kDegenerateLabels, "negative label");
    max_label = std::max(max_label, v);
  }
  if (classes == 0) classes = max_label + 1;
  if (max_label >= classes) throw Error(Errc::kDegenerateLabels, "label exceeds class count");
  if (std::adjacent_find(y.begin(), y.end(), std::not_equal_to<>()) == y.end())
    throw Error(Errc::kDegenerateLabels, "only one class present");
  classes = std::max(classes, 2);

  Vector mean = x.colwise().mean().transpose();
  Vector scale(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    const double var = (x.col(j).array() - mean(j)).square().mean();
    scale(j) = var > 1e-24 ? std::sqrt(var) : 1.0;
  }
  Matrix z = (x.rowwise() - mean.transpose()).array().rowwise() / scale.transpose().array();

  // Curvature bound via power iteration on the augmented Gram matrix.
  Matrix aug(n, d + 1);
  aug << z, Vector::Ones(n);
  const Matrix gram = aug.transpose() * aug / static_cast<double>(n);
  Vector v = Vector::Ones(d + 1) / std::sqrt(static_cast<double>(d + 1));
  double lambda = 0.0;
  for (int it = 0; it < 200; ++it) {
    Vector w = gram * v;
    const double norm = w.norm();
    if (norm <= 0.0) break;
    lambda = norm;
    v = w / norm;
  }
  // Small margin on top of the power-iteration estimate.
  const double lr = 1.0 / (0.5 * lambda * 1.01 + opt.l2 + 1e-12);

  Matrix target = Matrix::Zero(n, classes);
  for (Eigen::Index i = 0; i < n; ++i) target(i, y[static_cast<std::size_t>(i)]) = 1.0;

  Rng rng(opt.seed);
  Matrix w(d, classes);
  for (Eigen::Index i = 0; i < w.size(); ++i) w.data()[i] = 1e-3 * rng.normal();
  Vector b = Vector::Zero(classes);
  LinearClassifier clf{w, b, classes};

  auto objective = [&](const Matrix& p) {
    double loss = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) loss -= std::log(std::max(p(i, y[static_cast<std::size_t>(i)]), 1e-300));
    return loss / static_cast<double>(n) + 0.5 * opt.l2 * clf.weights.squaredNorm();
  };

  for (int epoch = 0; epoch < opt.epochs; ++epoch) {
    const Matrix p = predict_proba(clf, z);
    if (opt.loss_trace) opt.loss_trace->push_back(objective(p));
    const Matrix residual = (p - target) / static_cast<double>(n);
    clf.weights -= lr * (z.transpose() * residual + opt.l2 * clf.weights);
    clf.bias -= lr * residual.colwise().sum().transpose();
  }
  if (opt.loss_trace) opt.loss_trace->push_back(objective(predict_proba(clf, z)));

  LinearClassifier raw;
  raw.classes = classes;
  raw.weights = clf.weights.array().colwise() / scale.array();
  raw.bias = clf.bias - raw.weights.transpose() * mean;
  return raw;
}

// --------------------------------------------------------------- metrics

/// Mann-Whitney AUROC with ties credited 0.5. Computed from integer pair
/// counts, so the result equals pairwise enumeration bit for bit.
inline double auroc(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) throw Error(Errc::kLengthMismatch, "scores and labels differ");
  std::vector<std::size_t> order(scores.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  std::uint64_t pos = 0, neg = 0, twice_wins = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    std::uint64_t p = 0, q = 0;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) {
      (labels[order[j]] ? p : q) += 1;
      ++j;
    }
    twice_wins += 2 * p * neg + p * q;
    pos += p;
    neg += q;
    i = j;
  }
  if (pos == 0 || neg == 0) throw Error(Errc::kOneClassOnly, "AUROC needs both classes");
  return static_cast<double>(twice_wins) / static_cast<double>(2 * pos * neg);
}

/// F1 of the positive class; 0 when precision + recall is 0.
inline double f1(std::span<const int> pred, std::span<const int> truth) {
  if (pred.size() != truth.size()) throw Error(Errc::kLengthMismatch, "pred and truth differ");
  std::size_t tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (pred[i] && truth[i]) ++tp;
    else if (pred[i]) ++fp;
    else if (truth[i]) ++fn;
  }
  if (tp == 0) return 0.0;
  return 2.0 * static_cast<double>(tp) / static_cast<double>(2 * tp + fp + fn);
}

inline double accuracy(std::span<const int> pred, std::span<const int> truth) {
  if (pred.size() != truth.size()) throw Error(Errc::kLengthMismatch, "pred and truth differ");
  if (pred.empty()) return 0.0;
  std::size_t ok = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) ok += pred[i] == truth[i];
  return static_cast<double>(ok) / static_cast<double>(pred.size());
}

struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Per-class proportional split; each class contributes
/// round(test_fraction * class_size) test items. Both lists are sorted.
inline Split stratified_split(std::span<const int> labels, double test_fraction,
                              std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0))
    throw Error(Errc::kInvalidParams, "test_fraction must be in (0, 1)");
  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);
  Split s;
  for (auto& [cls, members] : by_class) {
    Rng rng(seed, 0x5eedULL + static_cast<std::uint64_t>(cls));
    rng.shuffle(members);
    const auto n_test = static_cast<std::size_t>(
        std::floor(test_fraction * static_cast<double>(members.size()) + 0.5));
    for (std::size_t i = 0; i < members.size(); ++i) (i < n_test ? s.test : s.train).push_back(members[i]);
  }
  std::sort(s.train.begin(), s.train.end());
  std::sort(s.test.begin(), s.test.end());
  return s;
}

/// Plug-in mutual information of two binary variables, in bits.
inline double mutual_information(std::span<const int> x, std::span<const int> y) {
  if (x.size() != y.size()) throw Error(Errc::kLengthMismatch, "x and y differ");
  if (x.empty()) throw Error(Errc::kLengthMismatch, "empty input");
  double joint[2][2] = {{0, 0}, {0, 0}};
  for (std::size_t i = 0; i < x.size(); ++i) joint[x[i] ? 1 : 0][y[i] ? 1 : 0] += 1.0;
  const double n = static_cast<double>(x.size());
  double mi = 0.0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      if (joint[a][b] == 0.0) continue;
      const double pab = joint[a][b] / n;
      const double pa = (joint[a][0] + joint[a][1]) / n;
      const double pb = (joint[0][b] + joint[1][b]) / n;
      mi += pab * std::log2(pab / (pa * pb));
    }
  }
  return std::max(0.0, mi);
}

template <typename T>
std::vector<T> gather(const std::vector<T>& v, const std::vector<std::size_t>& idx) {
  std::vector<T> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(v[i]);
  return out;
}

inline Matrix gather_rows(const Matrix& m, const std::vector<std::size_t>& idx) {
  Matrix out(static_cast<Eigen::Index>(idx.size()), m.cols());
  for (std::size_t i = 0; i < idx.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = m.row(static_cast<Eigen::Index>(idx[i]));
  return out;
}

}  // namespace gci::ml
