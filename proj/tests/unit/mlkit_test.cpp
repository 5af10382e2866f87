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


#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "gci/mlkit.hpp"

namespace gci::ml {
namespace {

// Pairwise enumeration: a win counts 2, a tie 1, over 2 * pos * neg.
double brute_auroc(const std::vector<double>& s, const std::vector<int>& y) {
  long long twice = 0, pos = 0, neg = 0;
  for (std::size_t i = 0; i < s.size(); ++i) (y[i] ? pos : neg)++;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j)
      if (y[i] == 1 && y[j] == 0) twice += s[i] > s[j] ? 2 : (s[i] == s[j] ? 1 : 0);
  return static_cast<double>(twice) / static_cast<double>(2 * pos * neg);
}

TEST(Auroc, WorkedExample) {
  const std::vector<double> s{0.1, 0.4, 0.35, 0.8};
  const std::vector<int> y{0, 0, 1, 1};
  EXPECT_EQ(auroc(s, y), 0.75);
}

TEST(Auroc, PerfectAndTied) {
  EXPECT_EQ(auroc(std::vector<double>{0.1, 0.2, 0.9}, std::vector<int>{0, 0, 1}), 1.0);
  EXPECT_EQ(auroc(std::vector<double>{0.3, 0.3, 0.3, 0.3}, std::vector<int>{0, 1, 0, 1}), 0.5);
}

TEST(Auroc, OneClassRejected) {
  EXPECT_THROW(auroc(std::vector<double>{0.1, 0.2}, std::vector<int>{1, 1}), Error);
}

TEST(Auroc, MatchesBruteForceExactly) {
  Rng rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.below(30);
    std::vector<double> s(n);
    std::vector<int> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = static_cast<double>(rng.below(6)) / 5.0;  // coarse grid forces ties
      y[i] = static_cast<int>(rng.below(2));
    }
    y[0] = 0;
    y[1] = 1;
    EXPECT_EQ(auroc(s, y), brute_auroc(s, y)) << "trial " << trial;
  }
}

TEST(F1, Cases) {
  EXPECT_EQ(f1(std::vector<int>{1, 1, 0, 0}, std::vector<int>{1, 0, 1, 0}), 0.5);
  EXPECT_EQ(f1(std::vector<int>{0, 0}, std::vector<int>{1, 0}), 0.0);
  EXPECT_EQ(f1(std::vector<int>{1, 0}, std::vector<int>{1, 0}), 1.0);
}

Matrix blobs(std::size_t per_blob, double gap, Rng& rng) {
  Matrix x(static_cast<Eigen::Index>(2 * per_blob), 2);
  for (std::size_t i = 0; i < 2 * per_blob; ++i) {
    const double off = i < per_blob ? 0.0 : gap;
    x(static_cast<Eigen::Index>(i), 0) = off + 0.3 * rng.normal();
    x(static_cast<Eigen::Index>(i), 1) = off + 0.3 * rng.normal();
  }
  return x;
}

double partition_inertia(const Matrix& x, const std::vector<int>& a) {
  double total = 0.0;
  for (int c = 0; c < 2; ++c) {
    Eigen::RowVectorXd mean = Eigen::RowVectorXd::Zero(x.cols());
    int n = 0;
    for (Eigen::Index i = 0; i < x.rows(); ++i)
      if (a[static_cast<std::size_t>(i)] == c) mean += x.row(i), ++n;
    if (n == 0) return std::numeric_limits<double>::infinity();
    mean /= n;
    for (Eigen::Index i = 0; i < x.rows(); ++i)
      if (a[static_cast<std::size_t>(i)] == c) total += (x.row(i) - mean).squaredNorm();
  }
  return total;
}

bool same_partition(const std::vector<int>& a, const std::vector<int>& b) {
  bool direct = true, flipped = true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    direct = direct && a[i] == b[i];
    flipped = flipped && a[i] == 1 - b[i];
  }
  return direct || flipped;
}

TEST(KMeans, MatchesBruteForceTwoPartition) {
  Rng rng(5);
  const Matrix x = blobs(6, 4.0, rng);
  const std::size_t n = static_cast<std::size_t>(x.rows());
  std::vector<int> best;
  double best_inertia = std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
    std::vector<int> a(n, 0);
    for (std::size_t i = 0; i + 1 < n; ++i) a[i + 1] = (mask >> i) & 1u;
    const double v = partition_inertia(x, a);
    if (v < best_inertia) best_inertia = v, best = a;
  }
  const Clustering c = kmeans(x, 2, 1);
  EXPECT_TRUE(same_partition(c.assignment, best));
  EXPECT_NEAR(c.inertia, best_inertia, 1e-9);
}

TEST(KMeans, SeparatedBlobsRecovered) {
  Rng rng(6);
  const Matrix x = blobs(20, 10.0, rng);
  std::vector<int> truth(40, 0);
  for (std::size_t i = 20; i < 40; ++i) truth[i] = 1;
  EXPECT_TRUE(same_partition(kmeans(x, 2, 3).assignment, truth));
}

TEST(KMeans, OneClusterPerPoint) {
  Rng rng(7);
  const Matrix x = blobs(3, 5.0, rng);
  const Clustering c = kmeans(x, 6, 0);
  EXPECT_NEAR(c.inertia, 0.0, 1e-12);
  std::vector<int> a = c.assignment;
  std::sort(a.begin(), a.end());
  EXPECT_EQ(a, (std::vector<int>{0, 1, 2, 3, 4, 5}));
}

TEST(KMeans, Errors) {
  Matrix x = Matrix::Zero(3, 2);
  EXPECT_THROW(kmeans(x, 4, 0), Error);
  try {
    kmeans(std::vector<std::vector<double>>{{1.0, 2.0}, {1.0}}, 1, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kDimensionMismatch);
  }
}

TEST(KMeans, InertiaNonIncreasing) {
  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix x(60, 3);
    for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = rng.normal();
    const Clustering c = kmeans(x, 4, static_cast<std::uint64_t>(trial));
    for (std::size_t i = 1; i < c.inertia_trace.size(); ++i)
      EXPECT_LE(c.inertia_trace[i], c.inertia_trace[i - 1] + 1e-12);
  }
}

TEST(KMeans, Deterministic) {
  Rng rng(9);
  const Matrix x = blobs(15, 2.0, rng);
  EXPECT_EQ(kmeans(x, 3, 4).assignment, kmeans(x, 3, 4).assignment);
}

TEST(LogReg, SeparableOneDimensional) {
  Matrix x(8, 1);
  std::vector<int> y;
  for (int i = 0; i < 8; ++i) {
    x(i, 0) = i < 4 ? -1.0 - i : 1.0 + i;
    y.push_back(i < 4 ? 0 : 1);
  }
  const auto clf = logreg_fit(x, y);
  EXPECT_EQ(accuracy(predict(clf, x), y), 1.0);
}

TEST(LogReg, ConflictingDuplicatesGiveHalf) {
  Matrix xs(6, 1);
  xs << 2.0, 2.0, 2.0, 2.0, -1.0, 5.0;
  const std::vector<int> y{0, 1, 0, 1, 0, 1};
  const auto clf = logreg_fit(xs, y);
  Matrix q(1, 1);
  q << 2.0;
  EXPECT_NEAR(predict_proba(clf, q)(0, 1), 0.5, 0.05);
}

TEST(LogReg, RandomLabelsGiveMajorityRate) {
  Rng rng(10);
  const Eigen::Index n = 1000;
  Matrix x(n, 5);
  std::vector<int> y(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int j = 0; j < 5; ++j) x(i, j) = rng.normal();
    y[static_cast<std::size_t>(i)] = rng.uniform() < 0.7 ? 1 : 0;
  }
  const Split s = stratified_split(y, 0.2, 1);
  const auto clf = logreg_fit(gather_rows(x, s.train), gather(y, s.train));
  const auto yt = gather(y, s.test);
  const double majority = static_cast<double>(std::accumulate(yt.begin(), yt.end(), 0)) / static_cast<double>(yt.size());
  EXPECT_NEAR(accuracy(predict(clf, gather_rows(x, s.test)), yt), std::max(majority, 1 - majority), 0.1);
}

TEST(LogReg, LossNeverIncreases) {
  Rng rng(11);
  Matrix x(200, 3);
  std::vector<int> y(200);
  for (Eigen::Index i = 0; i < 200; ++i) {
    for (int j = 0; j < 3; ++j) x(i, j) = rng.normal() * (j + 1) + j;
    y[static_cast<std::size_t>(i)] = x(i, 0) + 0.5 * rng.normal() > 0 ? 1 : 0;
  }
  std::vector<double> trace;
  LogRegOptions opt;
  opt.loss_trace = &trace;
  opt.epochs = 300;
  logreg_fit(x, y, opt);
  ASSERT_FALSE(trace.empty());
  for (std::size_t i = 1; i < trace.size(); ++i) EXPECT_LE(trace[i], trace[i - 1] + 1e-12);
}

TEST(LogReg, Multiclass) {
  Matrix x(9, 1);
  std::vector<int> y;
  for (int i = 0; i < 9; ++i) {
    x(i, 0) = i;
    y.push_back(i / 3);
  }
  LogRegOptions opt;
  opt.l2 = 0.0;
  opt.epochs = 5000;
  const auto clf = logreg_fit(x, y, opt);
  EXPECT_EQ(clf.classes, 3);
  EXPECT_GE(accuracy(predict(clf, x), y), 7.0 / 9.0);
}

TEST(LogReg, SingleClassRejected) {
  Matrix x = Matrix::Ones(3, 1);
  EXPECT_THROW(logreg_fit(x, std::vector<int>{1, 1, 1}), Error);
}

TEST(Split, StratifiedCountsAndDisjoint) {
  std::vector<int> y(100, 0);
  for (std::size_t i = 0; i < 30; ++i) y[i] = 1;
  const Split s = stratified_split(y, 0.2, 3);
  EXPECT_EQ(s.test.size(), 20u);
  std::size_t pos = 0;
  for (std::size_t i : s.test) pos += static_cast<std::size_t>(y[i]);
  EXPECT_EQ(pos, 6u);
  std::vector<std::size_t> all = s.train;
  all.insert(all.end(), s.test.begin(), s.test.end());
  std::sort(all.begin(), all.end());
  for (std::size_t i = 0; i < all.size(); ++i) EXPECT_EQ(all[i], i);
  EXPECT_TRUE(std::is_sorted(s.test.begin(), s.test.end()));
}

TEST(MutualInformation, Extremes) {
  const std::vector<int> x{0, 1, 0, 1, 0, 1, 0, 1};
  const std::vector<int> y{0, 0, 1, 1, 0, 0, 1, 1};
  EXPECT_NEAR(mutual_information(x, y), 0.0, 1e-12);
  EXPECT_NEAR(mutual_information(x, x), 1.0, 1e-12);
}

}  // namespace
}  // namespace gci::ml
