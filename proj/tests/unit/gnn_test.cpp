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

#include <numeric>

#include "gci/gnn.hpp"
#include "gci/smiles.hpp"
#include "gci/synthgen.hpp"

namespace gci::gnn {
namespace {

Graph random_colored(Rng& rng, std::size_t n) {
  Graph g = synth::barabasi_albert(n, 1 + rng.below(2), rng, Color::kBlue);
  for (auto& node : g.nodes) node = static_cast<Color>(rng.below(kNumColors));
  g.label = static_cast<int>(rng.below(2));
  return g;
}

GcnModel randomized(const FeatureEncoder& enc, ArchParams arch, std::uint64_t seed) {
  GcnModel m = init_model(enc, arch, 2, seed);
  Rng rng(seed, 99);
  for (auto& b : m.conv_bias)
    for (Eigen::Index i = 0; i < b.size(); ++i) b(i) = 0.1 * rng.normal();
  for (Eigen::Index i = 0; i < m.bias.size(); ++i) m.bias(i) = 0.1 * rng.normal();
  return m;
}

std::vector<int> random_perm(std::size_t n, Rng& rng) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  rng.shuffle(p);
  return p;
}

TEST(Encode, ColorOneHot) {
  Graph g;
  g.nodes = {Color::kBlue, Color::kPurple};
  const Matrix x = encode(FeatureEncoder::color(), g);
  EXPECT_EQ(x.row(0), (Eigen::RowVector4d(1, 0, 0, 0)));
  EXPECT_EQ(x.row(1), (Eigen::RowVector4d(0, 0, 0, 1)));
}

TEST(Encode, AtomBasic) {
  const FeatureEncoder enc = FeatureEncoder::atom({"C", "N", "O"}, 5);
  EXPECT_EQ(enc.dim(), 11);
  const Graph g = smiles::parse_smiles("c1ccccc1");
  const Matrix x = encode(enc, g);
  Eigen::RowVectorXd want = Eigen::RowVectorXd::Zero(11);
  want(0) = 1;      // C
  want(4) = 1;      // aromatic
  want(5 + 2) = 1;  // degree 2
  EXPECT_EQ(x.row(0), want);
  EXPECT_EQ(encode(enc, smiles::parse_smiles("CS")).row(1)(3), 1.0);  // "other"
}

TEST(Encode, ModeMismatch) {
  try {
    encode(FeatureEncoder::color(), smiles::parse_smiles("CC"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kModeMismatch);
  }
}

TEST(Adjacency, Normalization) {
  Graph one;
  one.nodes = {Color::kBlue};
  EXPECT_DOUBLE_EQ(Matrix(normalized_adjacency(one))(0, 0), 1.0);
  Graph two;
  two.nodes = {Color::kBlue, Color::kBlue};
  two.add_edge(0, 1);
  const Matrix a(normalized_adjacency(two));
  EXPECT_TRUE(a.isApprox(Matrix::Constant(2, 2, 0.5)));
}

TEST(Forward, ZeroWeightsGiveBias) {
  GcnModel m = init_model(FeatureEncoder::color(), {2, 4}, 2, 0);
  for (auto& w : m.conv) w.setZero();
  m.head.setZero();
  m.bias << 0.3, -0.7;
  Graph g;
  g.nodes = {Color::kRed};
  EXPECT_TRUE(forward(m, g).logits.isApprox(m.bias));
}

TEST(Forward, IsolatedNodeIdentityLayer) {
  GcnModel m = init_model(FeatureEncoder::color(), {1, 4}, 2, 0);
  m.conv[0].setIdentity();
  Graph g;
  g.nodes = {Color::kYellow};
  const Vector e = forward(m, g).layer_embeddings.at(0);
  EXPECT_TRUE(e.isApprox(Eigen::Vector4d(0, 0, 1, 0)));
}

TEST(Forward, PermutationInvariance) {
  Rng rng(12);
  const GcnModel cm = randomized(FeatureEncoder::color(), {3, 8}, 1);
  const GcnModel am = randomized(FeatureEncoder::atom(), {4, 8}, 2);
  for (int t = 0; t < 20; ++t) {
    const Graph g = random_colored(rng, 5 + rng.below(10));
    const Graph p = permute_nodes(g, random_perm(g.nodes.size(), rng));
    EXPECT_LT((forward(cm, g).logits - forward(cm, p).logits).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_LT((embed(cm, g) - embed(cm, p)).cwiseAbs().maxCoeff(), 1e-9);
  }
  for (const char* s : {"CC(=O)Oc1ccccc1C(=O)O", "c1ccc2ccccc2c1", "OC(=O)C(F)(F)F"}) {
    const Graph g = smiles::parse_smiles(s);
    const Graph p = permute_nodes(g, random_perm(g.nodes.size(), rng));
    EXPECT_LT((forward(am, g).logits - forward(am, p).logits).cwiseAbs().maxCoeff(), 1e-9) << s;
  }
}

TEST(Embed, ShapeAndDeterminism) {
  const GcnModel m = randomized(FeatureEncoder::color(), {3, 16}, 3);
  Rng rng(13);
  const Graph g = random_colored(rng, 9);
  const Vector a = embed(m, g);
  EXPECT_EQ(a.size(), 16);
  EXPECT_EQ(a, embed(m, Graph(g)));
}

TEST(Gradients, MatchFiniteDifferences) {
  Rng rng(14);
  const char* molecules[] = {"CCO", "c1ccccc1O", "CC(=O)N", "OC(=O)c1ccccc1Cl", "C1CCC(F)CC1"};
  for (int t = 0; t < 20; ++t) {
    const bool mol = t % 4 == 3;
    const FeatureEncoder enc = mol ? FeatureEncoder::atom() : FeatureEncoder::color();
    const GcnModel m = randomized(enc, {1 + static_cast<int>(rng.below(4)), 3 + static_cast<int>(rng.below(6))},
                                  100 + static_cast<std::uint64_t>(t));
    Graph g = mol ? smiles::parse_smiles(molecules[t % 5]) : random_colored(rng, 4 + rng.below(8));
    g.label = t % 2;
    const GradCheckReport r = grad_check(m, g, 1e-5, static_cast<std::uint64_t>(t), 64, t % 3 == 0 ? 1e-3 : 0.0);
    EXPECT_LT(r.max_relative_error, 1e-4) << "instance " << t;
    EXPECT_GT(r.checked, 0u);
  }
}

TEST(Gradients, UniformLogitsHeadBias) {
  GcnModel m = init_model(FeatureEncoder::color(), {2, 4}, 2, 0);
  for (auto& w : m.conv) w.setZero();
  m.head.setZero();
  Rng rng(15);
  std::vector<PreparedGraph> batch;
  std::vector<int> labels{1, 1, 0, 1};
  for (int y : labels) {
    Graph g = random_colored(rng, 6);
    g.label = y;
    batch.push_back(prepare(m.encoder, g));
  }
  Gradients grads;
  loss_and_gradients(m, batch, 0.0, grads);
  // mean over graphs of softmax(0) - onehot(y): p = 0.5 each, 3 of 4 labels are 1.
  EXPECT_NEAR(grads.bias(0), 0.5 - 0.25, 1e-12);
  EXPECT_NEAR(grads.bias(1), 0.5 - 0.75, 1e-12);
}

TEST(Gradients, CheckIsDeterministic) {
  const GcnModel m = randomized(FeatureEncoder::color(), {2, 5}, 4);
  Rng rng(16);
  const Graph g = random_colored(rng, 7);
  const auto a = grad_check(m, g, 1e-5, 3);
  const auto b = grad_check(m, g, 1e-5, 3);
  EXPECT_EQ(a.max_relative_error, b.max_relative_error);
  EXPECT_EQ(a.checked, b.checked);
}

TEST(Train, LearnsColorsAndIsDeterministic) {
  synth::RecipeConfig rc;
  rc.count = 200;
  rc.seed = 5;
  const Dataset ds = synth::recipe_colors3(rc);
  TrainConfig cfg;
  cfg.epochs = 20;
  cfg.seed = 5;
  const TrainResult a = train(ds, FeatureEncoder::color(), {3, 16}, cfg);
  const TrainResult b = train(ds, FeatureEncoder::color(), {3, 16}, cfg);
  EXPECT_GE(a.history.back().train_metric, 0.95);
  EXPECT_EQ(model_fingerprint(a.model), model_fingerprint(b.model));
  EXPECT_EQ(a.history.size(), 20u);
  EXPECT_LT(a.history.back().train_loss, a.history.front().train_loss);
}

TEST(Train, SingleClassRejected) {
  synth::RecipeConfig rc;
  rc.count = 8;
  Dataset ds = synth::recipe_colors3(rc);
  for (auto& g : ds.graphs) g.label = 0;
  try {
    train(ds, FeatureEncoder::color(), {3, 16}, TrainConfig{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kDegenerateDataset);
  }
}

TEST(ModelIo, JsonRoundTrip) {
  const GcnModel m = randomized(FeatureEncoder::atom(), {4, 6}, 6);
  const GcnModel r = model_from_json(model_to_json(m));
  EXPECT_EQ(model_fingerprint(m), model_fingerprint(r));
  const Graph g = smiles::parse_smiles("CC(=O)Oc1ccccc1C(=O)O");
  EXPECT_EQ(forward(m, g).logits, forward(r, g).logits);
}

TEST(ModelIo, ShapeMismatchRejected) {
  GcnModel m = init_model(FeatureEncoder::color(), {2, 4}, 2, 0);
  m.conv[1] = Matrix::Zero(3, 4);
  EXPECT_THROW(m.check_shapes(), Error);
}

}  // namespace
}  // namespace gci::gnn
