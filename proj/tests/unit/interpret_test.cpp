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

#include "gci/interpret.hpp"
#include "gci/smiles.hpp"
#include "gci/synthgen.hpp"

namespace gci::interp {
namespace {

using K = Expr::Kind;

Graph random_graph(Rng& rng) {
  Graph g = synth::barabasi_albert(6 + rng.below(6), 1, rng, static_cast<Color>(rng.below(3)));
  const std::size_t recolor = rng.below(5);
  for (std::size_t i = 0; i < recolor; ++i) g.nodes[rng.below(g.nodes.size())] = static_cast<Color>(rng.below(4));
  if (rng.below(2)) g = synth::attach_square(g, rng);
  return g;
}

Expr random_expr(Rng& rng, int depth) {
  if (depth == 0 || rng.below(3) == 0) {
    switch (rng.below(3)) {
      case 0: return Expr::majority(static_cast<Color>(rng.below(4)));
      case 1: return Expr::has_color(static_cast<Color>(rng.below(4)));
      default: return Expr::square();
    }
  }
  switch (rng.below(3)) {
    case 0: return Expr::all_of(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 1: return Expr::any_of(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    default: return Expr::negate(random_expr(rng, depth - 1));
  }
}

TEST(Parse, SingleLeaf) {
  const auto hs = parse_spec("h0 = color(blue)\n");
  ASSERT_EQ(hs.size(), 1u);
  EXPECT_EQ(hs[0].name, "h0");
  EXPECT_EQ(hs[0].expr.kind, K::kColor);
  EXPECT_EQ(hs[0].expr.color, Color::kBlue);
}

TEST(Parse, AndNode) {
  const auto hs = parse_spec("h3 = color(red) AND motif(square)");
  ASSERT_EQ(hs.size(), 1u);
  EXPECT_EQ(hs[0].expr.kind, K::kAnd);
  EXPECT_EQ(hs[0].expr.to_string(), "(color(red) AND motif(square))");
}

TEST(Parse, AndBindsTighterThanOr) {
  const auto h = parse_spec("x = color(red) OR color(blue) AND motif(square)")[0];
  EXPECT_EQ(h.expr.kind, K::kOr);
  EXPECT_EQ(h.expr.args.at(1).kind, K::kAnd);
  const auto p = parse_spec("x = (color(red) OR color(blue)) AND motif(square)")[0];
  EXPECT_EQ(p.expr.kind, K::kAnd);
}

TEST(Parse, NotCommentsAndBlankLines) {
  const auto hs = parse_spec("# header\n\nnb = NOT color(blue)  # trailing\np = hascolor(purple)\n");
  ASSERT_EQ(hs.size(), 2u);
  EXPECT_EQ(hs[0].expr.kind, K::kNot);
  EXPECT_EQ(hs[1].expr.kind, K::kHasColor);
}

TEST(Parse, RoundTripThroughToString) {
  Rng rng(1);
  for (int t = 0; t < 50; ++t) {
    const Expr e = random_expr(rng, 4);
    const auto back = parse_spec("h = " + e.to_string());
    EXPECT_EQ(back[0].expr.to_string(), e.to_string());
  }
}

Error parse_error(std::string_view text) {
  try {
    parse_spec(text);
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "no error for " << text;
  return Error(Errc::kMalformedFile, "none");
}

TEST(Parse, Errors) {
  EXPECT_EQ(parse_error("h = fg(benzene)").code(), Errc::kUnknownAtom);
  EXPECT_EQ(parse_error("h = colour(blue)").code(), Errc::kUnknownAtom);
  EXPECT_EQ(parse_error("h = color(green)").code(), Errc::kUnknownAtom);
  EXPECT_EQ(parse_error("h = color(blue) AND").code(), Errc::kSyntaxError);
  EXPECT_EQ(parse_error("h color(blue)").code(), Errc::kSyntaxError);
  EXPECT_EQ(parse_error("h = (color(blue)").code(), Errc::kSyntaxError);
  EXPECT_EQ(parse_error("h = color(blue)\nh = color(red)").code(), Errc::kDuplicateName);
  const Error e = parse_error("a = color(red)\nb = color(red) XOR color(blue)");
  EXPECT_EQ(e.line(), 2);
  EXPECT_GT(e.column(), 0);
}

TEST(Parse, BundledSpecFiles) {
  for (const char* name : {"colors3.gci", "square.gci", "independent.gci", "bbbp_functional_groups.gci"}) {
    const auto hs = load_spec(std::string(GCI_SPECS_DIR_PATH) + "/" + name);
    EXPECT_FALSE(hs.empty()) << name;
  }
  EXPECT_EQ(load_spec(std::string(GCI_SPECS_DIR_PATH) + "/bbbp_functional_groups.gci").size(), kNumGroups);
  EXPECT_THROW(load_spec("/nonexistent.gci"), Error);
}

TEST(Eval, ColorAndNegation) {
  Rng rng(2);
  const Graph blue = synth::barabasi_albert(8, 1, rng, Color::kBlue);
  EXPECT_TRUE(eval(Expr::majority(Color::kBlue), blue));
  EXPECT_FALSE(eval(Expr::negate(Expr::majority(Color::kBlue)), blue));
  EXPECT_FALSE(eval(Expr::has_color(Color::kPurple), blue));
}

TEST(Eval, MajorityIsStrict) {
  Graph g;
  g.nodes = {Color::kRed, Color::kRed, Color::kBlue, Color::kBlue};
  EXPECT_FALSE(eval(Expr::majority(Color::kRed), g));
  g.nodes.emplace_back(Color::kRed);
  EXPECT_TRUE(eval(Expr::majority(Color::kRed), g));
  EXPECT_TRUE(eval(Expr::has_color(Color::kBlue), g));
}

TEST(Eval, SingleNodeDoesNotFlipMajority) {
  Rng rng(3);
  Graph g = synth::barabasi_albert(8, 1, rng, Color::kRed);
  g = synth::recolor_random_node(g, Color::kPurple, rng);
  EXPECT_TRUE(eval(Expr::majority(Color::kRed), g));
  EXPECT_TRUE(eval(Expr::has_color(Color::kPurple), g));
}

TEST(Eval, SquareMotif) {
  synth::RecipeConfig rc;
  rc.count = 20;
  const Dataset ds = synth::recipe_square_correlated(rc);
  for (const Graph& g : ds.graphs) EXPECT_EQ(eval(Expr::square(), g), contains_cycle_of_length(g, 4));
  EXPECT_TRUE(eval(Expr::square(), smiles::parse_smiles("C1CCC1")));
  EXPECT_FALSE(eval(Expr::square(), smiles::parse_smiles("c1ccccc1")));
}

TEST(Eval, KindMismatch) {
  Rng rng(4);
  const Graph colored = synth::barabasi_albert(5, 1, rng);
  try {
    eval(Expr::fg(Group::kHydroxyl), colored);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kKindMismatch);
  }
  EXPECT_THROW(eval(Expr::majority(Color::kBlue), smiles::parse_smiles("CC")), Error);
}

TEST(Eval, FunctionalGroupExamples) {
  EXPECT_TRUE(eval(Expr::fg(Group::kHydroxyl), smiles::parse_smiles("CCO")));
  EXPECT_FALSE(eval(Expr::fg(Group::kHydroxyl), smiles::parse_smiles("CC(=O)C")));
  EXPECT_TRUE(eval(Expr::fg(Group::kKetone), smiles::parse_smiles("CC(=O)C")));
  EXPECT_FALSE(eval(Expr::fg(Group::kKetone), smiles::parse_smiles("CC=O")));
  EXPECT_FALSE(eval(Expr::fg(Group::kKetone), smiles::parse_smiles("CC(=O)O")));
  EXPECT_TRUE(eval(Expr::fg(Group::kPhenyl), smiles::parse_smiles("Cc1ccccc1")));
  EXPECT_FALSE(eval(Expr::fg(Group::kPhenyl), smiles::parse_smiles("C1CCCCC1")));
  EXPECT_TRUE(eval(Expr::fg(Group::kAromaticRing), smiles::parse_smiles("c1ccncc1")));
  for (const auto& ex : functional_group_examples())
    EXPECT_EQ(eval(Expr::fg(ex.group), smiles::parse_smiles(ex.smiles)), ex.expected)
        << ex.smiles << " " << group_name(ex.group);
}

TEST(Properties, DeMorgan) {
  Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    const Expr a = random_expr(rng, 3);
    const Expr b = random_expr(rng, 3);
    const Graph g = random_graph(rng);
    EXPECT_EQ(eval(Expr::negate(Expr::all_of(a, b)), g), eval(Expr::any_of(Expr::negate(a), Expr::negate(b)), g));
    EXPECT_EQ(eval(Expr::negate(Expr::any_of(a, b)), g), eval(Expr::all_of(Expr::negate(a), Expr::negate(b)), g));
    EXPECT_EQ(eval(Expr::negate(Expr::negate(a)), g), eval(a, g));
  }
}

Dataset fixture_molecules() {
  Dataset ds;
  for (const auto& ex : functional_group_examples())
    if (ex.group == Group::kHydroxyl) ds.graphs.push_back(smiles::parse_smiles(ex.smiles));
  return ds;
}

TEST(Subset, CarboxylImpliesHydroxyl) {
  const Dataset ds = fixture_molecules();
  const Interpretation carboxyl{"carboxyl", Expr::fg(Group::kCarboxyl)};
  const Interpretation hydroxyl{"hydroxyl", Expr::fg(Group::kHydroxyl)};
  EXPECT_TRUE(empirical_subset(carboxyl, hydroxyl, ds));
  EXPECT_FALSE(empirical_subset(hydroxyl, carboxyl, ds));
  EXPECT_TRUE(empirical_subset(hydroxyl, hydroxyl, ds));
}

TEST(Subset, DisjointColors) {
  synth::RecipeConfig rc;
  rc.count = 40;
  const Dataset ds = synth::recipe_colors3(rc);
  EXPECT_FALSE(empirical_subset({"b", Expr::majority(Color::kBlue)}, {"r", Expr::majority(Color::kRed)}, ds));
}

TEST(Matrix, ShapeAndOneHot) {
  synth::RecipeConfig rc;
  rc.count = 60;
  const Dataset ds = synth::recipe_colors3(rc);
  const auto hs = parse_spec("b = color(blue)\nr = color(red)\ny = color(yellow)\n");
  const InterpretationMatrix m = interpretation_matrix(hs, ds);
  EXPECT_EQ(m.rows, 60u);
  EXPECT_EQ(m.cols, 3u);
  for (std::size_t r = 0; r < m.rows; ++r) EXPECT_EQ(m.at(r, 0) + m.at(r, 1) + m.at(r, 2), 1);
  const std::vector<std::size_t> idx{5, 1};
  const InterpretationMatrix sub = interpretation_matrix(hs, ds, idx);
  EXPECT_EQ(sub.rows, 2u);
  EXPECT_EQ(sub.at(0, 0), m.at(5, 0));
}

}  // namespace
}  // namespace gci::interp
