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


// Train a GCN on the three-color benchmark, extract concepts with k-means and
// print the interpretation/concept alignment matrix.

#include <iostream>

#include "gci/concepts.hpp"
#include "gci/interpret.hpp"
#include "gci/metrics.hpp"
#include "gci/synthgen.hpp"

int main() {
  using namespace gci;
  synth::RecipeConfig rc;
  rc.count = 600;
  rc.seed = 1;
  const Dataset ds = synth::recipe_colors3(rc);

  gnn::TrainConfig tc = gnn::TrainConfig::synthetic();
  tc.seed = 1;
  const gnn::TrainResult tr = gnn::train(ds, gnn::FeatureEncoder::color(), {3, 16}, tc);
  std::cout << "train accuracy " << metrics::fixed4(tr.history.back().train_metric) << "\n";

  const auto hs = interp::parse_spec("blue = color(blue)\nred = color(red)\nyellow = color(yellow)\n");
  const auto concepts = concepts::gcexplainer_extract(tr.model, ds, 3, 1);
  const auto noisy = concepts::noisy_extract(concepts, 0.2, 1);

  std::cout << "\ngcexplainer\n" << metrics::to_csv(metrics::ia_matrix(concepts, hs, ds));
  std::cout << "\nnoisy (theta 0.2)\n" << metrics::to_csv(metrics::ia_matrix(noisy, hs, ds));
  std::cout << "\ncompleteness " << metrics::fixed4(metrics::completeness(hs, ds).value) << "\n";
  return 0;
}
