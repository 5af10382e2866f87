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


// Parse SMILES strings and report which functional groups each molecule
// carries.
//
//   molecule_groups "CC(=O)Oc1ccccc1C(=O)O" "OCC"

#include <iostream>

#include "gci/interpret.hpp"
#include "gci/smiles.hpp"

int main(int argc, char** argv) {
  using namespace gci;
  if (argc < 2) {
    std::cerr << "usage: molecule_groups SMILES...\n";
    return 1;
  }
  for (int i = 1; i < argc; ++i) {
    try {
      const Graph g = smiles::parse_smiles(argv[i]);
      std::cout << argv[i] << "  atoms=" << g.nodes.size() << " bonds=" << g.edges.size() << "  groups:";
      for (std::size_t k = 0; k < interp::kNumGroups; ++k) {
        const auto group = static_cast<interp::Group>(k);
        if (interp::eval(interp::Expr::fg(group), g)) std::cout << ' ' << interp::group_name(group);
      }
      std::cout << "\n";
    } catch (const Error& e) {
      std::cout << argv[i] << "  error: " << e.what() << "\n";
    }
  }
  return 0;
}
