// Copyright 2025 The qpac authors
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

#include "qpac/circuit.hpp"

#include <algorithm>
#include <stdexcept>

namespace qpac {

bool Circuit::all_clifford() const {
  return std::all_of(gates.begin(), gates.end(),
                     [](const Gate& g) { return is_clifford(g.kind); });
}

void validate_circuit(const Circuit& c) {
  if (c.n < 0) throw std::invalid_argument("negative line count");
  for (const Gate& g : c.gates) {
    for (std::size_t i = 0; i < g.arity(); ++i) {
      if (g.targets[i] < 0 || g.targets[i] >= c.n) {
        throw std::invalid_argument("gate target out of range");
      }
    }
    if (g.arity() == 2 && g.targets[0] == g.targets[1]) {
      throw std::invalid_argument("2-qubit gate needs distinct targets");
    }
  }
}

std::vector<int> circuit_cut_crossings(const Circuit& c) {
  std::vector<int> cuts(c.n > 1 ? c.n - 1 : 0, 0);
  for (const Gate& g : c.gates) {
    if (g.arity() != 2) continue;
    const int lo = std::min(g.targets[0], g.targets[1]);
    const int hi = std::max(g.targets[0], g.targets[1]);
    for (int cut = lo; cut < hi; ++cut) ++cuts[cut];
  }
  return cuts;
}

int circuit_schmidt_bound(const Circuit& c) {
  const std::vector<int> cuts = circuit_cut_crossings(c);
  return cuts.empty() ? 0 : *std::max_element(cuts.begin(), cuts.end());
}

}  // namespace qpac
