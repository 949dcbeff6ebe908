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

#ifndef QPAC_CIRCUIT_HPP
#define QPAC_CIRCUIT_HPP

#include <cstddef>
#include <vector>

#include "qpac/gate.hpp"

namespace qpac {

struct Circuit {
  int n = 0;
  std::vector<Gate> gates;

  Circuit() = default;
  explicit Circuit(int n) : n(n) {}

  Circuit& append(const Gate& g) {
    gates.push_back(g);
    return *this;
  }

  bool all_clifford() const;
};

/// Throws std::invalid_argument if any gate target is out of [0, n).
void validate_circuit(const Circuit& c);

// Entanglement budget of the circuit: the maximum over chain cuts of the
// number of 2-qubit gates straddling that cut. A gate on lines (j, k) counts
// at every cut strictly between j and k; 1-qubit gates never count.
int circuit_schmidt_bound(const Circuit& c);

/// Per-cut straddle counts, length max(n-1, 0); cut i sits between lines
/// i and i+1.
std::vector<int> circuit_cut_crossings(const Circuit& c);

}  // namespace qpac

#endif
