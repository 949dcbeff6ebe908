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

#include "qpac/training.hpp"

#include <stdexcept>

namespace qpac {

TrainingSet make_training_set(const ExpectationFn& state_oracle,
                              const std::vector<Measurement>& measurements,
                              Provenance provenance) {
  TrainingSet set;
  set.provenance = std::move(provenance);
  set.n = measurements.empty()
              ? 0
              : static_cast<int>(measurements.front().num_qubits());
  set.examples.reserve(measurements.size());
  for (const Measurement& m : measurements) {
    if (m.num_qubits() != static_cast<std::size_t>(set.n)) {
      throw std::invalid_argument("mixed arities in measurement list");
    }
    double v = state_oracle(m);
    if (v < 0.0) {
      if (v < -1e-12) throw std::out_of_range("oracle value below 0");
      v = 0.0;
    } else if (v > 1.0) {
      if (v > 1.0 + 1e-12) throw std::out_of_range("oracle value above 1");
      v = 1.0;
    }
    set.examples.push_back({m, v});
  }
  return set;
}

}  // namespace qpac
