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

#ifndef QPAC_TRAINING_HPP
#define QPAC_TRAINING_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qpac/measurement.hpp"

namespace qpac {

struct UniformPauliSpec {
  int max_weight = 1;  // uniform over non-identity Paulis of weight <= this
};

struct CircuitFamilySpec {
  int gate_budget = 0;  // gates per sampled circuit
  int d_budget = 0;     // circuit_schmidt_bound cap
};

struct MeasurementDistribution {
  std::variant<UniformPauliSpec, CircuitFamilySpec> spec;

  MeasurementDistribution() : spec(UniformPauliSpec{}) {}
  explicit MeasurementDistribution(UniformPauliSpec s) : spec(s) {}
  explicit MeasurementDistribution(CircuitFamilySpec s) : spec(s) {}
};

struct Provenance {
  std::string true_state_descriptor;
  std::optional<MeasurementDistribution> distribution;
  std::uint64_t seed = 0;
};

struct TrainingExample {
  Measurement measurement;
  double value = 0.0;  // in [0, 1]
};

struct TrainingSet {
  int n = 0;
  std::vector<TrainingExample> examples;
  Provenance provenance;
};

using ExpectationFn = std::function<double(const Measurement&)>;

// One example per measurement, valued by the oracle. Values are clamped to
// [0, 1] only within 1e-12 slack; anything farther out is an error.
TrainingSet make_training_set(const ExpectationFn& state_oracle,
                              const std::vector<Measurement>& measurements,
                              Provenance provenance);

}  // namespace qpac

#endif
