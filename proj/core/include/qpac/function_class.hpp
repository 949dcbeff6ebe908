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

#ifndef QPAC_FUNCTION_CLASS_HPP
#define QPAC_FUNCTION_CLASS_HPP

#include <functional>
#include <string>
#include <vector>

#include "qpac/eom.hpp"
#include "qpac/measurement.hpp"

namespace qpac {

// Finite hypothesis family with an indexed evaluation callback; the
// fat-shattering estimator enumerates it exhaustively.
struct FunctionClassEvaluator {
  std::size_t count = 0;
  std::function<double(std::size_t, const Measurement&)> eval;
  std::string description;
};

/// One fixed function.
FunctionClassEvaluator singleton_class(
    std::function<double(const Measurement&)> fn);

// All preparations whose weights are multiples of 1/mesh. The estimator is
// exact for this discretized class.
FunctionClassEvaluator eom_preparation_class(const OntModel& model, int mesh);

/// Every stabilizer state on n <= 3 qubits, evaluated by tableau.
FunctionClassEvaluator stabilizer_class(int n);

// Chain states at n <= 3, L <= 2 from a real amplitude grid (default
// {-1, 0, 1} per basis state, normalized, deduplicated up to global sign),
// keeping only grid states whose Schmidt ranks fit the cap.
FunctionClassEvaluator chain_class(int n, int bond_cap,
                                   const std::vector<double>& grid = {-1.0, 0.0,
                                                                      1.0});

}  // namespace qpac

#endif
