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

#ifndef QPAC_HYPOTHESIS_HPP
#define QPAC_HYPOTHESIS_HPP

#include <variant>

#include "qpac/chain.hpp"
#include "qpac/eom.hpp"
#include "qpac/stabilizer.hpp"

namespace qpac {

// Learned-state wrapper shared by the CLI and the experiment runner: any of
// the three hypothesis families behind the common predict() surface.
struct EomHypothesis {
  OntModel model;
  Preparation preparation;
};

using Hypothesis = std::variant<StabilizerTableau, ChainState, EomHypothesis>;

double predict(const Hypothesis& h, const Measurement& m);

/// Serializes to the family's own file format (tableau/1, chain/1, or a
/// prep/1 document with the model embedded under "model").
json hypothesis_to_json(const Hypothesis& h);
Hypothesis hypothesis_from_json(const json& j);

}  // namespace qpac

#endif
