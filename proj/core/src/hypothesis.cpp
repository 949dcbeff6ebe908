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

#include "qpac/hypothesis.hpp"

#include "qpac/errors.hpp"

namespace qpac {

double predict(const Hypothesis& h, const Measurement& m) {
  if (const auto* t = std::get_if<StabilizerTableau>(&h)) {
    return tableau_predict(*t, m);
  }
  if (const auto* c = std::get_if<ChainState>(&h)) {
    return chain_expectation(*c, m);
  }
  const auto& e = std::get<EomHypothesis>(h);
  return preparation_predict(e.preparation, e.model, m);
}

json hypothesis_to_json(const Hypothesis& h) {
  if (const auto* t = std::get_if<StabilizerTableau>(&h)) {
    return tableau_to_json(*t);
  }
  if (const auto* c = std::get_if<ChainState>(&h)) {
    return chain_to_json(*c);
  }
  const auto& e = std::get<EomHypothesis>(h);
  json out = preparation_to_json(e.preparation);
  out["model"] = model_to_json(e.model);
  return out;
}

Hypothesis hypothesis_from_json(const json& j) {
  if (!j.is_object() || !j.contains("format")) {
    throw FormatError("hypothesis file lacks a format tag");
  }
  const std::string format = j.at("format").get<std::string>();
  if (format == "tableau/1") return tableau_from_json(j);
  if (format == "chain/1") return chain_from_json(j);
  if (format == "prep/1") {
    EomHypothesis e;
    e.preparation = preparation_from_json(j);
    if (!j.contains("model")) {
      throw FormatError("prep/1 hypothesis needs an embedded model");
    }
    e.model = model_from_json(j.at("model"));
    return e;
  }
  throw FormatError("unknown hypothesis format \"" + format + "\"");
}

}  // namespace qpac
