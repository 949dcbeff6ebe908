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

#include "qpac/eom.hpp"

#include <cmath>
#include <stdexcept>

#include "qpac/errors.hpp"
#include "qpac/lp.hpp"
#include "qpac/rng.hpp"

namespace qpac {

void OntModel::rebuild_lookup() {
  lookup_.clear();
  for (std::size_t i = 0; i < pool.size(); ++i) {
    lookup_.emplace(measurement_key(pool[i]), i);
  }
}

std::size_t OntModel::pool_index(const Measurement& m) const {
  const auto it = lookup_.find(measurement_key(m));
  if (it == lookup_.end()) {
    throw std::invalid_argument("measurement not in the model pool");
  }
  return it->second;
}

double OntModel::respond(int lambda, const Measurement& m) const {
  if (lambda < 0 || lambda >= lambda_size) {
    throw std::invalid_argument("ontic index out of range");
  }
  return response[lambda][pool_index(m)];
}

void validate_model(const OntModel& model, int lambda_budget) {
  if (model.lambda_size < 1) {
    throw std::invalid_argument("lambda_size must be >= 1");
  }
  if (model.lambda_size > lambda_budget) {
    throw std::invalid_argument("lambda_size exceeds the poly budget " +
                                std::to_string(lambda_budget));
  }
  if (model.response.size() != static_cast<std::size_t>(model.lambda_size)) {
    throw std::invalid_argument("response table needs lambda_size rows");
  }
  for (const auto& row : model.response) {
    if (row.size() != model.pool.size()) {
      throw std::invalid_argument("response row width disagrees with pool");
    }
    for (double v : row) {
      if (!(v >= 0.0 && v <= 1.0)) {
        throw std::invalid_argument("response values live in [0, 1]");
      }
    }
  }
  for (const auto& [name, probs] : model.states) {
    Preparation q{probs};
    try {
      validate_preparation(q);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("state \"" + name + "\": " + e.what());
    }
    if (probs.size() != static_cast<std::size_t>(model.lambda_size)) {
      throw std::invalid_argument("state \"" + name + "\" has wrong length");
    }
  }
}

void validate_preparation(const Preparation& q) {
  double sum = 0.0;
  for (double v : q.probs) {
    if (v < 0.0) throw std::invalid_argument("negative preparation entry");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("preparation does not sum to 1");
  }
}

Preparation uniform_preparation(int lambda_size) {
  if (lambda_size < 1) throw std::invalid_argument("lambda_size must be >= 1");
  return Preparation{
      std::vector<double>(lambda_size, 1.0 / lambda_size)};
}

double eom_expectation(const Preparation& q, const OntModel& model,
                       const Measurement& e) {
  if (q.probs.size() != static_cast<std::size_t>(model.lambda_size)) {
    throw std::invalid_argument("preparation length disagrees with model");
  }
  const std::size_t col = model.pool_index(e);
  double acc = 0.0;
  for (int lambda = 0; lambda < model.lambda_size; ++lambda) {
    acc += q.probs[lambda] * model.response[lambda][col];
  }
  return std::min(1.0, std::max(0.0, acc));
}

double eom_sample_estimate(const Preparation& q, const OntModel& model,
                           const Measurement& e, int shots,
                           std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("need shots >= 1");
  if (q.probs.size() != static_cast<std::size_t>(model.lambda_size)) {
    throw std::invalid_argument("preparation length disagrees with model");
  }
  const std::size_t col = model.pool_index(e);
  Rng rng(seed);
  long long hits = 0;
  for (int s = 0; s < shots; ++s) {
    // Inverse-CDF draw of lambda' ~ q, then a Bernoulli(f(lambda', E)) flip.
    double u = rng.uniform();
    int lambda = model.lambda_size - 1;
    for (int k = 0; k < model.lambda_size; ++k) {
      u -= q.probs[k];
      if (u < 0.0) {
        lambda = k;
        break;
      }
    }
    if (rng.uniform() < model.response[lambda][col]) ++hits;
  }
  return static_cast<double>(hits) / shots;
}

Preparation learn_preparation(const OntModel& model, const TrainingSet& t,
                              double eta) {
  if (eta < 0.0) throw std::invalid_argument("eta must be >= 0");
  if (t.examples.empty()) {
    return uniform_preparation(model.lambda_size);
  }
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  a.reserve(t.examples.size());
  for (const TrainingExample& ex : t.examples) {
    const std::size_t col = model.pool_index(ex.measurement);
    std::vector<double> row(model.lambda_size);
    for (int lambda = 0; lambda < model.lambda_size; ++lambda) {
      row[lambda] = model.response[lambda][col];
    }
    a.push_back(std::move(row));
    b.push_back(ex.value);
  }
  std::vector<double> x = lp_feasibility(a, b, eta, /*simplex=*/true);
  Preparation q{std::move(x)};
  // Post-conditions re-checked on the values themselves.
  double sum = 0.0;
  for (double v : q.probs) {
    if (v < 0.0) throw std::logic_error("solver returned negative weight");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::logic_error("solver returned an unnormalized preparation");
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    double dot = 0.0;
    for (int lambda = 0; lambda < model.lambda_size; ++lambda) {
      dot += q.probs[lambda] * a[i][lambda];
    }
    if (std::abs(dot - b[i]) > eta + 1e-9) {
      throw std::logic_error("solver point misses a training band");
    }
  }
  return q;
}

double preparation_predict(const Preparation& q, const OntModel& model,
                           const Measurement& e) {
  return eom_expectation(q, model, e);
}

json model_to_json(const OntModel& model) {
  json out;
  out["format"] = "eom/1";
  out["lambda_size"] = model.lambda_size;
  json pool = json::array();
  for (std::size_t i = 0; i < model.pool.size(); ++i) {
    json entry;
    entry["id"] = i < model.pool_ids.size() ? model.pool_ids[i]
                                            : "m" + std::to_string(i);
    entry["measurement"] = measurement_to_json(model.pool[i]);
    pool.push_back(std::move(entry));
  }
  out["pool"] = std::move(pool);
  json response = json::array();
  for (const auto& row : model.response) {
    json r = json::array();
    for (double v : row) r.push_back(v);
    response.push_back(std::move(r));
  }
  out["response"] = std::move(response);
  json states = json::object();
  for (const auto& [name, probs] : model.states) {
    json p = json::array();
    for (double v : probs) p.push_back(v);
    states[name] = std::move(p);
  }
  out["states"] = std::move(states);
  return out;
}

OntModel model_from_json(const json& j) {
  require_format(j, "eom/1");
  OntModel model;
  model.lambda_size = require_field(j, "lambda_size").get<int>();
  for (const json& entry : require_field(j, "pool")) {
    model.pool_ids.push_back(require_field(entry, "id").get<std::string>());
    model.pool.push_back(
        measurement_from_json(require_field(entry, "measurement")));
  }
  for (const json& row : require_field(j, "response")) {
    std::vector<double> r;
    for (const json& v : row) r.push_back(v.get<double>());
    model.response.push_back(std::move(r));
  }
  if (j.contains("states")) {
    for (const auto& [name, probs] : j.at("states").items()) {
      std::vector<double> p;
      for (const json& v : probs) p.push_back(v.get<double>());
      model.states.emplace(name, std::move(p));
    }
  }
  model.rebuild_lookup();
  const int n = model.pool.empty()
                    ? 1
                    : static_cast<int>(model.pool.front().num_qubits());
  try {
    validate_model(model, eom_lambda_budget(n));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  return model;
}

json preparation_to_json(const Preparation& q) {
  json out;
  out["format"] = "prep/1";
  out["lambda_size"] = q.probs.size();
  json probs = json::array();
  for (double v : q.probs) probs.push_back(v);
  out["probs"] = std::move(probs);
  return out;
}

Preparation preparation_from_json(const json& j) {
  require_format(j, "prep/1");
  Preparation q;
  for (const json& v : require_field(j, "probs")) {
    q.probs.push_back(v.get<double>());
  }
  if (q.probs.size() != require_field(j, "lambda_size").get<std::size_t>()) {
    throw FormatError("lambda_size disagrees with probs length");
  }
  try {
    validate_preparation(q);
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  return q;
}

}  // namespace qpac
