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

#ifndef QPAC_EOM_HPP
#define QPAC_EOM_HPP

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "qpac/io.hpp"
#include "qpac/measurement.hpp"
#include "qpac/training.hpp"

namespace qpac {

// Ontological model over a finite ontic space: response table f(lambda, E)
// in [0, 1] for every measurement in a prespecified pool, plus optional
// per-state distributions. The lambda budget keeps |Lambda| polynomial in
// spirit: callers pick the bound, default 10 n^2 via eom_lambda_budget.
struct OntModel {
  int lambda_size = 0;
  std::vector<Measurement> pool;
  std::vector<std::string> pool_ids;
  std::vector<std::vector<double>> response;  // lambda_size x pool rows
  std::map<std::string, std::vector<double>> states;

  /// Pool index for a measurement; throws std::invalid_argument if absent.
  std::size_t pool_index(const Measurement& m) const;
  double respond(int lambda, const Measurement& m) const;

  void rebuild_lookup();

 private:
  std::unordered_map<std::string, std::size_t> lookup_;
};

/// Default |Lambda| cap for n qubits.
inline int eom_lambda_budget(int n) { return 10 * n * n; }

/// Throws std::invalid_argument on shape or range violations.
void validate_model(const OntModel& model, int lambda_budget);

struct Preparation {
  std::vector<double> probs;  // nonnegative, sums to 1 within 1e-12
};

void validate_preparation(const Preparation& q);

Preparation uniform_preparation(int lambda_size);

/// sum_lambda q(lambda) f(lambda, E); in [0, 1].
double eom_expectation(const Preparation& q, const OntModel& model,
                       const Measurement& e);

// Mean of `shots` draws of Bernoulli(f(lambda', E)) with lambda' ~ q:
// the sampling simulation of the model, an unbiased estimator of
// eom_expectation. Deterministic given the seed.
double eom_sample_estimate(const Preparation& q, const OntModel& model,
                           const Measurement& e, int shots,
                           std::uint64_t seed);

// Linear feasibility learner: q >= 0, sum q = 1, |sum_lambda q f(., E_i) -
// d_i| <= eta for every example, via the phase-1 simplex. The returned
// point is re-verified directly. Empty training sets yield the uniform
// preparation. Throws InfeasibleError when no preparation fits.
Preparation learn_preparation(const OntModel& model, const TrainingSet& t,
                              double eta);

double preparation_predict(const Preparation& q, const OntModel& model,
                           const Measurement& e);

json model_to_json(const OntModel& model);
OntModel model_from_json(const json& j);

json preparation_to_json(const Preparation& q);
Preparation preparation_from_json(const json& j);

}  // namespace qpac

#endif
