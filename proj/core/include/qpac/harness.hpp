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

#ifndef QPAC_HARNESS_HPP
#define QPAC_HARNESS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qpac/hypothesis.hpp"
#include "qpac/pac.hpp"
#include "qpac/rng.hpp"
#include "qpac/training.hpp"

namespace qpac {

struct ShotNoiseSpec {
  int shots = 1000;
};

// One generalization experiment: draw a ground truth, sample measurements,
// fit, and score held-out predictions. Everything derives from master_seed.
struct ExperimentConfig {
  std::string family;  // "stabilizer" | "chain" | "eom"
  int n = 2;           // qubit count; ontic-space size for the eom family
  std::optional<MeasurementDistribution> distribution;
  int m_train = 8;
  int m_heldout = 500;
  double eta = 0.0;
  double epsilon = 0.1;
  double delta = 0.05;
  double gamma = 0.1;
  int trials = 1;
  std::uint64_t master_seed = 1;
  std::optional<ShotNoiseSpec> shot_noise;
  // chain family
  int bond_cap = 2;
  int restarts = 8;
  int max_iters = 250;
  int truth_gates = 0;  // 0 picks 3n
  // eom family
  int pool_size = 60;
  int eom_qubits = 3;
};

struct TrialRow {
  int trial = 0;
  int m_train = 0;
  std::string fit_status;  // "ok" or the failure class
  double max_train_residual = -1.0;     // -1 when the fit failed
  double heldout_failure_rate = -1.0;   // -1 when the fit failed
  double wall_time_ms = 0.0;
  bool training_rows_span_pool = false;  // eom family only; not in the CSV
};

struct ExperimentAggregate {
  int ok_trials = 0;
  double mean_failure_rate = 0.0;  // over ok trials
  long long m_occam = 0;
  bool occam_pass = false;  // mean failure <= delta
};

struct ExperimentReport {
  std::vector<TrialRow> rows;
  ExperimentAggregate aggregate;
};

ExperimentReport run_experiment(const ExperimentConfig& cfg);

// CSV with the fixed header
// trial,m_train,fit_status,max_train_residual,heldout_failure_rate,wall_time_ms.
// Zeroing the timing column gives byte-stable output for reproducibility
// checks; timings are the one nondeterministic field.
std::string report_to_csv(const ExperimentReport& report,
                          bool zero_walltime = false);

json experiment_config_to_json(const ExperimentConfig& cfg);
ExperimentConfig experiment_config_from_json(const json& j);

struct CalibrationResult {
  double constant = 1.0;  // smallest passing C
  long long m = 0;        // induced sample bound at that C
  bool passed = false;
  std::string method;
};

// One-shot search for the smallest C whose induced sample bound makes the
// measured held-out failure rate land at or below delta in at least 90% of
// trial batches. Reported, never silently reused.
CalibrationResult calibrate_occam_constant(const ExperimentConfig& base,
                                           int batches, int trials_per_batch,
                                           int m_cap = 4096);

/// Binomial(shots, value)/shots estimate of a training value.
double shot_noise_estimate(double value, int shots, Rng& rng);

/// Dirichlet(1, ..., 1) draw: a uniformly random probability vector.
std::vector<double> random_simplex_point(int size, Rng& rng);

/// Random response-table model over a pool of distinct random Paulis.
OntModel random_eom_model(int lambda_size, int pool_size, int qubits,
                          Rng& rng);

}  // namespace qpac

#endif
