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

#include "qpac/harness.hpp"

#include <Eigen/Dense>
#include <charconv>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "qpac/distribution.hpp"
#include "qpac/errors.hpp"

namespace qpac {

namespace {

std::string double_to_string(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

// Seed streams per trial; keep ids stable, they are part of the output
// contract through the golden files.
enum SeedStream : std::uint64_t {
  kTruth = 1,
  kTrainMeas = 2,
  kHeldoutMeas = 3,
  kNoise = 4,
};

struct TrialOutcome {
  std::string status = "ok";
  double max_train_residual = -1.0;
  double heldout_failure_rate = -1.0;
  bool spans = false;
};

std::string status_of_exception(const std::exception& e) {
  if (dynamic_cast<const InconsistentDataError*>(&e)) return "inconsistent_data";
  if (dynamic_cast<const CompletionFailedError*>(&e)) return "completion_failed";
  if (dynamic_cast<const BudgetExhaustedError*>(&e)) return "budget_exhausted";
  if (dynamic_cast<const InfeasibleError*>(&e)) return "infeasible";
  if (dynamic_cast<const RankOverflowError*>(&e)) return "rank_overflow";
  return "error";
}

double snap_stabilizer_value(double v, bool& rejected) {
  const double targets[3] = {0.0, 0.5, 1.0};
  double best = 0.0;
  double best_dist = 2.0;
  for (double t : targets) {
    if (std::abs(v - t) < best_dist) {
      best_dist = std::abs(v - t);
      best = t;
    }
  }
  if (best_dist > 0.15) rejected = true;
  return best;
}

TrialOutcome run_stabilizer_trial(const ExperimentConfig& cfg, Rng trial_rng) {
  TrialOutcome out;
  Rng truth_rng = trial_rng.derive(kTruth);
  const Circuit truth_circuit =
      random_clifford_circuit(cfg.n, 5 * cfg.n, truth_rng);
  const StabilizerTableau truth =
      apply_clifford_circuit(tableau_zero(cfg.n), truth_circuit);

  const MeasurementDistribution dist = cfg.distribution.value_or(
      MeasurementDistribution(UniformPauliSpec{cfg.n}));
  const std::vector<Measurement> train_meas = sample_measurements(
      dist, cfg.n, cfg.m_train, trial_rng.derive(kTrainMeas).seed());
  TrainingSet training = make_training_set(
      [&](const Measurement& m) { return tableau_predict(truth, m); },
      train_meas, Provenance{"random clifford", dist, trial_rng.seed()});

  if (cfg.shot_noise) {
    Rng noise = trial_rng.derive(kNoise);
    bool rejected = false;
    for (TrainingExample& ex : training.examples) {
      const double est =
          shot_noise_estimate(ex.value, cfg.shot_noise->shots, noise);
      ex.value = snap_stabilizer_value(est, rejected);
    }
    if (rejected) {
      out.status = "rejected_noise";
      return out;
    }
  }

  StabilizerTableau learned;
  try {
    learned = learn_stabilizer(training);
  } catch (const std::exception& e) {
    out.status = status_of_exception(e);
    return out;
  }
  double max_res = 0.0;
  for (const TrainingExample& ex : training.examples) {
    max_res = std::max(max_res, std::abs(tableau_predict(learned, ex.measurement) -
                                         ex.value));
  }
  out.max_train_residual = max_res;

  const std::vector<Measurement> heldout = sample_measurements(
      dist, cfg.n, cfg.m_heldout, trial_rng.derive(kHeldoutMeas).seed());
  int failures = 0;
  for (const Measurement& m : heldout) {
    const double diff =
        std::abs(tableau_predict(learned, m) - tableau_predict(truth, m));
    if (diff > cfg.epsilon) ++failures;
  }
  out.heldout_failure_rate = static_cast<double>(failures) / cfg.m_heldout;
  return out;
}

TrialOutcome run_chain_trial(const ExperimentConfig& cfg, Rng trial_rng) {
  TrialOutcome out;
  Rng truth_rng = trial_rng.derive(kTruth);
  const int d_budget = static_cast<int>(std::floor(std::log2(cfg.bond_cap)));
  const int gates = cfg.truth_gates > 0 ? cfg.truth_gates : 3 * cfg.n;
  const Circuit truth_circuit =
      random_bounded_circuit(cfg.n, gates, d_budget, truth_rng);
  const ChainState truth = apply_circuit(
      chain_from_product(random_product_input(cfg.n, truth_rng), cfg.bond_cap),
      truth_circuit);

  const MeasurementDistribution dist = cfg.distribution.value_or(
      MeasurementDistribution(UniformPauliSpec{std::min(cfg.n, 3)}));
  const std::vector<Measurement> train_meas = sample_measurements(
      dist, cfg.n, cfg.m_train, trial_rng.derive(kTrainMeas).seed());
  TrainingSet training = make_training_set(
      [&](const Measurement& m) { return chain_expectation(truth, m); },
      train_meas, Provenance{"random bounded circuit", dist, trial_rng.seed()});

  if (cfg.shot_noise) {
    Rng noise = trial_rng.derive(kNoise);
    for (TrainingExample& ex : training.examples) {
      ex.value = shot_noise_estimate(ex.value, cfg.shot_noise->shots, noise);
    }
  }

  ChainState learned;
  try {
    learned = learn_chain(training, cfg.bond_cap, cfg.eta,
                          {cfg.restarts, cfg.max_iters},
                          trial_rng.derive(5).seed());
  } catch (const std::exception& e) {
    out.status = status_of_exception(e);
    return out;
  }
  double max_res = 0.0;
  for (const TrainingExample& ex : training.examples) {
    max_res = std::max(max_res, std::abs(chain_residual(learned, ex)));
  }
  out.max_train_residual = max_res;

  const std::vector<Measurement> heldout = sample_measurements(
      dist, cfg.n, cfg.m_heldout, trial_rng.derive(kHeldoutMeas).seed());
  int failures = 0;
  for (const Measurement& m : heldout) {
    const double diff =
        std::abs(chain_expectation(learned, m) - chain_expectation(truth, m));
    if (diff > cfg.epsilon) ++failures;
  }
  out.heldout_failure_rate = static_cast<double>(failures) / cfg.m_heldout;
  return out;
}

TrialOutcome run_eom_trial(const ExperimentConfig& cfg, Rng trial_rng) {
  TrialOutcome out;
  Rng truth_rng = trial_rng.derive(kTruth);
  OntModel model =
      random_eom_model(cfg.n, cfg.pool_size, cfg.eom_qubits, truth_rng);
  const Preparation truth{random_simplex_point(cfg.n, truth_rng)};

  Rng train_rng = trial_rng.derive(kTrainMeas);
  std::vector<Measurement> train_meas;
  std::vector<std::size_t> train_cols;
  for (int i = 0; i < cfg.m_train; ++i) {
    const std::size_t idx = train_rng.uniform_int(model.pool.size());
    train_meas.push_back(model.pool[idx]);
    train_cols.push_back(idx);
  }
  TrainingSet training = make_training_set(
      [&](const Measurement& m) { return eom_expectation(truth, model, m); },
      train_meas, Provenance{"random eom", std::nullopt, trial_rng.seed()});

  if (cfg.shot_noise) {
    Rng noise = trial_rng.derive(kNoise);
    for (TrainingExample& ex : training.examples) {
      ex.value = shot_noise_estimate(ex.value, cfg.shot_noise->shots, noise);
    }
  }

  // Span check: held-out rows must lie in the row space of the training rows
  // for exact generalization to be guaranteed.
  Eigen::MatrixXd pool_rows(model.pool.size(), cfg.n);
  for (std::size_t r = 0; r < model.pool.size(); ++r) {
    for (int c = 0; c < cfg.n; ++c) pool_rows(r, c) = model.response[c][r];
  }
  Eigen::MatrixXd train_rows(train_cols.size(), cfg.n);
  for (std::size_t r = 0; r < train_cols.size(); ++r) {
    train_rows.row(r) = pool_rows.row(train_cols[r]);
  }
  const auto rank_of = [](const Eigen::MatrixXd& m) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    const double top = sv.size() > 0 ? sv(0) : 0.0;
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
      if (sv(i) > top * 1e-10) ++rank;
    }
    return rank;
  };
  out.spans = rank_of(train_rows) == rank_of(pool_rows);

  Preparation learned;
  try {
    learned = learn_preparation(model, training, cfg.eta);
  } catch (const std::exception& e) {
    out.status = status_of_exception(e);
    return out;
  }
  double max_res = 0.0;
  for (const TrainingExample& ex : training.examples) {
    max_res = std::max(
        max_res,
        std::abs(eom_expectation(learned, model, ex.measurement) - ex.value));
  }
  out.max_train_residual = max_res;

  Rng held_rng = trial_rng.derive(kHeldoutMeas);
  int failures = 0;
  for (int i = 0; i < cfg.m_heldout; ++i) {
    const std::size_t idx = held_rng.uniform_int(model.pool.size());
    const Measurement& m = model.pool[idx];
    const double diff = std::abs(eom_expectation(learned, model, m) -
                                 eom_expectation(truth, model, m));
    if (diff > cfg.epsilon) ++failures;
  }
  out.heldout_failure_rate = static_cast<double>(failures) / cfg.m_heldout;
  return out;
}

}  // namespace

double shot_noise_estimate(double value, int shots, Rng& rng) {
  if (shots < 1) throw std::invalid_argument("need shots >= 1");
  int hits = 0;
  for (int s = 0; s < shots; ++s) {
    if (rng.uniform() < value) ++hits;
  }
  return static_cast<double>(hits) / shots;
}

std::vector<double> random_simplex_point(int size, Rng& rng) {
  if (size < 1) throw std::invalid_argument("need size >= 1");
  std::vector<double> v(size);
  double total = 0.0;
  for (double& x : v) {
    double u;
    do {
      u = rng.uniform();
    } while (u <= 0.0);
    x = -std::log(u);
    total += x;
  }
  for (double& x : v) x /= total;
  return v;
}

OntModel random_eom_model(int lambda_size, int pool_size, int qubits,
                          Rng& rng) {
  if (lambda_size < 1) throw std::invalid_argument("lambda_size must be >= 1");
  OntModel model;
  model.lambda_size = lambda_size;
  std::unordered_map<std::string, bool> seen;
  int attempts = 0;
  while (static_cast<int>(model.pool.size()) < pool_size) {
    if (++attempts > 1000 * pool_size) {
      throw std::invalid_argument(
          "cannot draw enough distinct pool measurements at this arity");
    }
    Measurement m(random_pauli(qubits, qubits, rng));
    const std::string key = measurement_key(m);
    if (seen.emplace(key, true).second) {
      model.pool_ids.push_back("m" + std::to_string(model.pool.size()));
      model.pool.push_back(std::move(m));
    }
  }
  model.response.assign(lambda_size, std::vector<double>(pool_size));
  for (auto& row : model.response) {
    for (double& v : row) v = rng.uniform();
  }
  model.rebuild_lookup();
  return model;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("need trials >= 1");
  if (cfg.m_train < 1 || cfg.m_heldout < 1) {
    throw std::invalid_argument("need m_train, m_heldout >= 1");
  }
  ExperimentReport report;
  Rng master(cfg.master_seed);
  double failure_sum = 0.0;
  for (int trial = 0; trial < cfg.trials; ++trial) {
    const auto start = std::chrono::steady_clock::now();
    TrialOutcome outcome;
    Rng trial_rng = master.derive(trial);
    if (cfg.family == "stabilizer") {
      outcome = run_stabilizer_trial(cfg, trial_rng);
    } else if (cfg.family == "chain") {
      outcome = run_chain_trial(cfg, trial_rng);
    } else if (cfg.family == "eom") {
      outcome = run_eom_trial(cfg, trial_rng);
    } else {
      throw std::invalid_argument("unknown family \"" + cfg.family + "\"");
    }
    TrialRow row;
    row.trial = trial;
    row.m_train = cfg.m_train;
    row.fit_status = outcome.status;
    row.max_train_residual = outcome.max_train_residual;
    row.heldout_failure_rate = outcome.heldout_failure_rate;
    row.wall_time_ms = elapsed_ms(start);
    row.training_rows_span_pool = outcome.spans;
    if (outcome.status == "ok") {
      ++report.aggregate.ok_trials;
      failure_sum += outcome.heldout_failure_rate;
    }
    report.rows.push_back(std::move(row));
  }
  report.aggregate.mean_failure_rate =
      report.aggregate.ok_trials > 0
          ? failure_sum / report.aggregate.ok_trials
          : 1.0;
  OccamParams params;
  params.n = cfg.n;
  params.epsilon = cfg.epsilon;
  params.delta = cfg.delta;
  params.gamma = cfg.gamma;
  params.eta = std::min(cfg.eta, cfg.gamma / 2);
  report.aggregate.m_occam = occam_sample_bound(params);
  report.aggregate.occam_pass =
      report.aggregate.mean_failure_rate <= cfg.delta;
  return report;
}

std::string report_to_csv(const ExperimentReport& report, bool zero_walltime) {
  std::string csv =
      "trial,m_train,fit_status,max_train_residual,heldout_failure_rate,"
      "wall_time_ms\n";
  for (const TrialRow& row : report.rows) {
    csv += std::to_string(row.trial);
    csv += ",";
    csv += std::to_string(row.m_train);
    csv += ",";
    csv += row.fit_status;
    csv += ",";
    csv += double_to_string(row.max_train_residual);
    csv += ",";
    csv += double_to_string(row.heldout_failure_rate);
    csv += ",";
    csv += double_to_string(zero_walltime ? 0.0 : row.wall_time_ms);
    csv += "\n";
  }
  return csv;
}

json experiment_config_to_json(const ExperimentConfig& cfg) {
  json out;
  out["format"] = "experiment/1";
  out["family"] = cfg.family;
  out["n"] = cfg.n;
  out["distribution"] =
      cfg.distribution ? distribution_to_json(*cfg.distribution) : json(nullptr);
  out["m_train"] = cfg.m_train;
  out["m_heldout"] = cfg.m_heldout;
  out["eta"] = cfg.eta;
  out["epsilon"] = cfg.epsilon;
  out["delta"] = cfg.delta;
  out["gamma"] = cfg.gamma;
  out["trials"] = cfg.trials;
  out["master_seed"] = cfg.master_seed;
  out["shot_noise"] = cfg.shot_noise
                          ? json{{"shots", cfg.shot_noise->shots}}
                          : json(nullptr);
  out["L"] = cfg.bond_cap;
  out["restarts"] = cfg.restarts;
  out["max_iters"] = cfg.max_iters;
  out["truth_gates"] = cfg.truth_gates;
  out["pool_size"] = cfg.pool_size;
  out["eom_qubits"] = cfg.eom_qubits;
  return out;
}

ExperimentConfig experiment_config_from_json(const json& j) {
  require_format(j, "experiment/1");
  ExperimentConfig cfg;
  cfg.family = require_field(j, "family").get<std::string>();
  cfg.n = require_field(j, "n").get<int>();
  const json& dist = require_field(j, "distribution");
  if (!dist.is_null()) cfg.distribution = distribution_from_json(dist);
  cfg.m_train = require_field(j, "m_train").get<int>();
  cfg.m_heldout = require_field(j, "m_heldout").get<int>();
  cfg.eta = require_field(j, "eta").get<double>();
  cfg.epsilon = require_field(j, "epsilon").get<double>();
  cfg.delta = require_field(j, "delta").get<double>();
  cfg.gamma = require_field(j, "gamma").get<double>();
  cfg.trials = require_field(j, "trials").get<int>();
  cfg.master_seed = require_field(j, "master_seed").get<std::uint64_t>();
  if (j.contains("shot_noise") && !j.at("shot_noise").is_null()) {
    cfg.shot_noise = ShotNoiseSpec{j.at("shot_noise").at("shots").get<int>()};
  }
  if (j.contains("L")) cfg.bond_cap = j.at("L").get<int>();
  if (j.contains("restarts")) cfg.restarts = j.at("restarts").get<int>();
  if (j.contains("max_iters")) cfg.max_iters = j.at("max_iters").get<int>();
  if (j.contains("truth_gates")) cfg.truth_gates = j.at("truth_gates").get<int>();
  if (j.contains("pool_size")) cfg.pool_size = j.at("pool_size").get<int>();
  if (j.contains("eom_qubits")) cfg.eom_qubits = j.at("eom_qubits").get<int>();
  return cfg;
}

CalibrationResult calibrate_occam_constant(const ExperimentConfig& base,
                                           int batches, int trials_per_batch,
                                           int m_cap) {
  if (batches < 1 || trials_per_batch < 1) {
    throw std::invalid_argument("need batches, trials_per_batch >= 1");
  }
  OccamParams params;
  params.n = base.n;
  params.epsilon = base.epsilon;
  params.delta = base.delta;
  params.gamma = base.gamma;
  params.eta = std::min(base.eta, base.gamma / 2);

  const auto bound_at = [&](double c) {
    OccamParams p = params;
    p.occam_constant = c;
    return occam_sample_bound(p);
  };
  const auto passes = [&](double c) {
    const long long m = bound_at(c);
    if (m > m_cap || m < 1) return false;
    int good = 0;
    for (int b = 0; b < batches; ++b) {
      ExperimentConfig cfg = base;
      cfg.m_train = static_cast<int>(m);
      cfg.trials = trials_per_batch;
      cfg.master_seed = Rng(base.master_seed).derive(1000 + b).seed();
      const ExperimentReport report = run_experiment(cfg);
      if (report.aggregate.ok_trials == cfg.trials &&
          report.aggregate.mean_failure_rate <= base.delta) {
        ++good;
      }
    }
    return good * 10 >= batches * 9;
  };

  CalibrationResult result;
  result.method = "bisection on log C, " + std::to_string(batches) +
                  " batches x " + std::to_string(trials_per_batch) + " trials";
  // Largest C whose bound stays runnable.
  double hi = 1e-12;
  while (bound_at(hi * 2) <= m_cap && hi < 1e6) hi *= 2;
  if (!passes(hi)) {
    result.constant = hi;
    result.m = bound_at(hi);
    result.passed = false;
    return result;
  }
  double lo = hi / 4096;
  while (lo < hi && passes(lo)) {
    hi = lo;
    lo /= 4096;
  }
  for (int iter = 0; iter < 24 && hi / lo > 1.05; ++iter) {
    const double mid = std::sqrt(lo * hi);
    if (passes(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  result.constant = hi;
  result.m = bound_at(hi);
  result.passed = true;
  return result;
}

}  // namespace qpac
