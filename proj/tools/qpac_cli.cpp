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

// Command-line front end: generate circuits and training data, run the
// learners, evaluate PAC bounds, and drive experiments. Exit codes: 0 ok,
// 2 infeasible or inconsistent data, 3 bad input, 4 cap exceeded.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qpac/distribution.hpp"
#include "qpac/errors.hpp"
#include "qpac/harness.hpp"
#include "qpac/hypothesis.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 2;
constexpr int kExitBadInput = 3;
constexpr int kExitCapExceeded = 4;

struct GlobalFlags {
  std::uint64_t seed = 1;
  std::string format = "json";
  std::string out;
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write \"" + path + "\"");
  f << text;
}

void emit(const GlobalFlags& flags, const qpac::json& doc) {
  if (flags.out.empty()) {
    std::cout << qpac::dump_json(doc);
  } else {
    qpac::write_json_file(flags.out, doc);
  }
}

qpac::MeasurementDistribution make_distribution(const std::string& dist,
                                                int max_weight,
                                                int gate_budget, int d_budget) {
  if (dist == "pauli") {
    return qpac::MeasurementDistribution(qpac::UniformPauliSpec{max_weight});
  }
  if (dist == "circuit") {
    return qpac::MeasurementDistribution(
        qpac::CircuitFamilySpec{gate_budget, d_budget});
  }
  throw qpac::FormatError("unknown distribution \"" + dist + "\"");
}

int run_gen_circuit(const GlobalFlags& flags, int n, int gates, int d_budget,
                    bool clifford) {
  qpac::Rng rng(flags.seed);
  const qpac::Circuit c =
      clifford ? qpac::random_clifford_circuit(n, gates, rng)
               : qpac::random_bounded_circuit(n, gates, d_budget, rng);
  emit(flags, qpac::circuit_to_json(c));
  return kExitOk;
}

int run_gen_training(const GlobalFlags& flags, const std::string& circuit_path,
                     int m, const std::string& dist, int max_weight,
                     int gate_budget, int d_budget, int shots) {
  const qpac::Circuit circuit =
      qpac::circuit_from_json(qpac::read_json_file(circuit_path));
  const std::vector<qpac::Qubit2> zeros(circuit.n, qpac::Qubit2{1.0, 0.0});
  const qpac::DenseState state = qpac::dense_from_circuit(circuit, zeros);
  const qpac::MeasurementDistribution d =
      make_distribution(dist, max_weight > 0 ? max_weight : circuit.n,
                        gate_budget, d_budget);
  const std::vector<qpac::Measurement> meas =
      qpac::sample_measurements(d, circuit.n, m, flags.seed);
  qpac::TrainingSet t = qpac::make_training_set(
      [&](const qpac::Measurement& mm) {
        return qpac::dense_expectation(state, mm);
      },
      meas,
      qpac::Provenance{"circuit:" + circuit_path, d, flags.seed});
  if (shots > 0) {
    qpac::Rng noise = qpac::Rng(flags.seed).derive(17);
    for (qpac::TrainingExample& ex : t.examples) {
      ex.value = qpac::shot_noise_estimate(ex.value, shots, noise);
    }
  }
  emit(flags, qpac::training_set_to_json(t));
  return kExitOk;
}

int run_learn(const GlobalFlags& flags, const std::string& family,
              double eta, const std::string& in_path,
              const std::string& model_path, int bond, int restarts,
              int max_iters) {
  const qpac::TrainingSet t =
      qpac::training_set_from_json(qpac::read_json_file(in_path));
  qpac::Hypothesis hyp;
  if (family == "stabilizer") {
    hyp = qpac::learn_stabilizer(t);
  } else if (family == "chain") {
    hyp = qpac::learn_chain(t, bond, eta, {restarts, max_iters}, flags.seed);
  } else if (family == "eom") {
    if (model_path.empty()) {
      throw qpac::FormatError("--family eom needs --model");
    }
    qpac::EomHypothesis e;
    e.model = qpac::model_from_json(qpac::read_json_file(model_path));
    e.preparation = qpac::learn_preparation(e.model, t, eta);
    hyp = std::move(e);
  } else {
    throw qpac::FormatError("unknown family \"" + family + "\"");
  }
  emit(flags, qpac::hypothesis_to_json(hyp));
  return kExitOk;
}

int run_predict(const std::string& hyp_path, const std::string& meas_path) {
  const qpac::Hypothesis hyp =
      qpac::hypothesis_from_json(qpac::read_json_file(hyp_path));
  const qpac::Measurement m =
      qpac::measurement_from_json(qpac::read_json_file(meas_path));
  std::printf("%.15g\n", qpac::predict(hyp, m));
  return kExitOk;
}

int run_experiment_cmd(const GlobalFlags& flags, const std::string& cfg_path,
                       bool stable_output) {
  const qpac::ExperimentConfig cfg =
      qpac::experiment_config_from_json(qpac::read_json_file(cfg_path));
  const qpac::ExperimentReport report = qpac::run_experiment(cfg);
  qpac::json aggregate;
  aggregate["ok_trials"] = report.aggregate.ok_trials;
  aggregate["mean_failure_rate"] = report.aggregate.mean_failure_rate;
  aggregate["m_occam"] = report.aggregate.m_occam;
  aggregate["occam_pass"] = report.aggregate.occam_pass;
  if (flags.format == "json") {
    qpac::json doc;
    doc["format"] = "report/1";
    doc["aggregate"] = aggregate;
    qpac::json rows = qpac::json::array();
    for (const qpac::TrialRow& row : report.rows) {
      qpac::json r;
      r["trial"] = row.trial;
      r["m_train"] = row.m_train;
      r["fit_status"] = row.fit_status;
      r["max_train_residual"] = row.max_train_residual;
      r["heldout_failure_rate"] = row.heldout_failure_rate;
      r["wall_time_ms"] = stable_output ? 0.0 : row.wall_time_ms;
      rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    emit(flags, doc);
  } else {
    const std::string csv = qpac::report_to_csv(report, stable_output);
    if (flags.out.empty()) {
      std::cout << csv;
    } else {
      write_text(flags.out, csv);
    }
    std::cout << qpac::dump_json(aggregate);
  }
  return report.aggregate.ok_trials == static_cast<int>(report.rows.size())
             ? kExitOk
             : kExitOk;  // per-trial failures are data, not a CLI error
}

int run_bounds(const GlobalFlags& flags, const std::string& params_path,
               const std::string& fat_kind, const std::string& reading,
               const std::string& calibrate_family) {
  const qpac::OccamParams params =
      qpac::occam_params_from_json(qpac::read_json_file(params_path));
  const qpac::DatasizeReading r =
      reading == "literal-sigma" ? qpac::DatasizeReading::kLiteralSigma
                                 : qpac::DatasizeReading::kGammaSquared;
  qpac::json out;
  out["format"] = "bounds/1";
  out["params"] = qpac::occam_params_to_json(params);
  out["m_occam"] = qpac::occam_sample_bound(params, r);
  std::function<long long(double)> fat = qpac::corollary_fat(params.n);
  if (fat_kind == "zero") fat = [](double) -> long long { return 0; };
  out["m_anthony"] = qpac::anthony_sample_bound(params, fat);
  if (!calibrate_family.empty()) {
    qpac::ExperimentConfig base;
    base.family = calibrate_family;
    base.n = calibrate_family == "eom" ? 8 : 4;
    base.epsilon = params.epsilon;
    base.delta = params.delta;
    base.gamma = params.gamma;
    base.eta = params.eta;
    base.m_heldout = 200;
    base.master_seed = flags.seed;
    if (calibrate_family == "eom") {
      base.pool_size = 40;
      base.eom_qubits = 3;
    }
    const qpac::CalibrationResult cal =
        qpac::calibrate_occam_constant(base, 5, 10);
    qpac::json c;
    c["C"] = cal.constant;
    c["m"] = cal.m;
    c["passed"] = cal.passed;
    c["method"] = cal.method;
    out["calibration"] = std::move(c);
  } else {
    out["calibration"] = nullptr;
  }
  emit(flags, out);
  return kExitOk;
}

int run_fatdim(const GlobalFlags& flags, const std::string& class_kind,
               const std::string& pool_path, double gamma, int max_k,
               const std::string& model_path, int mesh, int n, int bond) {
  const qpac::json pool_doc = qpac::read_json_file(pool_path);
  qpac::require_format(pool_doc, "pool/1");
  std::vector<qpac::Measurement> pool;
  for (const qpac::json& m : qpac::require_field(pool_doc, "measurements")) {
    pool.push_back(qpac::measurement_from_json(m));
  }
  qpac::FunctionClassEvaluator v;
  if (class_kind == "eom") {
    if (model_path.empty()) throw qpac::FormatError("--class eom needs --model");
    const qpac::OntModel model =
        qpac::model_from_json(qpac::read_json_file(model_path));
    v = qpac::eom_preparation_class(model, mesh);
  } else if (class_kind == "stabilizer") {
    v = qpac::stabilizer_class(n);
  } else if (class_kind == "chain") {
    v = qpac::chain_class(n, bond);
  } else {
    throw qpac::FormatError("unknown class \"" + class_kind + "\"");
  }
  const int k = qpac::fat_shattering_estimate(
      v, pool, gamma, max_k > 0 ? max_k : static_cast<int>(pool.size()));
  std::printf("%d\n", k);
  if (!flags.out.empty()) {
    qpac::json out;
    out["format"] = "fatdim/1";
    out["class"] = v.description;
    out["gamma"] = gamma;
    out["pool_size"] = pool.size();
    out["k"] = k;
    qpac::write_json_file(flags.out, out);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum state PAC-learning toolkit"};
  app.require_subcommand(1);
  GlobalFlags flags;
  app.add_option("--seed", flags.seed, "random seed (default 1)");
  app.add_option("--format", flags.format, "output format: json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", flags.out, "output path (default stdout)");

  auto* gen_circuit = app.add_subcommand("gen-circuit", "random circuit file");
  int gc_n = 4, gc_gates = 12, gc_d = 2;
  bool gc_clifford = false;
  gen_circuit->add_option("--n", gc_n, "line count")->required();
  gen_circuit->add_option("--gates", gc_gates, "gate count");
  gen_circuit->add_option("--d-budget", gc_d, "per-cut straddle budget");
  gen_circuit->add_flag("--clifford", gc_clifford, "draw from {H, S, CNOT}");

  auto* gen_training =
      app.add_subcommand("gen-training", "training set from a circuit state");
  std::string gt_circuit;
  int gt_m = 20, gt_weight = 0, gt_gates = 8, gt_d = 2, gt_shots = 0;
  std::string gt_dist = "pauli";
  gen_training->add_option("--circuit", gt_circuit, "circuit/1 file")
      ->required();
  gen_training->add_option("--m", gt_m, "number of examples");
  gen_training->add_option("--dist", gt_dist, "pauli|circuit");
  gen_training->add_option("--max-weight", gt_weight,
                           "pauli weight cap (default n)");
  gen_training->add_option("--gate-budget", gt_gates, "circuit family gates");
  gen_training->add_option("--d-budget", gt_d, "circuit family D budget");
  gen_training->add_option("--shots", gt_shots,
                           "binomial shot noise (default exact)");

  auto* learn = app.add_subcommand("learn", "fit a hypothesis");
  std::string l_family, l_in, l_model;
  double l_eta = 0.0;
  int l_bond = 2, l_restarts = 8, l_max_iters = 250;
  learn->add_option("--family", l_family, "stabilizer|chain|eom")->required();
  learn->add_option("--eta", l_eta, "consistency tolerance");
  learn->add_option("--in", l_in, "train/1 file")->required();
  learn->add_option("--model", l_model, "eom/1 model file");
  learn->add_option("--bond", l_bond, "chain bond cap L");
  learn->add_option("--restarts", l_restarts, "chain restarts");
  learn->add_option("--max-iters", l_max_iters, "chain iterations per restart");

  auto* predict = app.add_subcommand("predict", "evaluate a hypothesis");
  std::string p_hyp, p_meas;
  predict->add_option("--hyp", p_hyp, "hypothesis file")->required();
  predict->add_option("--meas", p_meas, "meas/1 file")->required();

  auto* experiment = app.add_subcommand("experiment", "run trial batches");
  std::string e_cfg;
  bool e_stable = false;
  experiment->add_option("--config", e_cfg, "experiment/1 file")->required();
  experiment->add_flag("--stable-output", e_stable,
                       "zero the timing column for byte-stable output");

  auto* bounds = app.add_subcommand("bounds", "sample-complexity bounds");
  std::string b_params, b_fat = "corollary", b_reading = "gamma-squared";
  std::string b_calibrate;
  bounds->add_option("--params", b_params, "occam/1 file")->required();
  bounds->add_option("--fat", b_fat, "corollary|zero");
  bounds->add_option("--reading", b_reading, "gamma-squared|literal-sigma");
  bounds->add_option("--calibrate", b_calibrate,
                     "calibrate C on a family: stabilizer|chain|eom");

  auto* fatdim = app.add_subcommand("fatdim", "exhaustive fat-shattering");
  std::string f_class, f_pool, f_model;
  double f_gamma = 0.2;
  int f_max_k = 0, f_mesh = 16, f_n = 2, f_bond = 2;
  fatdim->add_option("--class", f_class, "eom|stabilizer|chain")->required();
  fatdim->add_option("--pool", f_pool, "pool/1 file")->required();
  fatdim->add_option("--gamma", f_gamma, "margin");
  fatdim->add_option("--max-k", f_max_k, "cap on k (default pool size)");
  fatdim->add_option("--model", f_model, "eom/1 model file");
  fatdim->add_option("--mesh", f_mesh, "preparation grid denominator");
  fatdim->add_option("--n", f_n, "qubits for stabilizer/chain classes");
  fatdim->add_option("--bond", f_bond, "chain bond cap");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen_circuit->parsed()) {
      return run_gen_circuit(flags, gc_n, gc_gates, gc_d, gc_clifford);
    }
    if (gen_training->parsed()) {
      return run_gen_training(flags, gt_circuit, gt_m, gt_dist, gt_weight,
                              gt_gates, gt_d, gt_shots);
    }
    if (learn->parsed()) {
      return run_learn(flags, l_family, l_eta, l_in, l_model, l_bond,
                       l_restarts, l_max_iters);
    }
    if (predict->parsed()) return run_predict(p_hyp, p_meas);
    if (experiment->parsed()) {
      return run_experiment_cmd(flags, e_cfg, e_stable);
    }
    if (bounds->parsed()) {
      return run_bounds(flags, b_params, b_fat, b_reading, b_calibrate);
    }
    if (fatdim->parsed()) {
      return run_fatdim(flags, f_class, f_pool, f_gamma, f_max_k, f_model,
                        f_mesh, f_n, f_bond);
    }
  } catch (const qpac::FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const qpac::CapExceededError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCapExceeded;
  } catch (const qpac::RankOverflowError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCapExceeded;
  } catch (const qpac::InconsistentDataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const qpac::CompletionFailedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const qpac::InfeasibleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const qpac::BudgetExhaustedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
