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

#include <cmath>

#include <doctest.h>

#include "qpac/dense.hpp"
#include "qpac/distribution.hpp"
#include "qpac/errors.hpp"
#include "qpac/stabilizer.hpp"

using namespace qpac;

TEST_SUITE_BEGIN("stabilizer");

namespace {

StabilizerTableau ghz_tableau() {
  StabilizerTableau t;
  t.n = 3;
  t.generators = {PauliString::parse("+XXX"), PauliString::parse("+ZZI"),
                  PauliString::parse("+IZZ")};
  validate_tableau(t);
  return t;
}

TrainingSet pauli_training(int n,
                           const std::vector<std::pair<std::string, double>>&
                               labeled) {
  TrainingSet t;
  t.n = n;
  for (const auto& [label, value] : labeled) {
    t.examples.push_back({Measurement(PauliString::parse(label)), value});
  }
  return t;
}

}  // namespace

TEST_CASE("tableau_zero stabilizes |0...0>") {
  const StabilizerTableau t1 = tableau_zero(1);
  CHECK(t1.generators[0].str() == "+Z");
  const StabilizerTableau t2 = tableau_zero(2);
  CHECK(t2.generators[0].str() == "+ZI");
  CHECK(t2.generators[1].str() == "+IZ");
  CHECK(pauli_value(tableau_zero(3), PauliString::single_z(3, 1)) == 1.0);
}

TEST_CASE("clifford conjugation on single generators") {
  const StabilizerTableau z1 = tableau_zero(1);
  const StabilizerTableau x1 = apply_clifford(z1, Gate::h(0));
  CHECK(x1.generators[0].str() == "+X");
  const StabilizerTableau y1 = apply_clifford(x1, Gate::s(0));
  CHECK(y1.generators[0].str() == "+Y");

  // CNOT conjugation table: XI -> XX, IZ -> ZZ.
  StabilizerTableau t;
  t.n = 2;
  t.generators = {PauliString::parse("+XI"), PauliString::parse("+IZ")};
  const StabilizerTableau after = apply_clifford(t, Gate::cnot(0, 1));
  CHECK(after.generators[0].str() == "+XX");
  CHECK(after.generators[1].str() == "+ZZ");
}

TEST_CASE("inverse conjugation really inverts") {
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform_int(3));
    const Circuit c = random_clifford_circuit(n, 12, rng);
    PauliString p = random_pauli(n, n, rng);
    PauliString roundtrip = p;
    for (const Gate& g : c.gates) {
      roundtrip = conjugate_pauli(g, roundtrip, false);
    }
    for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) {
      roundtrip = conjugate_pauli(*it, roundtrip, true);
    }
    CHECK(roundtrip == p);
  }
}

TEST_CASE("pauli_value on the GHZ group") {
  const StabilizerTableau ghz = ghz_tableau();
  CHECK(pauli_value(tableau_zero(2), PauliString::parse("+ZZ")) == 1.0);
  CHECK(pauli_value(tableau_zero(2), PauliString::parse("+XI")) == 0.5);
  // Cross-checked against the dense oracle on (|000> + |111>)/sqrt(2).
  const DenseState dense = dense_ghz(3);
  PauliString minus_xxx = PauliString::parse("-XXX");
  CHECK(pauli_value(ghz, minus_xxx) == 0.0);
  CHECK(dense_expectation(dense, Measurement(minus_xxx)) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(pauli_value(ghz, PauliString::parse("+ZZI")) == 1.0);
  CHECK(pauli_value(ghz, PauliString::parse("+ZII")) == 0.5);
  CHECK(pauli_value(ghz, PauliString::parse("+ZIZ")) == 1.0);
}

TEST_CASE("tableau invariants survive random clifford circuits") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform_int(4));
    StabilizerTableau t = tableau_zero(n);
    const Circuit c = random_clifford_circuit(n, 30, rng);
    for (const Gate& g : c.gates) {
      t = apply_clifford(t, g);
      validate_tableau(t);
    }
  }
}

TEST_CASE("oracle equivalence on random clifford states") {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform_int(5));
    const Circuit c = random_clifford_circuit(n, 25, rng);
    const StabilizerTableau t = apply_clifford_circuit(tableau_zero(n), c);
    const DenseState dense = dense_from_circuit(
        c, std::vector<Qubit2>(n, Qubit2{1.0, 0.0}));
    for (int k = 0; k < 10; ++k) {
      PauliString p = random_pauli(n, n, rng);
      if (rng.uniform_int(2) == 0) p.sign = -1;
      CHECK(std::abs(pauli_value(t, p) -
                     dense_expectation(dense, Measurement(p))) < 1e-9);
    }
  }
}

TEST_CASE("non-clifford gates are rejected") {
  const StabilizerTableau t = tableau_zero(2);
  const Gate g = Gate::generic1(
      0, {cdouble(1, 0), cdouble(0, 0), cdouble(0, 0), cdouble(0, 1)});
  CHECK_THROWS_AS(apply_clifford(t, g), std::invalid_argument);
}

TEST_CASE("invert_constraint maps the value alphabet") {
  ConstraintSet cs;
  invert_constraint({Measurement(PauliString::parse("+Z")), 1.0}, cs);
  invert_constraint({Measurement(PauliString::parse("+XX")), 0.0}, cs);
  invert_constraint({Measurement(PauliString::parse("+ZZ")), 0.5}, cs);
  REQUIRE(cs.deterministic.size() == 2);
  REQUIRE(cs.unbiased.size() == 1);
  CHECK(cs.deterministic[0].str() == "+Z");
  CHECK(cs.deterministic[1].str() == "-XX");
  CHECK(cs.unbiased[0].str() == "+ZZ");

  CHECK_THROWS_AS(
      invert_constraint({Measurement(PauliString::parse("+Z")), 0.7}, cs),
      InconsistentDataError);
}

TEST_CASE("learn_stabilizer on simple deterministic data") {
  const TrainingSet t = pauli_training(2, {{"+ZI", 1.0}, {"+IZ", 1.0}});
  const StabilizerTableau learned = learn_stabilizer(t);
  CHECK(pauli_value(learned, PauliString::parse("+ZI")) == 1.0);
  CHECK(pauli_value(learned, PauliString::parse("+IZ")) == 1.0);
  CHECK(pauli_value(learned, PauliString::parse("+ZZ")) == 1.0);
}

TEST_CASE("learn_stabilizer on GHZ data, cross-checked densely") {
  const TrainingSet t =
      pauli_training(3, {{"+XXX", 1.0}, {"+ZZI", 1.0}, {"+IZZ", 1.0}});
  const StabilizerTableau learned = learn_stabilizer(t);
  CHECK(pauli_value(learned, PauliString::parse("+XXX")) == 1.0);
  CHECK(pauli_value(learned, PauliString::parse("+ZII")) == 0.5);
  const DenseState dense = dense_ghz(3);
  for (const std::string label : {"+XXX", "+ZZI", "+IZZ", "+ZIZ", "-XXX"}) {
    const PauliString p = PauliString::parse(label);
    CHECK(pauli_value(learned, p) ==
          doctest::Approx(dense_expectation(dense, Measurement(p)))
              .epsilon(1e-12));
  }
}

TEST_CASE("learn_stabilizer detects contradictions") {
  CHECK_THROWS_AS(
      learn_stabilizer(pauli_training(2, {{"+ZI", 1.0}, {"-ZI", 1.0}})),
      InconsistentDataError);
  // Same Pauli forced and unbiased.
  CHECK_THROWS_AS(
      learn_stabilizer(pauli_training(2, {{"+ZI", 1.0}, {"+ZI", 0.5}})),
      InconsistentDataError);
  // Anticommuting deterministic constraints.
  CHECK_THROWS_AS(
      learn_stabilizer(pauli_training(1, {{"+Z", 1.0}, {"+X", 1.0}})),
      InconsistentDataError);
  // Product of deterministic constraints forced, but observed unbiased.
  CHECK_THROWS_AS(learn_stabilizer(pauli_training(
                      2, {{"+ZI", 1.0}, {"+IZ", 1.0}, {"+ZZ", 0.5}})),
                  InconsistentDataError);
}

TEST_CASE("learn_stabilizer respects unbiased constraints via completion") {
  // Only unbiased data: the lexicographically first completion would pick
  // +IX, +XI, ..., some of which are banned by the 1/2 values.
  const TrainingSet t =
      pauli_training(2, {{"+IX", 0.5}, {"+XI", 0.5}, {"+ZI", 0.5}});
  const StabilizerTableau learned = learn_stabilizer(t);
  CHECK(pauli_value(learned, PauliString::parse("+IX")) == 0.5);
  CHECK(pauli_value(learned, PauliString::parse("+XI")) == 0.5);
  CHECK(pauli_value(learned, PauliString::parse("+ZI")) == 0.5);
}

TEST_CASE("learned tableaux reproduce every training value exactly") {
  Rng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform_int(5));
    const Circuit c = random_clifford_circuit(n, 5 * n, rng);
    const StabilizerTableau truth = apply_clifford_circuit(tableau_zero(n), c);
    TrainingSet t;
    t.n = n;
    for (int k = 0; k < 4 * n; ++k) {
      const PauliString p = random_pauli(n, n, rng);
      t.examples.push_back({Measurement(p), pauli_value(truth, p)});
    }
    const StabilizerTableau learned = learn_stabilizer(t);
    validate_tableau(learned);
    for (const TrainingExample& ex : t.examples) {
      CHECK(pauli_value(learned, ex.measurement.pauli()) == ex.value);
    }
  }
}

TEST_CASE("group closure of deterministic predictions") {
  Rng rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3;
    const Circuit c = random_clifford_circuit(n, 15, rng);
    const StabilizerTableau t = apply_clifford_circuit(tableau_zero(n), c);
    for (int k = 0; k < 20; ++k) {
      const PauliString p = random_pauli(n, n, rng);
      const PauliString q = random_pauli(n, n, rng);
      if (!p.commutes_with(q)) continue;
      if (pauli_value(t, p) == 1.0 && pauli_value(t, q) == 1.0) {
        CHECK(pauli_value(t, pauli_product(p, q)) == 1.0);
      }
    }
  }
}

TEST_CASE("tableau json round trip") {
  const StabilizerTableau t = ghz_tableau();
  const StabilizerTableau t2 = tableau_from_json(tableau_to_json(t));
  REQUIRE(t2.generators.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(t2.generators[i] == t.generators[i]);
  }
  json bad = tableau_to_json(t);
  bad["generators"][0]["sign"] = 0;
  CHECK_THROWS_AS(tableau_from_json(bad), FormatError);
}

TEST_CASE("held-out disagreement shrinks with more training data") {
  // Smaller-scale version of the generalization trend; the acceptance
  // suite runs the full one. Weight-capped Paulis keep the measurement
  // support small enough for the trend to be visible at desk scale.
  const int n = 6;
  const int weight_cap = 2;
  Rng rng(31);
  const std::vector<int> sizes = {n, 2 * n, 4 * n, 8 * n};
  std::vector<double> mean_rates;
  for (int m : sizes) {
    double sum = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      Rng trial_rng = rng.derive(m * 100 + trial);
      const Circuit c = random_clifford_circuit(n, 5 * n, trial_rng);
      const StabilizerTableau truth =
          apply_clifford_circuit(tableau_zero(n), c);
      TrainingSet t;
      t.n = n;
      for (int k = 0; k < m; ++k) {
        const PauliString p = random_pauli(n, weight_cap, trial_rng);
        t.examples.push_back({Measurement(p), pauli_value(truth, p)});
      }
      StabilizerTableau learned;
      try {
        learned = learn_stabilizer(t);
      } catch (const CompletionFailedError&) {
        sum += 1.0;
        continue;
      }
      int disagree = 0;
      const int heldout = 200;
      for (int k = 0; k < heldout; ++k) {
        const PauliString p = random_pauli(n, weight_cap, trial_rng);
        if (pauli_value(learned, p) != pauli_value(truth, p)) ++disagree;
      }
      sum += static_cast<double>(disagree) / heldout;
    }
    mean_rates.push_back(sum / 20);
  }
  for (std::size_t i = 0; i + 1 < mean_rates.size(); ++i) {
    CHECK(mean_rates[i] >= mean_rates[i + 1]);
  }
}

TEST_SUITE_END();
