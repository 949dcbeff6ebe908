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
#include <map>

#include <doctest.h>

#include "qpac/dense.hpp"
#include "qpac/distribution.hpp"
#include "qpac/errors.hpp"
#include "qpac/io.hpp"
#include "qpac/stabilizer.hpp"
#include "qpac/training.hpp"

using namespace qpac;

TEST_SUITE_BEGIN("core");

namespace {

const std::vector<Qubit2> kZeros2(2, Qubit2{1.0, 0.0});
const std::vector<Qubit2> kZeros3(3, Qubit2{1.0, 0.0});

}  // namespace

TEST_CASE("dense_from_circuit identity and single gates") {
  Circuit empty(1);
  const DenseState s0 = dense_from_circuit(empty, {Qubit2{1.0, 0.0}});
  CHECK(s0.amps[0] == cdouble(1.0));
  CHECK(s0.amps[1] == cdouble(0.0));

  Circuit h(1);
  h.append(Gate::h(0));
  const DenseState plus = dense_from_circuit(h, {Qubit2{1.0, 0.0}});
  CHECK(std::abs(plus.amps[0] - M_SQRT1_2) < 1e-12);
  CHECK(std::abs(plus.amps[1] - M_SQRT1_2) < 1e-12);
}

TEST_CASE("dense_from_circuit builds the Bell state") {
  // By-hand product of the two 4x4 matrices applied to |00>.
  Circuit bell(2);
  bell.append(Gate::h(0)).append(Gate::cnot(0, 1));
  const DenseState s = dense_from_circuit(bell, kZeros2);
  CHECK(std::abs(s.amps[0] - M_SQRT1_2) < 1e-12);
  CHECK(std::abs(s.amps[1]) < 1e-12);
  CHECK(std::abs(s.amps[2]) < 1e-12);
  CHECK(std::abs(s.amps[3] - M_SQRT1_2) < 1e-12);
}

TEST_CASE("dense_from_circuit rejects past the oracle cap") {
  Circuit big(13);
  CHECK_THROWS_AS(
      dense_from_circuit(big, std::vector<Qubit2>(13, Qubit2{1.0, 0.0})),
      CapExceededError);
}

TEST_CASE("dense_expectation on eigenstates and unbiased bases") {
  const DenseState zero3 = dense_from_circuit(Circuit(3), kZeros3);
  CHECK(dense_expectation(zero3, Measurement(PauliString::single_z(3, 0))) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(dense_expectation(zero3, Measurement(PauliString::single_x(3, 0))) ==
        doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("dense_expectation on the GHZ correlator") {
  const DenseState ghz = dense_ghz(3);
  const PauliString xxx = PauliString::parse("+XXX");
  CHECK(dense_expectation(ghz, Measurement(xxx)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  PauliString minus_xxx = xxx;
  minus_xxx.sign = -1;
  CHECK(dense_expectation(ghz, Measurement(minus_xxx)) ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("povm complement: value(+P) + value(-P) = 1") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform_int(4));
    const Circuit c = random_bounded_circuit(n, 12, 3, rng);
    const DenseState s =
        dense_from_circuit(c, random_product_input(n, rng));
    PauliString p = random_pauli(n, n, rng);
    const double plus = dense_expectation(s, Measurement(p));
    p.sign = -p.sign;
    const double minus = dense_expectation(s, Measurement(p));
    CHECK(std::abs(plus + minus - 1.0) < 1e-12);
  }
}

TEST_CASE("norm preserved by random unitary circuits") {
  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform_int(7));
    const Circuit c = random_bounded_circuit(n, 20, 6, rng);
    const DenseState s = dense_from_circuit(c, random_product_input(n, rng));
    CHECK(std::abs(s.norm() - 1.0) < 1e-9);
  }
}

TEST_CASE("circuit-induced agrees with the conjugated Pauli for Cliffords") {
  Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform_int(4));
    const Circuit u = random_clifford_circuit(n, 15, rng);
    const int line = static_cast<int>(rng.uniform_int(n));
    const Circuit prep = random_bounded_circuit(n, 10, 3, rng);
    const DenseState psi =
        dense_from_circuit(prep, random_product_input(n, rng));
    const double via_circuit = dense_expectation(psi, Measurement(u, line));
    const double via_pauli = dense_expectation(
        psi, Measurement(pauli_from_circuit_measurement(u, line)));
    CHECK(std::abs(via_circuit - via_pauli) < 1e-9);
  }
}

TEST_CASE("circuit_schmidt_bound counts straddles per cut") {
  Circuit empty(3);
  CHECK(circuit_schmidt_bound(empty) == 0);

  Circuit one(2);
  one.append(Gate::cnot(0, 1));
  CHECK(circuit_schmidt_bound(one) == 1);

  // Cut 0 is straddled by gates 1 and 3, cut 1 by gates 2 and 3.
  Circuit triangle(3);
  triangle.append(Gate::cnot(0, 1))
      .append(Gate::cnot(1, 2))
      .append(Gate::cnot(0, 2));
  CHECK(circuit_schmidt_bound(triangle) == 2);
}

TEST_CASE("circuit_schmidt_bound never decreases when a gate is appended") {
  Rng rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + static_cast<int>(rng.uniform_int(4));
    Circuit c = random_bounded_circuit(n, 10, 4, rng);
    const int before = circuit_schmidt_bound(c);
    if (rng.uniform_int(2) == 0) {
      c.append(Gate::h(static_cast<int>(rng.uniform_int(n))));
    } else {
      const int a = static_cast<int>(rng.uniform_int(n - 1));
      c.append(Gate::cz(a, a + 1));
    }
    CHECK(circuit_schmidt_bound(c) >= before);
  }
}

TEST_CASE("sample_measurements is reproducible and respects constraints") {
  const MeasurementDistribution pauli(UniformPauliSpec{2});
  const auto a = sample_measurements(pauli, 5, 20, 99);
  const auto b = sample_measurements(pauli, 5, 20, 99);
  REQUIRE(a.size() == 20);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(measurement_key(a[i]) == measurement_key(b[i]));
    CHECK(a[i].pauli().weight() <= 2);
    CHECK(a[i].pauli().weight() >= 1);
  }

  const MeasurementDistribution circ(CircuitFamilySpec{10, 4});
  for (const Measurement& m : sample_measurements(circ, 5, 10, 5)) {
    CHECK(circuit_schmidt_bound(m.circuit_induced().circuit) <= 4);
  }
}

TEST_CASE("sample_measurements rejects an empty family") {
  CHECK_THROWS_AS(sample_measurements(
                      MeasurementDistribution(UniformPauliSpec{0}), 3, 5, 1),
                  std::invalid_argument);
}

TEST_CASE("uniform pauli frequencies on one qubit") {
  // Chi-square over 10^4 draws; X, Y, Z should each land near 1/3.
  const auto draws = sample_measurements(
      MeasurementDistribution(UniformPauliSpec{1}), 1, 10000, 12345);
  std::map<std::string, int> counts;
  for (const Measurement& m : draws) counts[m.pauli().str()] += 1;
  REQUIRE(counts.size() == 3);
  double chi2 = 0.0;
  for (const auto& [label, count] : counts) {
    CHECK(std::abs(count / 10000.0 - 1.0 / 3.0) < 0.05);
    const double expected = 10000.0 / 3.0;
    chi2 += (count - expected) * (count - expected) / expected;
  }
  CHECK(chi2 < 9.21);  // df = 2 at the 1% level
}

TEST_CASE("make_training_set values and edge cases") {
  const DenseState ghz = dense_ghz(3);
  const ExpectationFn oracle = [&](const Measurement& m) {
    return dense_expectation(ghz, m);
  };
  const TrainingSet t = make_training_set(
      oracle, {Measurement(PauliString::parse("+XXX"))}, Provenance{"ghz3"});
  REQUIRE(t.examples.size() == 1);
  CHECK(t.examples[0].value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(t.n == 3);

  const TrainingSet empty = make_training_set(oracle, {}, Provenance{});
  CHECK(empty.examples.empty());

  const DenseState zero = dense_from_circuit(Circuit(1), {Qubit2{1.0, 0.0}});
  const TrainingSet zt = make_training_set(
      [&](const Measurement& m) { return dense_expectation(zero, m); },
      {Measurement(PauliString::parse("+Z")),
       Measurement(PauliString::parse("+X"))},
      Provenance{"zero"});
  CHECK(zt.examples[0].value == doctest::Approx(1.0));
  CHECK(zt.examples[1].value == doctest::Approx(0.5));

  CHECK_THROWS_AS(
      make_training_set([](const Measurement&) { return 1.5; },
                        {Measurement(PauliString::parse("+Z"))}, Provenance{}),
      std::out_of_range);
}

TEST_CASE("pauli product tracks signs") {
  const PauliString x = PauliString::parse("+X");
  const PauliString y = PauliString::parse("+Y");
  CHECK_THROWS_AS(pauli_product(x, y), std::invalid_argument);  // XY = iZ
  const PauliString xx = PauliString::parse("+XX");
  const PauliString yy = PauliString::parse("+YY");
  const PauliString prod = pauli_product(xx, yy);  // (XY)(XY) = (iZ)(iZ) = -ZZ
  CHECK(prod.str() == "-ZZ");
}

TEST_CASE("generic gates must be unitary") {
  CHECK_THROWS_AS(Gate::generic1(0, {1.0, 0.0, 0.0, 1.1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Gate::generic2(0, 0, std::vector<cdouble>(16, 0.0)),
                  std::invalid_argument);
}

TEST_CASE("core json round trips") {
  Rng rng(21);
  const Circuit c = random_bounded_circuit(4, 8, 2, rng);
  const Circuit c2 = circuit_from_json(circuit_to_json(c));
  CHECK(c2.n == c.n);
  REQUIRE(c2.gates.size() == c.gates.size());
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    CHECK(c2.gates[i].kind == c.gates[i].kind);
    CHECK(c2.gates[i].targets == c.gates[i].targets);
    for (std::size_t k = 0; k < c.gates[i].matrix.size(); ++k) {
      CHECK(c2.gates[i].matrix[k] == c.gates[i].matrix[k]);
    }
  }

  const Measurement mp(random_pauli(4, 3, rng));
  CHECK(measurement_key(measurement_from_json(measurement_to_json(mp))) ==
        measurement_key(mp));
  const Measurement mc(c, 2);
  CHECK(measurement_key(measurement_from_json(measurement_to_json(mc))) ==
        measurement_key(mc));

  const DenseState s = dense_from_circuit(c, random_product_input(4, rng));
  TrainingSet t = make_training_set(
      [&](const Measurement& m) { return dense_expectation(s, m); },
      sample_measurements(MeasurementDistribution(UniformPauliSpec{2}), 4, 6,
                          3),
      Provenance{"round trip",
                 MeasurementDistribution(UniformPauliSpec{2}), 3});
  const TrainingSet t2 = training_set_from_json(training_set_to_json(t));
  REQUIRE(t2.examples.size() == t.examples.size());
  for (std::size_t i = 0; i < t.examples.size(); ++i) {
    CHECK(t2.examples[i].value == t.examples[i].value);  // bit-exact
  }
  CHECK(t2.provenance.seed == 3);
}

TEST_CASE("format errors are typed") {
  json j;
  j["format"] = "circuit/2";
  j["n"] = 1;
  j["gates"] = json::array();
  CHECK_THROWS_AS(circuit_from_json(j), FormatError);
  CHECK_THROWS_AS(training_set_from_json(json::object()), FormatError);
}

TEST_SUITE_END();
