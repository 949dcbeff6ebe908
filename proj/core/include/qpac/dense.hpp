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

#ifndef QPAC_DENSE_HPP
#define QPAC_DENSE_HPP

#include <array>
#include <cstddef>
#include <vector>

#include "qpac/circuit.hpp"
#include "qpac/measurement.hpp"

namespace qpac {

// Brute-force reference simulator. Deliberately capped at small n: it exists
// to check the scalable simulators, not to replace them.
inline constexpr std::size_t kDefaultOracleCap = 12;

using Qubit2 = std::array<cdouble, 2>;

// Full statevector of an n-qubit pure state. Basis index b holds qubit q in
// bit (n-1-q), i.e. qubit 0 is the most significant bit and |10> on two
// qubits is index 2.
struct DenseState {
  int n = 0;
  std::vector<cdouble> amps;

  DenseState() = default;
  /// |0...0> on n qubits.
  explicit DenseState(int n);

  double norm() const;
};

/// Tensor product of normalized single-qubit states.
DenseState dense_from_product(const std::vector<Qubit2>& qubit_states);

// Runs the circuit on the given product input. Throws CapExceededError when
// circuit.n exceeds the cap.
DenseState dense_from_circuit(const Circuit& circuit,
                              const std::vector<Qubit2>& input,
                              std::size_t n_cap = kDefaultOracleCap);

void apply_gate_inplace(DenseState& state, const Gate& g);

/// Pauli expectation <psi|P|psi>, including P's sign; real part returned.
double dense_pauli_expectation(const DenseState& state, const PauliString& p);

// Tr(E rho) for the POVM element described by m; in [0, 1] up to 1e-12
// numerical slack (clamped).
double dense_expectation(const DenseState& state, const Measurement& m);

/// Hand-assembled convenience states used across the test suites.
DenseState dense_ghz(int n);

}  // namespace qpac

#endif
