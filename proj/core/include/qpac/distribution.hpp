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

#ifndef QPAC_DISTRIBUTION_HPP
#define QPAC_DISTRIBUTION_HPP

#include <cstdint>
#include <vector>

#include "qpac/dense.hpp"
#include "qpac/rng.hpp"
#include "qpac/training.hpp"

namespace qpac {

// m i.i.d. measurement draws, deterministic in (dist, n, m, seed).
//
// UniformPauli: uniform over all non-identity sign-(+1) Pauli strings of
// weight <= max_weight. Throws std::invalid_argument when the family is
// empty (max_weight < 1).
//
// CircuitFamily: random circuits of exactly gate_budget gates (Haar-ish
// generic 1- and 2-qubit gates on adjacent lines) plus a random measured
// line. Every draw satisfies circuit_schmidt_bound <= d_budget, and gate
// placement also keeps the dimension-counting bond bound within
// 2^d_budget per cut, so the draws stay evaluable by a chain simulator with
// L = 2^d_budget. Candidate 2-qubit placements that would break either
// budget fall back to 1-qubit gates.
std::vector<Measurement> sample_measurements(const MeasurementDistribution& dist,
                                             int n, int m, std::uint64_t seed);

/// Haar-distributed 1- or 2-qubit unitary via QR of a Gaussian matrix.
std::vector<cdouble> random_unitary(std::size_t dim, Rng& rng);

/// Random circuit from {H, S, CNOT}, targets uniform over valid choices.
Circuit random_clifford_circuit(int n, int n_gates, Rng& rng);

// Random generic circuit obeying both budgets described above. Used for
// CircuitFamily draws and as the D-bounded ground-truth generator.
Circuit random_bounded_circuit(int n, int gate_budget, int d_budget, Rng& rng);

/// n random single-qubit states, Gaussian then normalized.
std::vector<Qubit2> random_product_input(int n, Rng& rng);

/// Uniform random non-identity Pauli of weight <= max_weight, sign +1.
PauliString random_pauli(int n, int max_weight, Rng& rng);

}  // namespace qpac

#endif
