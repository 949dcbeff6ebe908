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

#ifndef QPAC_STABILIZER_HPP
#define QPAC_STABILIZER_HPP

#include <cstddef>
#include <vector>

#include "qpac/io.hpp"
#include "qpac/measurement.hpp"
#include "qpac/training.hpp"

namespace qpac {

// Stabilizer state represented by n independent, pairwise-commuting signed
// Pauli generators. Sign tracking keeps -I out of the generated group, so a
// valid tableau always stabilizes exactly one pure state.
struct StabilizerTableau {
  int n = 0;
  std::vector<PauliString> generators;
};

/// |0...0>: generators +Z_1 ... +Z_n.
StabilizerTableau tableau_zero(int n);

/// Throws std::invalid_argument when commutation or rank fails.
void validate_tableau(const StabilizerTableau& t);

// Conjugation of one signed Pauli by one Clifford gate: g P g^dagger, or
// g^dagger P g when inverse is set. Non-Clifford kinds throw.
PauliString conjugate_pauli(const Gate& g, PauliString p, bool inverse = false);

/// Conjugates every generator; the result is again a valid tableau.
StabilizerTableau apply_clifford(const StabilizerTableau& t, const Gate& g);

StabilizerTableau apply_clifford_circuit(const StabilizerTableau& t,
                                         const Circuit& c);

// The signed Pauli U^dagger Z_line U for an all-Clifford circuit; this is
// the Pauli form of the corresponding circuit-induced measurement.
PauliString pauli_from_circuit_measurement(const Circuit& circuit, int line);

// Tr(E sigma) for E = (I + P)/2 on the stabilized state: 1 when P is in the
// stabilizer group, 0 when -P is, and 1/2 otherwise (P anticommutes with
// some generator). Exactly one case applies.
double pauli_value(const StabilizerTableau& t, const PauliString& p);

/// pauli_value, with all-Clifford circuit-induced measurements conjugated
/// into Pauli form first.
double tableau_predict(const StabilizerTableau& t, const Measurement& m);

// Measurement constraints recovered from training values. Deterministic
// entries are stored with the sign that forces value 1.
struct ConstraintSet {
  std::vector<PauliString> deterministic;
  std::vector<PauliString> unbiased;
};

// Maps one Pauli example to its constraint: value 1 -> +P, value 0 -> -P,
// value 1/2 -> unbiased P. Values farther than `tol` from {0, 1/2, 1}
// signal a non-stabilizer source and throw InconsistentDataError.
void invert_constraint(const TrainingExample& example, ConstraintSet& out,
                       double tol = 1e-6);

struct StabilizerLearnOptions {
  double value_tol = 1e-6;
  // Re-completion attempts when a completion traps an unbiased constraint
  // inside the group; default (0) means 2n.
  int max_backtracks = 0;
};

// Three-step learner: invert each example into constraints, reduce the
// deterministic ones over GF(2) with sign propagation, then complete to n
// generators in lexicographic Pauli order (I < X < Z < Y per qubit, qubit 0
// most significant), re-completing when an unbiased constraint lands in the
// generated group. The result reproduces every training value exactly.
//
// Throws InconsistentDataError or CompletionFailedError.
StabilizerTableau learn_stabilizer(const TrainingSet& training,
                                   const StabilizerLearnOptions& options = {});

json tableau_to_json(const StabilizerTableau& t);
StabilizerTableau tableau_from_json(const json& j);

}  // namespace qpac

#endif
