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

#ifndef QPAC_MEASUREMENT_HPP
#define QPAC_MEASUREMENT_HPP

#include <string>
#include <variant>

#include "qpac/circuit.hpp"
#include "qpac/pauli.hpp"

namespace qpac {

// Two-outcome measurement given by its first POVM element E. For a signed
// Pauli P this is E = (I + P) / 2, so value 1 means expectation +1 and value
// 1/2 means an unbiased outcome. For a circuit-induced measurement, E is
// U^dagger ((I + Z_line) / 2) U: the probability that line `line` reads 0
// after running U.
struct CircuitInduced {
  Circuit circuit;
  int line = 0;
};

struct Measurement {
  std::variant<PauliString, CircuitInduced> body;

  Measurement() : body(PauliString(1)) {}
  explicit Measurement(PauliString p) : body(std::move(p)) {}
  Measurement(Circuit c, int line) : body(CircuitInduced{std::move(c), line}) {}

  bool is_pauli() const { return std::holds_alternative<PauliString>(body); }
  const PauliString& pauli() const { return std::get<PauliString>(body); }
  const CircuitInduced& circuit_induced() const {
    return std::get<CircuitInduced>(body);
  }

  std::size_t num_qubits() const;
};

/// Throws std::invalid_argument on arity violations (line out of range, ...).
void validate_measurement(const Measurement& m);

// Canonical text key; equal measurements produce equal keys. Used for pool
// lookups in response tables.
std::string measurement_key(const Measurement& m);

}  // namespace qpac

#endif
