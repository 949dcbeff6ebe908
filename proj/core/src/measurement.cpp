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

#include "qpac/measurement.hpp"

#include <cstdio>
#include <stdexcept>

namespace qpac {

std::size_t Measurement::num_qubits() const {
  if (is_pauli()) return pauli().num_qubits();
  return static_cast<std::size_t>(circuit_induced().circuit.n);
}

void validate_measurement(const Measurement& m) {
  if (m.is_pauli()) {
    const PauliString& p = m.pauli();
    if (p.x.size() != p.z.size()) {
      throw std::invalid_argument("pauli bit vectors disagree in length");
    }
    if (p.sign != 1 && p.sign != -1) {
      throw std::invalid_argument("pauli sign must be +1 or -1");
    }
    return;
  }
  const CircuitInduced& ci = m.circuit_induced();
  validate_circuit(ci.circuit);
  if (ci.line < 0 || ci.line >= ci.circuit.n) {
    throw std::invalid_argument("measured line out of range");
  }
}

std::string measurement_key(const Measurement& m) {
  if (m.is_pauli()) {
    return "P:" + m.pauli().str();
  }
  const CircuitInduced& ci = m.circuit_induced();
  std::string key = "C:" + std::to_string(ci.circuit.n) + ":" +
                    std::to_string(ci.line);
  char buf[64];
  for (const Gate& g : ci.circuit.gates) {
    key += ";" + gate_kind_name(g.kind) + "(";
    key += std::to_string(g.targets[0]);
    if (g.arity() == 2) key += "," + std::to_string(g.targets[1]);
    key += ")";
    for (const cdouble& v : g.matrix) {
      std::snprintf(buf, sizeof buf, "%.17g%+.17gi", v.real(), v.imag());
      key += buf;
    }
  }
  return key;
}

}  // namespace qpac
