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

#include "qpac/dense.hpp"

#include <cmath>
#include <stdexcept>

#include "qpac/errors.hpp"

namespace qpac {

namespace {

inline std::size_t bit_of(std::size_t index, int n, int qubit) {
  return (index >> (n - 1 - qubit)) & 1u;
}

inline double clamp_unit(double v, double slack = 1e-12) {
  if (v < 0.0) {
    if (v < -slack) throw std::logic_error("probability below 0 beyond slack");
    return 0.0;
  }
  if (v > 1.0) {
    if (v > 1.0 + slack) {
      throw std::logic_error("probability above 1 beyond slack");
    }
    return 1.0;
  }
  return v;
}

}  // namespace

DenseState::DenseState(int n) : n(n), amps(std::size_t{1} << n, 0.0) {
  amps[0] = 1.0;
}

double DenseState::norm() const {
  double acc = 0.0;
  for (const cdouble& a : amps) acc += std::norm(a);
  return std::sqrt(acc);
}

DenseState dense_from_product(const std::vector<Qubit2>& qubit_states) {
  const int n = static_cast<int>(qubit_states.size());
  if (n == 0) throw std::invalid_argument("empty product input");
  for (const Qubit2& q : qubit_states) {
    const double nn = std::norm(q[0]) + std::norm(q[1]);
    if (std::abs(nn - 1.0) > 1e-9) {
      throw std::invalid_argument("input qubit state not normalized");
    }
  }
  DenseState state(n);
  for (std::size_t b = 0; b < state.amps.size(); ++b) {
    cdouble amp = 1.0;
    for (int q = 0; q < n; ++q) amp *= qubit_states[q][bit_of(b, n, q)];
    state.amps[b] = amp;
  }
  return state;
}

void apply_gate_inplace(DenseState& state, const Gate& g) {
  const int n = state.n;
  const std::vector<cdouble> u = gate_unitary(g);
  if (g.arity() == 1) {
    const int q = g.targets[0];
    const std::size_t stride = std::size_t{1} << (n - 1 - q);
    for (std::size_t base = 0; base < state.amps.size(); ++base) {
      if (base & stride) continue;
      const cdouble a0 = state.amps[base];
      const cdouble a1 = state.amps[base | stride];
      state.amps[base] = u[0] * a0 + u[1] * a1;
      state.amps[base | stride] = u[2] * a0 + u[3] * a1;
    }
    return;
  }
  const int qa = g.targets[0];
  const int qb = g.targets[1];
  const std::size_t sa = std::size_t{1} << (n - 1 - qa);
  const std::size_t sb = std::size_t{1} << (n - 1 - qb);
  for (std::size_t base = 0; base < state.amps.size(); ++base) {
    if ((base & sa) || (base & sb)) continue;
    cdouble in[4] = {state.amps[base], state.amps[base | sb],
                     state.amps[base | sa], state.amps[base | sa | sb]};
    for (int r = 0; r < 4; ++r) {
      cdouble acc = 0.0;
      for (int c = 0; c < 4; ++c) acc += u[r * 4 + c] * in[c];
      const std::size_t idx =
          base | ((r & 2) ? sa : 0u) | ((r & 1) ? sb : 0u);
      state.amps[idx] = acc;
    }
  }
}

DenseState dense_from_circuit(const Circuit& circuit,
                              const std::vector<Qubit2>& input,
                              std::size_t n_cap) {
  validate_circuit(circuit);
  if (static_cast<std::size_t>(circuit.n) > n_cap) {
    throw CapExceededError("oracle cap exceeded: n = " +
                           std::to_string(circuit.n) + " > " +
                           std::to_string(n_cap));
  }
  if (input.size() != static_cast<std::size_t>(circuit.n)) {
    throw std::invalid_argument("input length must equal circuit.n");
  }
  DenseState state = dense_from_product(input);
  for (const Gate& g : circuit.gates) apply_gate_inplace(state, g);
  return state;
}

double dense_pauli_expectation(const DenseState& state, const PauliString& p) {
  if (p.num_qubits() != static_cast<std::size_t>(state.n)) {
    throw std::invalid_argument("measurement arity mismatch");
  }
  const int n = state.n;
  std::size_t xmask = 0;
  std::size_t zmask = 0;
  int y_count = 0;
  for (int q = 0; q < n; ++q) {
    const std::size_t bit = std::size_t{1} << (n - 1 - q);
    if (p.x[q]) xmask |= bit;
    if (p.z[q]) zmask |= bit;
    if (p.x[q] && p.z[q]) ++y_count;
  }
  // P|b> = i^{#Y} (-1)^{popcount(b & zmask)} |b ^ xmask>, times the sign.
  static const cdouble i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const cdouble global = i_pow[y_count & 3];
  cdouble acc = 0.0;
  for (std::size_t b = 0; b < state.amps.size(); ++b) {
    const int par = __builtin_parityll(b & zmask);
    const cdouble c = par ? -global : global;
    acc += std::conj(state.amps[b ^ xmask]) * c * state.amps[b];
  }
  return p.sign * acc.real();
}

double dense_expectation(const DenseState& state, const Measurement& m) {
  if (m.num_qubits() != static_cast<std::size_t>(state.n)) {
    throw std::invalid_argument("measurement arity mismatch");
  }
  if (m.is_pauli()) {
    return clamp_unit(0.5 * (1.0 + dense_pauli_expectation(state, m.pauli())));
  }
  const CircuitInduced& ci = m.circuit_induced();
  DenseState evolved = state;
  for (const Gate& g : ci.circuit.gates) apply_gate_inplace(evolved, g);
  const std::size_t line_bit = std::size_t{1} << (state.n - 1 - ci.line);
  double prob0 = 0.0;
  for (std::size_t b = 0; b < evolved.amps.size(); ++b) {
    if (!(b & line_bit)) prob0 += std::norm(evolved.amps[b]);
  }
  return clamp_unit(prob0);
}

DenseState dense_ghz(int n) {
  DenseState state(n);
  state.amps[0] = M_SQRT1_2;
  state.amps[state.amps.size() - 1] = M_SQRT1_2;
  return state;
}

}  // namespace qpac
