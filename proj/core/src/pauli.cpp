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

#include "qpac/pauli.hpp"

#include <stdexcept>

namespace qpac {

namespace {

// i-exponent of sigma_a * sigma_b per qubit, indexed by a, b in
// {I=0, X=1, Y=2, Z=3}. XY = iZ, YZ = iX, ZX = iY and the reverses pick up
// -i (exponent 3).
constexpr int kPhaseTable[4][4] = {
    {0, 0, 0, 0},
    {0, 0, 1, 3},
    {0, 3, 0, 1},
    {0, 1, 3, 0},
};

inline int pauli_index(std::uint8_t xb, std::uint8_t zb) {
  if (xb && zb) return 2;  // Y
  if (xb) return 1;        // X
  if (zb) return 3;        // Z
  return 0;                // I
}

}  // namespace

std::size_t PauliString::weight() const {
  std::size_t w = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] || z[i]) ++w;
  }
  return w;
}

bool PauliString::commutes_with(const PauliString& other) const {
  if (num_qubits() != other.num_qubits()) {
    throw std::invalid_argument("pauli arity mismatch");
  }
  int acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    acc ^= (x[i] & other.z[i]) ^ (z[i] & other.x[i]);
  }
  return acc == 0;
}

std::string PauliString::str() const {
  static const char symbols[4] = {'I', 'X', 'Y', 'Z'};
  std::string s(sign < 0 ? "-" : "+");
  for (std::size_t i = 0; i < x.size(); ++i) {
    s += symbols[pauli_index(x[i], z[i])];
  }
  return s;
}

PauliString PauliString::parse(const std::string& label) {
  std::size_t start = 0;
  int sign = +1;
  if (!label.empty() && (label[0] == '+' || label[0] == '-')) {
    sign = label[0] == '-' ? -1 : +1;
    start = 1;
  }
  PauliString p(label.size() - start);
  p.sign = sign;
  for (std::size_t i = start; i < label.size(); ++i) {
    const std::size_t q = i - start;
    switch (label[i]) {
      case 'I': break;
      case 'X': p.x[q] = 1; break;
      case 'Y': p.x[q] = 1; p.z[q] = 1; break;
      case 'Z': p.z[q] = 1; break;
      default:
        throw std::invalid_argument("bad pauli symbol in \"" + label + "\"");
    }
  }
  return p;
}

PauliString PauliString::single_z(std::size_t n, std::size_t qubit) {
  PauliString p(n);
  p.z.at(qubit) = 1;
  return p;
}

PauliString PauliString::single_x(std::size_t n, std::size_t qubit) {
  PauliString p(n);
  p.x.at(qubit) = 1;
  return p;
}

int pauli_product_phase_exponent(const PauliString& a, const PauliString& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw std::invalid_argument("pauli arity mismatch");
  }
  int exponent = 0;
  for (std::size_t i = 0; i < a.x.size(); ++i) {
    exponent += kPhaseTable[pauli_index(a.x[i], a.z[i])]
                           [pauli_index(b.x[i], b.z[i])];
  }
  return exponent & 3;
}

PauliString pauli_product(const PauliString& a, const PauliString& b) {
  const int exponent = pauli_product_phase_exponent(a, b);
  if (exponent & 1) {
    throw std::invalid_argument("pauli product has imaginary phase");
  }
  PauliString out(a.num_qubits());
  for (std::size_t i = 0; i < a.x.size(); ++i) {
    out.x[i] = a.x[i] ^ b.x[i];
    out.z[i] = a.z[i] ^ b.z[i];
  }
  out.sign = a.sign * b.sign * (exponent == 2 ? -1 : +1);
  return out;
}

void pauli_from_lex_index(std::uint64_t index, std::size_t n,
                          PauliString& out) {
  // Digit values in enumeration order: 0 -> I, 1 -> X, 2 -> Z, 3 -> Y.
  out.x.assign(n, 0);
  out.z.assign(n, 0);
  out.sign = +1;
  for (std::size_t i = n; i-- > 0;) {
    const int digit = static_cast<int>(index & 3);
    index >>= 2;
    out.x[i] = (digit == 1 || digit == 3) ? 1 : 0;
    out.z[i] = (digit == 2 || digit == 3) ? 1 : 0;
  }
}

}  // namespace qpac
