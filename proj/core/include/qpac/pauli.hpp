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

#ifndef QPAC_PAULI_HPP
#define QPAC_PAULI_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace qpac {

// Signed n-qubit Pauli operator. Qubit i carries the Pauli selected by
// (x[i], z[i]): 00 -> I, 10 -> X, 01 -> Z, 11 -> Y. The only explicit phase
// is the overall sign; Y's i is implicit in the (1,1) encoding.
struct PauliString {
  std::vector<std::uint8_t> x;
  std::vector<std::uint8_t> z;
  int sign = +1;  // +1 or -1

  PauliString() = default;
  explicit PauliString(std::size_t n) : x(n, 0), z(n, 0) {}

  std::size_t num_qubits() const { return x.size(); }

  /// Number of non-identity sites.
  std::size_t weight() const;

  bool is_identity() const { return weight() == 0; }

  bool commutes_with(const PauliString& other) const;

  /// Equality of the unsigned part only.
  bool same_paulis(const PauliString& other) const {
    return x == other.x && z == other.z;
  }

  bool operator==(const PauliString& other) const {
    return sign == other.sign && same_paulis(other);
  }

  /// "+XIZY"-style rendering, qubit 0 first.
  std::string str() const;

  /// Builds from the qubit-0-first label used by str(), e.g. "-XYZ" or "ZZ".
  static PauliString parse(const std::string& label);

  /// Single-qubit Z (resp. X) on `qubit` of an n-qubit register.
  static PauliString single_z(std::size_t n, std::size_t qubit);
  static PauliString single_x(std::size_t n, std::size_t qubit);
};

// Product a*b with the phase folded into the result sign. Requires the phase
// to be real, which holds exactly when a and b commute.
PauliString pauli_product(const PauliString& a, const PauliString& b);

// Exponent of i (mod 4) picked up when multiplying a*b, excluding the signs.
int pauli_product_phase_exponent(const PauliString& a, const PauliString& b);

// Lexicographic enumeration used by the learner's generator completion:
// per-qubit symbol order I < X < Z < Y, qubit 0 most significant. Index 0 is
// the identity. Writes the unsigned Pauli for `index` in [0, 4^n) into `out`.
void pauli_from_lex_index(std::uint64_t index, std::size_t n, PauliString& out);

}  // namespace qpac

#endif
