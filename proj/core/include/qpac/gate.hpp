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

#ifndef QPAC_GATE_HPP
#define QPAC_GATE_HPP

#include <array>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace qpac {

using cdouble = std::complex<double>;

enum class GateKind { kH, kS, kX, kY, kZ, kCnot, kCz, kGeneric1, kGeneric2 };

bool is_two_qubit(GateKind kind);
bool is_clifford(GateKind kind);
std::string gate_kind_name(GateKind kind);
GateKind gate_kind_from_name(const std::string& name);

// One circuit element. Matrices are row-major; for two-qubit gates the first
// target is the first tensor factor (most significant basis bit of the 4x4).
struct Gate {
  GateKind kind = GateKind::kH;
  std::array<int, 2> targets = {0, -1};  // second slot -1 for 1-qubit gates
  std::vector<cdouble> matrix;           // 4 or 16 entries; empty when named

  std::size_t arity() const { return is_two_qubit(kind) ? 2 : 1; }

  static Gate h(int q);
  static Gate s(int q);
  static Gate x(int q);
  static Gate y(int q);
  static Gate z(int q);
  static Gate cnot(int control, int target);
  static Gate cz(int a, int b);
  /// Checks unitarity of the supplied matrix to 1e-10 entrywise.
  static Gate generic1(int q, const std::vector<cdouble>& matrix2x2);
  static Gate generic2(int a, int b, const std::vector<cdouble>& matrix4x4);
};

/// Dense 2x2 or 4x4 unitary for any gate, including the named kinds.
std::vector<cdouble> gate_unitary(const Gate& g);

/// Entrywise |U^dagger U - I| check at the given tolerance.
bool is_unitary(const std::vector<cdouble>& matrix, std::size_t dim,
                double tol = 1e-10);

/// The same 4x4 with its tensor factors exchanged (U' = SWAP U SWAP).
std::vector<cdouble> swap_factors_4x4(const std::vector<cdouble>& matrix);

}  // namespace qpac

#endif
