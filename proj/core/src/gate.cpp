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

#include "qpac/gate.hpp"

#include <cmath>
#include <stdexcept>

namespace qpac {

bool is_two_qubit(GateKind kind) {
  switch (kind) {
    case GateKind::kCnot:
    case GateKind::kCz:
    case GateKind::kGeneric2:
      return true;
    default:
      return false;
  }
}

bool is_clifford(GateKind kind) {
  switch (kind) {
    case GateKind::kGeneric1:
    case GateKind::kGeneric2:
      return false;
    default:
      return true;
  }
}

std::string gate_kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::kH: return "H";
    case GateKind::kS: return "S";
    case GateKind::kX: return "X";
    case GateKind::kY: return "Y";
    case GateKind::kZ: return "Z";
    case GateKind::kCnot: return "CNOT";
    case GateKind::kCz: return "CZ";
    case GateKind::kGeneric1: return "generic-1q";
    case GateKind::kGeneric2: return "generic-2q";
  }
  throw std::logic_error("unreachable");
}

GateKind gate_kind_from_name(const std::string& name) {
  if (name == "H") return GateKind::kH;
  if (name == "S") return GateKind::kS;
  if (name == "X") return GateKind::kX;
  if (name == "Y") return GateKind::kY;
  if (name == "Z") return GateKind::kZ;
  if (name == "CNOT") return GateKind::kCnot;
  if (name == "CZ") return GateKind::kCz;
  if (name == "generic-1q") return GateKind::kGeneric1;
  if (name == "generic-2q") return GateKind::kGeneric2;
  throw std::invalid_argument("unknown gate kind \"" + name + "\"");
}

bool is_unitary(const std::vector<cdouble>& matrix, std::size_t dim,
                double tol) {
  if (matrix.size() != dim * dim) return false;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      cdouble acc = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        acc += std::conj(matrix[k * dim + i]) * matrix[k * dim + j];
      }
      const cdouble want = i == j ? 1.0 : 0.0;
      if (std::abs(acc - want) > tol) return false;
    }
  }
  return true;
}

namespace {

Gate named_1q(GateKind kind, int q) {
  if (q < 0) throw std::invalid_argument("negative gate target");
  Gate g;
  g.kind = kind;
  g.targets = {q, -1};
  return g;
}

Gate named_2q(GateKind kind, int a, int b) {
  if (a < 0 || b < 0) throw std::invalid_argument("negative gate target");
  if (a == b) throw std::invalid_argument("2-qubit gate needs distinct targets");
  Gate g;
  g.kind = kind;
  g.targets = {a, b};
  return g;
}

}  // namespace

Gate Gate::h(int q) { return named_1q(GateKind::kH, q); }
Gate Gate::s(int q) { return named_1q(GateKind::kS, q); }
Gate Gate::x(int q) { return named_1q(GateKind::kX, q); }
Gate Gate::y(int q) { return named_1q(GateKind::kY, q); }
Gate Gate::z(int q) { return named_1q(GateKind::kZ, q); }
Gate Gate::cnot(int control, int target) {
  return named_2q(GateKind::kCnot, control, target);
}
Gate Gate::cz(int a, int b) { return named_2q(GateKind::kCz, a, b); }

Gate Gate::generic1(int q, const std::vector<cdouble>& matrix2x2) {
  if (!is_unitary(matrix2x2, 2)) {
    throw std::invalid_argument("generic-1q matrix is not unitary");
  }
  Gate g = named_1q(GateKind::kGeneric1, q);
  g.matrix = matrix2x2;
  return g;
}

Gate Gate::generic2(int a, int b, const std::vector<cdouble>& matrix4x4) {
  if (!is_unitary(matrix4x4, 4)) {
    throw std::invalid_argument("generic-2q matrix is not unitary");
  }
  Gate g = named_2q(GateKind::kGeneric2, a, b);
  g.matrix = matrix4x4;
  return g;
}

std::vector<cdouble> gate_unitary(const Gate& g) {
  const double s = M_SQRT1_2;
  const cdouble i1(0.0, 1.0);
  switch (g.kind) {
    case GateKind::kH: return {s, s, s, -s};
    case GateKind::kS: return {1, 0, 0, i1};
    case GateKind::kX: return {0, 1, 1, 0};
    case GateKind::kY: return {0, -i1, i1, 0};
    case GateKind::kZ: return {1, 0, 0, -1};
    case GateKind::kCnot:
      return {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0};
    case GateKind::kCz:
      return {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1};
    case GateKind::kGeneric1:
    case GateKind::kGeneric2:
      return g.matrix;
  }
  throw std::logic_error("unreachable");
}

std::vector<cdouble> swap_factors_4x4(const std::vector<cdouble>& matrix) {
  if (matrix.size() != 16) throw std::invalid_argument("expected 4x4 matrix");
  // Basis permutation |ab> -> |ba>: indices 0,1,2,3 -> 0,2,1,3.
  static constexpr int perm[4] = {0, 2, 1, 3};
  std::vector<cdouble> out(16);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      out[perm[r] * 4 + perm[c]] = matrix[r * 4 + c];
    }
  }
  return out;
}

}  // namespace qpac
