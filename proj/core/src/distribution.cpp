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

#include "qpac/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qpac {

namespace {

// Weight-j Pauli count is C(n,j) * 3^j; double precision is plenty for the
// categorical draw over j at desk scale.
std::vector<double> pauli_weight_masses(int n, int max_weight) {
  std::vector<double> mass(max_weight + 1, 0.0);
  double binom = 1.0;  // C(n, 0)
  double pow3 = 1.0;
  for (int j = 1; j <= max_weight; ++j) {
    binom = binom * (n - j + 1) / j;
    pow3 *= 3.0;
    mass[j] = binom * pow3;
  }
  return mass;
}

int draw_categorical(const std::vector<double>& mass, Rng& rng) {
  double total = 0.0;
  for (double m : mass) total += m;
  double u = rng.uniform() * total;
  for (std::size_t i = 0; i < mass.size(); ++i) {
    u -= mass[i];
    if (u < 0.0) return static_cast<int>(i);
  }
  return static_cast<int>(mass.size()) - 1;
}

}  // namespace

PauliString random_pauli(int n, int max_weight, Rng& rng) {
  max_weight = std::min(max_weight, n);
  if (max_weight < 1) {
    throw std::invalid_argument(
        "uniform-pauli family is empty: max_weight < 1 with identity excluded");
  }
  const int w = draw_categorical(pauli_weight_masses(n, max_weight), rng);
  // Floyd's algorithm for a uniform w-subset of [0, n).
  std::vector<int> sites;
  for (int j = n - w; j < n; ++j) {
    const int t = static_cast<int>(rng.uniform_int(j + 1));
    if (std::find(sites.begin(), sites.end(), t) == sites.end()) {
      sites.push_back(t);
    } else {
      sites.push_back(j);
    }
  }
  PauliString p(n);
  for (int q : sites) {
    switch (rng.uniform_int(3)) {
      case 0: p.x[q] = 1; break;
      case 1: p.z[q] = 1; break;
      default: p.x[q] = 1; p.z[q] = 1; break;
    }
  }
  return p;
}

std::vector<cdouble> random_unitary(std::size_t dim, Rng& rng) {
  // Gram-Schmidt on a complex Gaussian matrix; columns become the unitary.
  std::vector<std::vector<cdouble>> cols(dim, std::vector<cdouble>(dim));
  for (auto& col : cols) {
    for (auto& v : col) v = rng.complex_gaussian();
  }
  for (std::size_t c = 0; c < dim; ++c) {
    for (std::size_t prev = 0; prev < c; ++prev) {
      cdouble dot = 0.0;
      for (std::size_t r = 0; r < dim; ++r) {
        dot += std::conj(cols[prev][r]) * cols[c][r];
      }
      for (std::size_t r = 0; r < dim; ++r) cols[c][r] -= dot * cols[prev][r];
    }
    double nn = 0.0;
    for (const cdouble& v : cols[c]) nn += std::norm(v);
    nn = std::sqrt(nn);
    if (nn < 1e-12) throw std::runtime_error("degenerate Gaussian draw");
    for (cdouble& v : cols[c]) v /= nn;
  }
  std::vector<cdouble> u(dim * dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) u[r * dim + c] = cols[c][r];
  }
  return u;
}

Circuit random_clifford_circuit(int n, int n_gates, Rng& rng) {
  Circuit c(n);
  for (int i = 0; i < n_gates; ++i) {
    const std::uint64_t kind = n >= 2 ? rng.uniform_int(3) : rng.uniform_int(2);
    if (kind == 0) {
      c.append(Gate::h(static_cast<int>(rng.uniform_int(n))));
    } else if (kind == 1) {
      c.append(Gate::s(static_cast<int>(rng.uniform_int(n))));
    } else {
      const int a = static_cast<int>(rng.uniform_int(n));
      int b = static_cast<int>(rng.uniform_int(n - 1));
      if (b >= a) ++b;
      c.append(Gate::cnot(a, b));
    }
  }
  return c;
}

Circuit random_bounded_circuit(int n, int gate_budget, int d_budget, Rng& rng) {
  if (gate_budget < 0 || d_budget < 0) {
    throw std::invalid_argument("budgets must be >= 0");
  }
  Circuit c(n);
  std::vector<int> crossings(n > 1 ? n - 1 : 0, 0);
  // Dimension-counting bond bound per cut; a 2-qubit gate on (i, i+1) can
  // push the bond at cut i up to 2*min(neighbors).
  std::vector<long long> bond(n > 1 ? n + 1 : 0, 1);
  const long long bond_cap = 1ll << std::min(d_budget, 30);
  for (int g = 0; g < gate_budget; ++g) {
    bool placed = false;
    if (n >= 2 && rng.uniform_int(2) == 0) {
      const int cut = static_cast<int>(rng.uniform_int(n - 1));
      const long long grown =
          std::min({2 * std::min(bond[cut], bond[cut + 2]),
                    1ll << std::min(cut + 1, 30),
                    1ll << std::min(n - 1 - cut, 30)});
      if (crossings[cut] + 1 <= d_budget && grown <= bond_cap) {
        c.append(Gate::generic2(cut, cut + 1, random_unitary(4, rng)));
        ++crossings[cut];
        bond[cut + 1] = std::max(bond[cut + 1], grown);
        placed = true;
      }
    }
    if (!placed) {
      const int q = static_cast<int>(rng.uniform_int(n));
      c.append(Gate::generic1(q, random_unitary(2, rng)));
    }
  }
  return c;
}

std::vector<Qubit2> random_product_input(int n, Rng& rng) {
  std::vector<Qubit2> input(n);
  for (Qubit2& q : input) {
    q = {rng.complex_gaussian(), rng.complex_gaussian()};
    const double nn = std::sqrt(std::norm(q[0]) + std::norm(q[1]));
    q[0] /= nn;
    q[1] /= nn;
  }
  return input;
}

std::vector<Measurement> sample_measurements(const MeasurementDistribution& dist,
                                             int n, int m, std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("need m >= 1 draws");
  if (n < 1) throw std::invalid_argument("need n >= 1 qubits");
  Rng rng(seed);
  std::vector<Measurement> out;
  out.reserve(m);
  if (const auto* up = std::get_if<UniformPauliSpec>(&dist.spec)) {
    if (up->max_weight > n) {
      throw std::invalid_argument("max_weight exceeds qubit count");
    }
    for (int i = 0; i < m; ++i) {
      out.emplace_back(random_pauli(n, up->max_weight, rng));
    }
    return out;
  }
  const auto& cf = std::get<CircuitFamilySpec>(dist.spec);
  for (int i = 0; i < m; ++i) {
    Circuit c = random_bounded_circuit(n, cf.gate_budget, cf.d_budget, rng);
    const int line = static_cast<int>(rng.uniform_int(n));
    out.emplace_back(std::move(c), line);
  }
  return out;
}

}  // namespace qpac
