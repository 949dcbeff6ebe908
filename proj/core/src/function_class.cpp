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

#include "qpac/function_class.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <stdexcept>

#include "qpac/chain.hpp"
#include "qpac/dense.hpp"
#include "qpac/errors.hpp"
#include "qpac/stabilizer.hpp"

namespace qpac {

FunctionClassEvaluator singleton_class(
    std::function<double(const Measurement&)> fn) {
  FunctionClassEvaluator v;
  v.count = 1;
  v.eval = [fn = std::move(fn)](std::size_t, const Measurement& m) {
    return fn(m);
  };
  v.description = "singleton";
  return v;
}

FunctionClassEvaluator eom_preparation_class(const OntModel& model, int mesh) {
  if (mesh < 1) throw std::invalid_argument("mesh must be >= 1");
  auto preparations = std::make_shared<std::vector<Preparation>>();
  // Compositions of `mesh` into lambda_size nonnegative parts.
  std::vector<int> parts(model.lambda_size, 0);
  const std::function<void(int, int)> rec = [&](int index, int remaining) {
    if (index == model.lambda_size - 1) {
      parts[index] = remaining;
      Preparation q;
      q.probs.reserve(parts.size());
      for (int v : parts) {
        q.probs.push_back(static_cast<double>(v) / mesh);
      }
      preparations->push_back(std::move(q));
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      parts[index] = v;
      rec(index + 1, remaining - v);
    }
  };
  rec(0, mesh);
  auto model_copy = std::make_shared<OntModel>(model);
  model_copy->rebuild_lookup();
  FunctionClassEvaluator v;
  v.count = preparations->size();
  v.eval = [preparations, model_copy](std::size_t h, const Measurement& m) {
    return eom_expectation((*preparations)[h], *model_copy, m);
  };
  v.description = "eom preparations, mesh 1/" + std::to_string(mesh);
  return v;
}

namespace {

std::uint64_t pack_pauli_bits(const PauliString& p) {
  std::uint64_t v = 0;
  const std::size_t n = p.num_qubits();
  for (std::size_t i = 0; i < n; ++i) {
    if (p.x[i]) v |= std::uint64_t{1} << i;
    if (p.z[i]) v |= std::uint64_t{1} << (n + i);
  }
  return v;
}

bool packed_commute(std::uint64_t a, std::uint64_t b, int n) {
  const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
  return (__builtin_parityll((a & mask) & (b >> n)) ^
          __builtin_parityll((a >> n) & (b & mask))) == 0;
}

// Signature of the subspace spanned by a generator set: the sorted list of
// all its nonzero elements.
std::vector<std::uint64_t> subspace_signature(
    const std::vector<std::uint64_t>& gens) {
  std::vector<std::uint64_t> elements;
  const std::size_t count = std::size_t{1} << gens.size();
  for (std::size_t mask = 1; mask < count; ++mask) {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (mask & (std::size_t{1} << i)) acc ^= gens[i];
    }
    elements.push_back(acc);
  }
  std::sort(elements.begin(), elements.end());
  return elements;
}

bool independent(const std::vector<std::uint64_t>& gens) {
  std::vector<std::uint64_t> rows;
  for (std::uint64_t g : gens) {
    std::uint64_t v = g;
    for (std::uint64_t row : rows) {
      const std::uint64_t pivot = row & (~row + 1);
      if (v & pivot) v ^= row;
    }
    if (v == 0) return false;
    rows.push_back(v);
  }
  return true;
}

PauliString unpack_pauli(std::uint64_t bits, int n) {
  PauliString p(n);
  for (int i = 0; i < n; ++i) {
    p.x[i] = (bits >> i) & 1;
    p.z[i] = (bits >> (n + i)) & 1;
  }
  return p;
}

}  // namespace

FunctionClassEvaluator stabilizer_class(int n) {
  if (n < 1 || n > 3) {
    throw CapExceededError("stabilizer enumeration caps n at 3");
  }
  // Every maximal isotropic subspace of the symplectic space, deduplicated
  // by its element set, then every sign assignment on its basis.
  const std::uint64_t total = std::uint64_t{1} << (2 * n);
  std::map<std::vector<std::uint64_t>, std::vector<std::uint64_t>> subspaces;
  std::vector<std::uint64_t> gens(n);
  const std::function<void(int, std::uint64_t)> rec = [&](int depth,
                                                          std::uint64_t start) {
    if (depth == n) {
      subspaces.emplace(subspace_signature(gens), gens);
      return;
    }
    for (std::uint64_t cand = start; cand < total; ++cand) {
      bool ok = true;
      for (int i = 0; i < depth; ++i) {
        if (!packed_commute(gens[i], cand, n)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      gens[depth] = cand;
      std::vector<std::uint64_t> prefix(gens.begin(),
                                        gens.begin() + depth + 1);
      if (!independent(prefix)) continue;
      rec(depth + 1, cand + 1);
    }
  };
  rec(0, 1);

  auto tableaux = std::make_shared<std::vector<StabilizerTableau>>();
  for (const auto& [signature, basis] : subspaces) {
    for (std::uint64_t signs = 0; signs < (std::uint64_t{1} << n); ++signs) {
      StabilizerTableau t;
      t.n = n;
      for (int i = 0; i < n; ++i) {
        PauliString g = unpack_pauli(basis[i], n);
        g.sign = (signs >> i) & 1 ? -1 : +1;
        t.generators.push_back(std::move(g));
      }
      validate_tableau(t);
      tableaux->push_back(std::move(t));
    }
  }
  FunctionClassEvaluator v;
  v.count = tableaux->size();
  v.eval = [tableaux](std::size_t h, const Measurement& m) {
    return tableau_predict((*tableaux)[h], m);
  };
  v.description = "stabilizer states, n = " + std::to_string(n);
  return v;
}

FunctionClassEvaluator chain_class(int n, int bond_cap,
                                   const std::vector<double>& grid) {
  if (n < 1 || n > 3) throw CapExceededError("chain enumeration caps n at 3");
  if (bond_cap < 1 || bond_cap > 2) {
    throw CapExceededError("chain enumeration caps L at 2");
  }
  if (grid.empty()) throw std::invalid_argument("empty amplitude grid");
  const std::size_t dim = std::size_t{1} << n;
  auto chains = std::make_shared<std::vector<ChainState>>();
  std::map<std::vector<double>, bool> seen;
  std::vector<std::size_t> digits(dim, 0);
  while (true) {
    DenseState dense;
    dense.n = n;
    dense.amps.resize(dim);
    double norm2 = 0.0;
    for (std::size_t b = 0; b < dim; ++b) {
      dense.amps[b] = grid[digits[b]];
      norm2 += std::norm(dense.amps[b]);
    }
    if (norm2 > 1e-12) {
      const double scale = 1.0 / std::sqrt(norm2);
      int lead_sign = 0;
      for (std::size_t b = 0; b < dim; ++b) {
        dense.amps[b] *= scale;
        if (lead_sign == 0 && std::abs(dense.amps[b].real()) > 1e-12) {
          lead_sign = dense.amps[b].real() > 0 ? 1 : -1;
        }
      }
      if (lead_sign < 0) {
        for (auto& a : dense.amps) a = -a;
      }
      std::vector<double> key;
      key.reserve(dim);
      for (const auto& a : dense.amps) key.push_back(a.real());
      if (seen.emplace(std::move(key), true).second) {
        try {
          chains->push_back(chain_from_dense(dense, bond_cap));
        } catch (const RankOverflowError&) {
          // grid state too entangled for this cap
        }
      }
    }
    std::size_t pos = 0;
    while (pos < dim && ++digits[pos] == grid.size()) {
      digits[pos] = 0;
      ++pos;
    }
    if (pos == dim) break;
  }
  if (chains->empty()) throw std::invalid_argument("grid produced no states");
  FunctionClassEvaluator v;
  v.count = chains->size();
  v.eval = [chains](std::size_t h, const Measurement& m) {
    return chain_expectation((*chains)[h], m);
  };
  v.description = "chain states on a grid, n = " + std::to_string(n) +
                  ", L = " + std::to_string(bond_cap);
  return v;
}

}  // namespace qpac
