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

#ifndef QPAC_CHAIN_HPP
#define QPAC_CHAIN_HPP

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "qpac/dense.hpp"
#include "qpac/io.hpp"
#include "qpac/measurement.hpp"
#include "qpac/training.hpp"

namespace qpac {

// Chain-parametric state: per-site tables of subnormalized 2-vectors indexed
// by bond indices, every bond capped at L. Site k holds a (r_{k-1}) x
// (2 * r_k) matrix whose column (s, r) is the amplitude of physical symbol s
// with right bond index r. The gauge keeps sites 2..n right-orthonormal and
// the full weight on site 1, which makes every fixed-left-index family of
// (physical x right) entries unit-norm and the contraction norm 1.
struct ChainState {
  int n = 0;
  int bond_cap = 1;  // L
  std::vector<Eigen::MatrixXcd> sites;

  int rank_left(int site) const {
    return static_cast<int>(sites[site].rows());
  }
  int rank_right(int site) const {
    return static_cast<int>(sites[site].cols() / 2);
  }
  /// Stored bond dimensions r_0 .. r_{n-2}.
  std::vector<int> bond_dims() const;
  /// Total complex parameter count; at most 2 n L^2.
  std::size_t parameter_count() const;
};

struct ChainOptions {
  bool truncate = false;        // discard Schmidt values below truncate_tol
  double truncate_tol = 1e-10;  // relative to the largest value at the cut
  std::size_t pauli_weight_cap = 16;
};

/// All bonds rank 1; contraction equals the tensor product of the inputs.
ChainState chain_from_product(const std::vector<Qubit2>& qubit_states,
                              int bond_cap = 1);

/// Exact chain form of a dense state via successive SVDs; throws
/// RankOverflowError when a cut needs more than bond_cap.
ChainState chain_from_dense(const DenseState& dense, int bond_cap);

DenseState chain_to_dense(const ChainState& s,
                          std::size_t n_cap = kDefaultOracleCap);

double chain_norm(const ChainState& s);

/// Schmidt values per cut, descending, from a mixed-canonical sweep.
std::vector<std::vector<double>> schmidt_values(const ChainState& s);

/// Numerical Schmidt ranks per cut at the 1e-10 relative cutoff.
std::vector<int> schmidt_ranks(const ChainState& s, double rel_tol = 1e-10);

// Applies one gate. 1-qubit gates act in place on a site; 2-qubit gates on
// adjacent lines contract, apply, and split by SVD; non-adjacent pairs are
// routed through SWAP chains, each SWAP paying its own rank growth. Throws
// RankOverflowError when an exact update would need more than bond_cap kept
// Schmidt values at some cut.
ChainState apply_gate(const ChainState& s, const Gate& g,
                      const ChainOptions& opts = {});

ChainState apply_circuit(const ChainState& s, const Circuit& c,
                         const ChainOptions& opts = {});

// Tr(E rho) for the chain state. Pauli measurements contract transfer
// matrices directly (weight capped by opts); circuit-induced measurements
// evolve a copy through U and read the single-line Z marginal.
double chain_expectation(const ChainState& s, const Measurement& m,
                         const ChainOptions& opts = {});

/// chain_expectation(s, ex.measurement) - ex.value.
double chain_residual(const ChainState& s, const TrainingExample& ex,
                      const ChainOptions& opts = {});

struct ChainLearnBudget {
  int restarts = 8;
  int max_iters = 250;
};

// Multi-restart projected descent on the summed squared residuals over the
// real and imaginary parts of the site tensors: central finite-difference
// gradient, step halving on non-decrease, renormalization after every step.
// Returns the first restart (by index) reaching max residual <= eta; throws
// BudgetExhaustedError carrying the best max-residual otherwise.
ChainState learn_chain(const TrainingSet& training, int bond_cap, double eta,
                       const ChainLearnBudget& budget, std::uint64_t seed,
                       const ChainOptions& opts = {});

json chain_to_json(const ChainState& s);
ChainState chain_from_json(const json& j);

}  // namespace qpac

#endif
