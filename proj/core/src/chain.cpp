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

#include "qpac/chain.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qpac/errors.hpp"
#include "qpac/rng.hpp"

namespace qpac {

namespace {

// Relative cutoff separating genuine Schmidt values from numerical zeros
// when truncation is off.
constexpr double kExactZeroCutoff = 1e-12;

using Matrix = Eigen::MatrixXcd;

Matrix pauli_site_op(std::uint8_t xb, std::uint8_t zb) {
  Matrix op(2, 2);
  const cdouble i1(0.0, 1.0);
  if (xb && zb) {
    op << 0.0, -i1, i1, 0.0;  // Y
  } else if (xb) {
    op << 0.0, 1.0, 1.0, 0.0;  // X
  } else if (zb) {
    op << 1.0, 0.0, 0.0, -1.0;  // Z
  } else {
    op << 1.0, 0.0, 0.0, 1.0;
  }
  return op;
}

/// Physical-symbol block: the (rl x rr) slice of a canonical-grouped site.
inline auto phys_block(const Matrix& site, int s) {
  const int rr = static_cast<int>(site.cols() / 2);
  return site.block(0, s * rr, site.rows(), rr);
}

// E'[r, r_bar] = sum_{s, s_bar} O(s_bar, s) (A_s^T E conj(A_s_bar))[r, r_bar]
Matrix transfer_left(const Matrix& env, const Matrix& site, const Matrix& op) {
  const int rr = static_cast<int>(site.cols() / 2);
  Matrix out = Matrix::Zero(rr, rr);
  for (int s = 0; s < 2; ++s) {
    for (int sb = 0; sb < 2; ++sb) {
      if (op(sb, s) == cdouble(0.0)) continue;
      out += op(sb, s) *
             (phys_block(site, s).transpose() * env * phys_block(site, sb).conjugate());
    }
  }
  return out;
}

Matrix transfer_right(const Matrix& env, const Matrix& site, const Matrix& op) {
  const int rl = static_cast<int>(site.rows());
  Matrix out = Matrix::Zero(rl, rl);
  for (int s = 0; s < 2; ++s) {
    for (int sb = 0; sb < 2; ++sb) {
      if (op(sb, s) == cdouble(0.0)) continue;
      out += op(sb, s) *
             (phys_block(site, s) * env * phys_block(site, sb).adjoint());
    }
  }
  return out;
}

cdouble close_envs(const Matrix& left, const Matrix& site, const Matrix& op,
                   const Matrix& right) {
  const Matrix mid = transfer_left(left, site, op);
  return (mid.cwiseProduct(right)).sum();
}

Matrix identity_op() { return Matrix::Identity(2, 2); }

/// (rl*2) x rr grouping with row l*2 + s, used for two-site contractions.
Matrix to_left_grouped(const Matrix& site) {
  const int rl = static_cast<int>(site.rows());
  const int rr = static_cast<int>(site.cols() / 2);
  Matrix out(rl * 2, rr);
  for (int l = 0; l < rl; ++l) {
    for (int s = 0; s < 2; ++s) {
      out.row(l * 2 + s) = site.block(l, s * rr, 1, rr);
    }
  }
  return out;
}

Matrix from_left_grouped(const Matrix& grouped) {
  const int rl = static_cast<int>(grouped.rows() / 2);
  const int rr = static_cast<int>(grouped.cols());
  Matrix out(rl, 2 * rr);
  for (int l = 0; l < rl; ++l) {
    for (int s = 0; s < 2; ++s) {
      out.block(l, s * rr, 1, rr) = grouped.row(l * 2 + s);
    }
  }
  return out;
}

// LQ split M = L * Q with orthonormal Q rows, via QR of the adjoint.
void lq_decompose(const Matrix& m, Matrix& l_out, Matrix& q_out) {
  const Eigen::Index q = std::min(m.rows(), m.cols());
  Eigen::HouseholderQR<Matrix> qr(m.adjoint());
  Matrix thin_q = qr.householderQ() * Matrix::Identity(m.cols(), q);
  Matrix r = qr.matrixQR().topRows(q).triangularView<Eigen::Upper>();
  l_out = r.adjoint();
  q_out = thin_q.adjoint();
}

// Restores right-orthonormality of sites [1, upto] by pushing the residual
// factors down to site 0. Dimensions can only shrink.
void push_gauge_left(ChainState& s, int upto) {
  for (int k = upto; k >= 1; --k) {
    Matrix l, q;
    lq_decompose(s.sites[k], l, q);
    s.sites[k] = std::move(q);
    const int rr_prev = static_cast<int>(s.sites[k - 1].cols() / 2);
    if (rr_prev != l.rows()) {
      throw std::logic_error("bond mismatch during gauge push");
    }
    Matrix prev(s.sites[k - 1].rows(), 2 * l.cols());
    for (int sym = 0; sym < 2; ++sym) {
      prev.block(0, sym * l.cols(), prev.rows(), l.cols()) =
          phys_block(s.sites[k - 1], sym) * l;
    }
    s.sites[k - 1] = std::move(prev);
  }
}

void apply_1q_inplace(ChainState& s, int q, const std::vector<cdouble>& u) {
  Matrix& site = s.sites[q];
  const int rr = static_cast<int>(site.cols() / 2);
  const Matrix b0 = site.block(0, 0, site.rows(), rr);
  const Matrix b1 = site.block(0, rr, site.rows(), rr);
  site.block(0, 0, site.rows(), rr) = u[0] * b0 + u[1] * b1;
  site.block(0, rr, site.rows(), rr) = u[2] * b0 + u[3] * b1;
}

// Contract sites (i, i+1), apply the 4x4, split by SVD with the rank policy,
// then restore the gauge left of the pair.
void apply_2q_adjacent_inplace(ChainState& s, int i,
                               const std::vector<cdouble>& u,
                               const ChainOptions& opts) {
  const Matrix left = to_left_grouped(s.sites[i]);       // (rl*2) x m
  const Matrix right = s.sites[i + 1];                   // m x (2*rr)
  const int rl = static_cast<int>(left.rows() / 2);
  const int rr = static_cast<int>(right.cols() / 2);
  // Theta[(l, s1), (s2, r)] with s1 the slow index within row pairs.
  Matrix theta = left * right;  // (rl*2) x (2*rr), col (s2, r)
  Matrix updated = Matrix::Zero(theta.rows(), theta.cols());
  for (int s1 = 0; s1 < 2; ++s1) {
    for (int s2 = 0; s2 < 2; ++s2) {
      for (int t1 = 0; t1 < 2; ++t1) {
        for (int t2 = 0; t2 < 2; ++t2) {
          const cdouble coeff = u[(s1 * 2 + s2) * 4 + (t1 * 2 + t2)];
          if (coeff == cdouble(0.0)) continue;
          for (int l = 0; l < rl; ++l) {
            updated.block(l * 2 + s1, s2 * rr, 1, rr) +=
                coeff * theta.block(l * 2 + t1, t2 * rr, 1, rr);
          }
        }
      }
    }
  }
  Eigen::JacobiSVD<Matrix> svd(updated,
                               Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double top = sv.size() > 0 ? sv(0) : 0.0;
  // truncate_tol is relative on Schmidt values (squared singular values).
  const double cutoff =
      top * (opts.truncate ? std::sqrt(opts.truncate_tol) : kExactZeroCutoff);
  int rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) > cutoff) ++rank;
  }
  rank = std::max(rank, 1);
  if (rank > s.bond_cap) {
    throw RankOverflowError(static_cast<std::size_t>(i),
                            static_cast<std::size_t>(rank),
                            static_cast<std::size_t>(s.bond_cap));
  }
  const Matrix u_part = svd.matrixU().leftCols(rank) *
                        sv.head(rank).asDiagonal().toDenseMatrix().cast<cdouble>();
  s.sites[i] = from_left_grouped(u_part);
  s.sites[i + 1] = svd.matrixV().leftCols(rank).adjoint();
  push_gauge_left(s, i);
}

const std::vector<cdouble>& swap_matrix() {
  static const std::vector<cdouble> m = {1, 0, 0, 0, 0, 0, 1, 0,
                                         0, 1, 0, 0, 0, 0, 0, 1};
  return m;
}

void apply_gate_inplace_chain(ChainState& s, const Gate& g,
                              const ChainOptions& opts) {
  for (std::size_t i = 0; i < g.arity(); ++i) {
    if (g.targets[i] < 0 || g.targets[i] >= s.n) {
      throw std::invalid_argument("gate target out of range");
    }
  }
  const std::vector<cdouble> u = gate_unitary(g);
  if (g.arity() == 1) {
    apply_1q_inplace(s, g.targets[0], u);
    return;
  }
  const int a = g.targets[0];
  const int b = g.targets[1];
  const int lo = std::min(a, b);
  const int hi = std::max(a, b);
  const std::vector<cdouble> oriented = a < b ? u : swap_factors_4x4(u);
  if (hi == lo + 1) {
    apply_2q_adjacent_inplace(s, lo, oriented, opts);
    return;
  }
  // Walk the high line down next to the low one; every SWAP is a real gate
  // with its own rank cost.
  for (int t = hi - 1; t > lo; --t) {
    apply_2q_adjacent_inplace(s, t, swap_matrix(), opts);
  }
  apply_2q_adjacent_inplace(s, lo, oriented, opts);
  for (int t = lo + 1; t < hi; ++t) {
    apply_2q_adjacent_inplace(s, t, swap_matrix(), opts);
  }
}

double pauli_expectation_chain(const ChainState& s, const PauliString& p) {
  Matrix env = Matrix::Identity(1, 1);
  for (int k = 0; k < s.n; ++k) {
    env = transfer_left(env, s.sites[k], pauli_site_op(p.x[k], p.z[k]));
  }
  return p.sign * env(0, 0).real();
}

double marginal_zero_probability(const ChainState& s, int line) {
  Matrix proj = Matrix::Zero(2, 2);
  proj(0, 0) = 1.0;
  Matrix env = Matrix::Identity(1, 1);
  for (int k = 0; k < s.n; ++k) {
    env = transfer_left(env, s.sites[k], k == line ? proj : identity_op());
  }
  return env(0, 0).real();
}

double clamp_unit_slack(double v) {
  return std::min(1.0, std::max(0.0, v));
}

}  // namespace

std::vector<int> ChainState::bond_dims() const {
  std::vector<int> dims;
  for (int k = 0; k + 1 < n; ++k) dims.push_back(rank_right(k));
  return dims;
}

std::size_t ChainState::parameter_count() const {
  std::size_t total = 0;
  for (const Matrix& m : sites) total += static_cast<std::size_t>(m.size());
  return total;
}

ChainState chain_from_product(const std::vector<Qubit2>& qubit_states,
                              int bond_cap) {
  const int n = static_cast<int>(qubit_states.size());
  if (n < 1) throw std::invalid_argument("empty product input");
  if (bond_cap < 1) throw std::invalid_argument("bond cap must be >= 1");
  ChainState s;
  s.n = n;
  s.bond_cap = bond_cap;
  for (const Qubit2& q : qubit_states) {
    const double nn = std::sqrt(std::norm(q[0]) + std::norm(q[1]));
    if (std::abs(nn - 1.0) > 1e-9) {
      throw std::invalid_argument("input qubit state not normalized");
    }
    Matrix site(1, 2);
    site(0, 0) = q[0] / nn;
    site(0, 1) = q[1] / nn;
    s.sites.push_back(std::move(site));
  }
  return s;
}

ChainState chain_from_dense(const DenseState& dense, int bond_cap) {
  if (bond_cap < 1) throw std::invalid_argument("bond cap must be >= 1");
  const int n = dense.n;
  ChainState s;
  s.n = n;
  s.bond_cap = bond_cap;
  s.sites.resize(n);
  // Split left to right; carry = remaining coefficients, rows indexed by the
  // current bond, columns by the remaining basis states.
  Matrix carry(1, dense.amps.size());
  for (std::size_t b = 0; b < dense.amps.size(); ++b) carry(0, b) = dense.amps[b];
  for (int k = 0; k < n - 1; ++k) {
    const Eigen::Index cols = carry.cols() / 2;
    Matrix m(carry.rows() * 2, cols);
    for (Eigen::Index l = 0; l < carry.rows(); ++l) {
      for (int sym = 0; sym < 2; ++sym) {
        m.row(l * 2 + sym) = carry.block(l, sym * cols, 1, cols);
      }
    }
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double top = sv.size() > 0 ? sv(0) : 0.0;
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
      if (sv(i) > top * kExactZeroCutoff) ++rank;
    }
    rank = std::max(rank, 1);
    if (rank > bond_cap) {
      throw RankOverflowError(static_cast<std::size_t>(k),
                              static_cast<std::size_t>(rank),
                              static_cast<std::size_t>(bond_cap));
    }
    s.sites[k] = from_left_grouped(svd.matrixU().leftCols(rank));
    carry = sv.head(rank).asDiagonal().toDenseMatrix().cast<cdouble>() *
            svd.matrixV().leftCols(rank).adjoint();
  }
  // carry is (r x 2); with rr = 1 that already is the canonical grouping.
  s.sites[n - 1] = carry;
  // Left-to-right SVD leaves sites left-orthonormal; restore our gauge.
  push_gauge_left(s, n - 1);
  return s;
}

DenseState chain_to_dense(const ChainState& s, std::size_t n_cap) {
  if (static_cast<std::size_t>(s.n) > n_cap) {
    throw CapExceededError("oracle cap exceeded: n = " + std::to_string(s.n));
  }
  // amplitudes[b] built by expanding bonds left to right.
  Matrix rows(1, 1);
  rows(0, 0) = 1.0;
  for (int k = 0; k < s.n; ++k) {
    const int rr = static_cast<int>(s.sites[k].cols() / 2);
    Matrix next(rows.rows() * 2, rr);
    for (Eigen::Index b = 0; b < rows.rows(); ++b) {
      for (int sym = 0; sym < 2; ++sym) {
        next.row(b * 2 + sym) = rows.row(b) * phys_block(s.sites[k], sym);
      }
    }
    rows = std::move(next);
  }
  DenseState out;
  out.n = s.n;
  out.amps.resize(std::size_t{1} << s.n);
  for (std::size_t b = 0; b < out.amps.size(); ++b) out.amps[b] = rows(b, 0);
  return out;
}

double chain_norm(const ChainState& s) {
  Matrix env = Matrix::Identity(1, 1);
  for (int k = 0; k < s.n; ++k) {
    env = transfer_left(env, s.sites[k], identity_op());
  }
  return std::sqrt(std::max(0.0, env(0, 0).real()));
}

std::vector<std::vector<double>> schmidt_values(const ChainState& s) {
  std::vector<std::vector<double>> values;
  Matrix carry = Matrix::Identity(1, 1);
  for (int k = 0; k + 1 < s.n; ++k) {
    Matrix absorbed(carry.rows(), s.sites[k].cols());
    for (int sym = 0; sym < 2; ++sym) {
      const int rr = static_cast<int>(s.sites[k].cols() / 2);
      absorbed.block(0, sym * rr, carry.rows(), rr) =
          carry * phys_block(s.sites[k], sym);
    }
    Matrix m = to_left_grouped(absorbed);
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    std::vector<double> lambdas(sv.size());
    for (Eigen::Index i = 0; i < sv.size(); ++i) lambdas[i] = sv(i) * sv(i);
    values.push_back(std::move(lambdas));
    carry = sv.asDiagonal().toDenseMatrix().cast<cdouble>() *
            svd.matrixV().adjoint();
  }
  return values;
}

std::vector<int> schmidt_ranks(const ChainState& s, double rel_tol) {
  std::vector<int> ranks;
  for (const std::vector<double>& cut : schmidt_values(s)) {
    const double top = cut.empty() ? 0.0 : cut.front();
    int r = 0;
    for (double v : cut) {
      if (v > top * rel_tol) ++r;
    }
    ranks.push_back(std::max(r, 1));
  }
  return ranks;
}

ChainState apply_gate(const ChainState& s, const Gate& g,
                      const ChainOptions& opts) {
  ChainState out = s;
  apply_gate_inplace_chain(out, g, opts);
  return out;
}

ChainState apply_circuit(const ChainState& s, const Circuit& c,
                         const ChainOptions& opts) {
  if (c.n != s.n) throw std::invalid_argument("circuit arity mismatch");
  ChainState out = s;
  for (const Gate& g : c.gates) apply_gate_inplace_chain(out, g, opts);
  return out;
}

double chain_expectation(const ChainState& s, const Measurement& m,
                         const ChainOptions& opts) {
  if (m.num_qubits() != static_cast<std::size_t>(s.n)) {
    throw std::invalid_argument("measurement arity mismatch");
  }
  if (m.is_pauli()) {
    const PauliString& p = m.pauli();
    if (p.weight() > opts.pauli_weight_cap) {
      throw std::invalid_argument("pauli weight exceeds configured cap");
    }
    return clamp_unit_slack(0.5 * (1.0 + pauli_expectation_chain(s, p)));
  }
  const CircuitInduced& ci = m.circuit_induced();
  const ChainState evolved = apply_circuit(s, ci.circuit, opts);
  return clamp_unit_slack(marginal_zero_probability(evolved, ci.line));
}

double chain_residual(const ChainState& s, const TrainingExample& ex,
                      const ChainOptions& opts) {
  return chain_expectation(s, ex.measurement, opts) - ex.value;
}

json chain_to_json(const ChainState& s) {
  json out;
  out["format"] = "chain/1";
  out["n"] = s.n;
  out["L"] = s.bond_cap;
  json ranks = json::array();
  for (int r : s.bond_dims()) ranks.push_back(r);
  out["ranks"] = std::move(ranks);
  json sites = json::array();
  for (const Matrix& m : s.sites) {
    const int rl = static_cast<int>(m.rows());
    const int rr = static_cast<int>(m.cols() / 2);
    json site = json::array();
    for (int l = 0; l < rl; ++l) {
      json per_phys = json::array();
      for (int sym = 0; sym < 2; ++sym) {
        json row = json::array();
        for (int r = 0; r < rr; ++r) {
          const cdouble v = m(l, sym * rr + r);
          row.push_back(json::array({v.real(), v.imag()}));
        }
        per_phys.push_back(std::move(row));
      }
      site.push_back(std::move(per_phys));
    }
    sites.push_back(std::move(site));
  }
  out["sites"] = std::move(sites);
  return out;
}

ChainState chain_from_json(const json& j) {
  require_format(j, "chain/1");
  ChainState s;
  s.n = require_field(j, "n").get<int>();
  s.bond_cap = require_field(j, "L").get<int>();
  const json& sites = require_field(j, "sites");
  if (!sites.is_array() || sites.size() != static_cast<std::size_t>(s.n)) {
    throw FormatError("site count disagrees with n");
  }
  for (const json& site : sites) {
    const int rl = static_cast<int>(site.size());
    if (rl < 1) throw FormatError("empty site tensor");
    const int rr = static_cast<int>(site[0][0].size());
    Matrix m(rl, 2 * rr);
    for (int l = 0; l < rl; ++l) {
      if (site[l].size() != 2) throw FormatError("site needs 2 physical rows");
      for (int sym = 0; sym < 2; ++sym) {
        const json& row = site[l][sym];
        if (static_cast<int>(row.size()) != rr) {
          throw FormatError("ragged site tensor");
        }
        for (int r = 0; r < rr; ++r) {
          m(l, sym * rr + r) = cdouble(row[r][0].get<double>(),
                                       row[r][1].get<double>());
        }
      }
    }
    s.sites.push_back(std::move(m));
  }
  // Shape consistency: adjacent bonds must agree and stay within the cap.
  for (int k = 0; k < s.n; ++k) {
    if (k == 0 && s.sites[k].rows() != 1) throw FormatError("left edge bond != 1");
    if (k == s.n - 1 && s.sites[k].cols() != 2) {
      throw FormatError("right edge bond != 1");
    }
    if (k + 1 < s.n && s.rank_right(k) != s.rank_left(k + 1)) {
      throw FormatError("bond dimension mismatch between sites");
    }
    if (s.rank_right(k) > s.bond_cap || s.rank_left(k) > s.bond_cap) {
      throw FormatError("bond dimension exceeds L");
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Learner
// ---------------------------------------------------------------------------

namespace {

struct ParamRef {
  int site;
  int row;
  int col;
  bool imag;
};

std::vector<ParamRef> enumerate_params(const ChainState& s) {
  std::vector<ParamRef> refs;
  for (int k = 0; k < s.n; ++k) {
    for (int r = 0; r < s.sites[k].rows(); ++r) {
      for (int c = 0; c < s.sites[k].cols(); ++c) {
        refs.push_back({k, r, c, false});
        refs.push_back({k, r, c, true});
      }
    }
  }
  return refs;
}

void project_to_manifold(ChainState& s) {
  push_gauge_left(s, s.n - 1);
  const double nn = s.sites[0].norm();
  if (nn < 1e-300) throw std::runtime_error("zero state during projection");
  s.sites[0] /= nn;
}

ChainState random_chain(int n, const std::vector<int>& dims, int bond_cap,
                        Rng& rng) {
  ChainState s;
  s.n = n;
  s.bond_cap = bond_cap;
  for (int k = 0; k < n; ++k) {
    const int rl = k == 0 ? 1 : dims[k - 1];
    const int rr = k == n - 1 ? 1 : dims[k];
    Matrix m(rl, 2 * rr);
    for (int r = 0; r < rl; ++r) {
      for (int c = 0; c < 2 * rr; ++c) m(r, c) = rng.complex_gaussian();
    }
    s.sites.push_back(std::move(m));
  }
  project_to_manifold(s);
  return s;
}

// Cached environments for the Pauli part of the objective: a parameter
// perturbation at site k only needs the local sandwich, the environments on
// both sides stay fixed.
struct PauliEnvs {
  std::vector<Matrix> ops;    // per site
  std::vector<Matrix> left;   // left[k]: env before site k
  std::vector<Matrix> right;  // right[k]: env after site k
  int sign = +1;
  double value = 0.0;         // expectation at the cached point
};

class Objective {
 public:
  Objective(const TrainingSet& training, const ChainOptions& opts)
      : training_(training), opts_(opts) {
    for (const TrainingExample& ex : training.examples) {
      pauli_.push_back(ex.measurement.is_pauli());
    }
  }

  double value_at(const ChainState& s) const {
    double acc = 0.0;
    for (const TrainingExample& ex : training_.examples) {
      const double r = raw_expectation(s, ex.measurement) - ex.value;
      acc += r * r;
    }
    return acc;
  }

  double max_residual(const ChainState& s) const {
    double worst = 0.0;
    for (const TrainingExample& ex : training_.examples) {
      worst = std::max(worst,
                       std::abs(chain_expectation(s, ex.measurement, opts_) -
                                ex.value));
    }
    return worst;
  }

  // Central finite differences with per-measurement environment caching for
  // Pauli terms; circuit-induced terms fall back to full re-evaluation.
  void gradient(const ChainState& s, const std::vector<ParamRef>& refs,
                double delta, std::vector<double>& grad) const {
    std::vector<PauliEnvs> envs(training_.examples.size());
    for (std::size_t i = 0; i < training_.examples.size(); ++i) {
      if (!pauli_[i]) continue;
      build_envs(s, training_.examples[i].measurement.pauli(), envs[i]);
    }
    grad.assign(refs.size(), 0.0);
    ChainState probe = s;
    for (std::size_t p = 0; p < refs.size(); ++p) {
      const ParamRef& ref = refs[p];
      double plus = 0.0, minus = 0.0;
      nudge(probe, ref, delta);
      plus = probe_objective(probe, s, ref.site, envs);
      nudge(probe, ref, -2 * delta);
      minus = probe_objective(probe, s, ref.site, envs);
      nudge(probe, ref, delta);  // restore
      grad[p] = (plus - minus) / (2 * delta);
    }
  }

 private:
  static void nudge(ChainState& s, const ParamRef& ref, double delta) {
    cdouble& v = s.sites[ref.site](ref.row, ref.col);
    v += ref.imag ? cdouble(0.0, delta) : cdouble(delta, 0.0);
  }

  double raw_expectation(const ChainState& s, const Measurement& m) const {
    if (m.is_pauli()) {
      return 0.5 * (1.0 + pauli_expectation_chain(s, m.pauli()));
    }
    const CircuitInduced& ci = m.circuit_induced();
    const ChainState evolved = apply_circuit(s, ci.circuit, opts_);
    return marginal_zero_probability(evolved, ci.line);
  }

  void build_envs(const ChainState& s, const PauliString& p,
                  PauliEnvs& env) const {
    env.sign = p.sign;
    env.ops.clear();
    for (int k = 0; k < s.n; ++k) {
      env.ops.push_back(pauli_site_op(p.x[k], p.z[k]));
    }
    env.left.assign(s.n + 1, Matrix());
    env.right.assign(s.n + 1, Matrix());
    env.left[0] = Matrix::Identity(1, 1);
    for (int k = 0; k < s.n; ++k) {
      env.left[k + 1] = transfer_left(env.left[k], s.sites[k], env.ops[k]);
    }
    env.right[s.n] = Matrix::Identity(1, 1);
    for (int k = s.n - 1; k >= 0; --k) {
      env.right[k] = transfer_right(env.right[k + 1], s.sites[k], env.ops[k]);
    }
    env.value = env.left[s.n](0, 0).real();
  }

  double probe_objective(const ChainState& probe, const ChainState& base,
                         int site, const std::vector<PauliEnvs>& envs) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < training_.examples.size(); ++i) {
      const TrainingExample& ex = training_.examples[i];
      double expectation;
      if (pauli_[i]) {
        const PauliEnvs& env = envs[i];
        const cdouble local = close_envs(env.left[site], probe.sites[site],
                                         env.ops[site], env.right[site + 1]);
        expectation = 0.5 * (1.0 + env.sign * local.real());
      } else {
        expectation = raw_expectation(probe, ex.measurement);
      }
      const double r = expectation - ex.value;
      acc += r * r;
    }
    (void)base;
    return acc;
  }

  const TrainingSet& training_;
  ChainOptions opts_;
  std::vector<bool> pauli_;
};

}  // namespace

ChainState learn_chain(const TrainingSet& training, int bond_cap, double eta,
                       const ChainLearnBudget& budget, std::uint64_t seed,
                       const ChainOptions& opts) {
  if (eta <= 0.0) throw std::invalid_argument("eta must be > 0");
  if (bond_cap < 1) throw std::invalid_argument("bond cap must be >= 1");
  const int n = training.n;
  if (n < 1) {
    throw std::invalid_argument("training set has no qubits");
  }
  if (training.examples.empty()) {
    return chain_from_product(std::vector<Qubit2>(n, Qubit2{1.0, 0.0}),
                              bond_cap);
  }
  std::vector<int> dims(std::max(n - 1, 0));
  for (int k = 0; k + 1 < n; ++k) {
    const double left_cap = std::pow(2.0, std::min(k + 1, 30));
    const double right_cap = std::pow(2.0, std::min(n - 1 - k, 30));
    dims[k] = static_cast<int>(
        std::min({static_cast<double>(bond_cap), left_cap, right_cap}));
  }

  Objective objective(training, opts);
  const double fd_delta = 1e-4;
  double best = std::numeric_limits<double>::infinity();
  Rng base_rng(seed);
  for (int restart = 0; restart < budget.restarts; ++restart) {
    Rng rng = base_rng.derive(restart);
    ChainState state = random_chain(n, dims, bond_cap, rng);
    const std::vector<ParamRef> refs = enumerate_params(state);
    std::vector<double> grad;
    double alpha = 0.25;
    double current = objective.value_at(state);
    for (int iter = 0; iter < budget.max_iters; ++iter) {
      const double maxres = objective.max_residual(state);
      best = std::min(best, maxres);
      if (maxres <= eta) return state;
      objective.gradient(state, refs, fd_delta, grad);
      bool moved = false;
      for (int halvings = 0; halvings < 30; ++halvings) {
        ChainState candidate = state;
        for (std::size_t p = 0; p < refs.size(); ++p) {
          const ParamRef& ref = refs[p];
          cdouble& v = candidate.sites[ref.site](ref.row, ref.col);
          v -= ref.imag ? cdouble(0.0, alpha * grad[p])
                        : cdouble(alpha * grad[p], 0.0);
        }
        project_to_manifold(candidate);
        const double value = objective.value_at(candidate);
        if (value < current - 1e-15) {
          state = std::move(candidate);
          current = value;
          alpha = std::min(alpha * 1.3, 2.0);
          moved = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!moved || alpha < 1e-12) break;
    }
    const double maxres = objective.max_residual(state);
    best = std::min(best, maxres);
    if (maxres <= eta) return state;
  }
  throw BudgetExhaustedError(best);
}

}  // namespace qpac
