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

#include "qpac/lp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qpac/errors.hpp"

namespace qpac {

namespace {

// Standard-form tableau for min sum(artificials) subject to Rx = rhs, x >= 0.
struct Tableau {
  std::size_t rows = 0;
  std::size_t cols = 0;  // structural + slack + artificial
  std::vector<std::vector<double>> a;
  std::vector<double> rhs;
  std::vector<std::size_t> basis;  // basic variable per row
};

}  // namespace

std::vector<double> lp_feasibility(const std::vector<std::vector<double>>& a,
                                   const std::vector<double>& b, double eta,
                                   bool simplex_constraint,
                                   const LpOptions& options) {
  const std::size_t m = a.size();
  if (b.size() != m) throw std::invalid_argument("A and b disagree in rows");
  if (eta < 0.0) throw std::invalid_argument("eta must be >= 0");
  const std::size_t nvars = m == 0 ? 0 : a.front().size();
  for (const auto& row : a) {
    if (row.size() != nvars) throw std::invalid_argument("ragged A matrix");
    for (double v : row) {
      if (!std::isfinite(v)) throw std::invalid_argument("non-finite entry");
    }
  }
  const std::size_t ell = nvars;
  if (m == 0) {
    if (simplex_constraint) {
      throw std::invalid_argument("cannot infer dimension from empty system");
    }
    return {};
  }

  // Row list: for every data row both band sides, then the simplex equality.
  // Each inequality gets one slack with +1 after sign normalization to
  // rhs >= 0; rows whose slack ends up with -1 get an artificial instead.
  const std::size_t n_ineq = 2 * m;
  const std::size_t n_rows = n_ineq + (simplex_constraint ? 1 : 0);
  Tableau t;
  t.rows = n_rows;
  t.cols = ell + n_ineq;  // artificials appended below as needed
  t.a.assign(n_rows, std::vector<double>(t.cols, 0.0));
  t.rhs.assign(n_rows, 0.0);
  t.basis.assign(n_rows, SIZE_MAX);

  for (std::size_t i = 0; i < m; ++i) {
    // a_i . x + s = b_i + eta
    for (std::size_t jj = 0; jj < ell; ++jj) t.a[2 * i][jj] = a[i][jj];
    t.a[2 * i][ell + 2 * i] = 1.0;
    t.rhs[2 * i] = b[i] + eta;
    // a_i . x - s = b_i - eta
    for (std::size_t jj = 0; jj < ell; ++jj) t.a[2 * i + 1][jj] = a[i][jj];
    t.a[2 * i + 1][ell + 2 * i + 1] = -1.0;
    t.rhs[2 * i + 1] = b[i] - eta;
  }
  if (simplex_constraint) {
    for (std::size_t jj = 0; jj < ell; ++jj) t.a[n_ineq][jj] = 1.0;
    t.rhs[n_ineq] = 1.0;
  }

  for (std::size_t r = 0; r < n_rows; ++r) {
    if (t.rhs[r] < 0.0) {
      for (double& v : t.a[r]) v = -v;
      t.rhs[r] = -t.rhs[r];
    }
  }

  // Basic variable per row: the row's own slack when its coefficient stayed
  // +1, otherwise a fresh artificial.
  std::vector<std::size_t> artificial_rows;
  for (std::size_t r = 0; r < n_rows; ++r) {
    if (r < n_ineq) {
      const std::size_t slack = ell + r;
      if (t.a[r][slack] > 0.5) {
        t.basis[r] = slack;
        continue;
      }
    }
    artificial_rows.push_back(r);
  }
  const std::size_t n_art = artificial_rows.size();
  for (std::size_t k = 0; k < n_art; ++k) {
    for (auto& row : t.a) row.push_back(0.0);
    const std::size_t col = t.cols + k;
    t.a[artificial_rows[k]][col] = 1.0;
    t.basis[artificial_rows[k]] = col;
  }
  const std::size_t total_cols = t.cols + n_art;
  const std::size_t first_art = t.cols;

  // Phase-1 objective row: minimize the artificial sum. Reduced costs start
  // as -(sum of artificial rows) on non-artificial columns.
  std::vector<double> cost(total_cols, 0.0);
  double objective = 0.0;
  for (std::size_t r : artificial_rows) {
    for (std::size_t c = 0; c < total_cols; ++c) {
      if (c < first_art) cost[c] -= t.a[r][c];
    }
    objective -= t.rhs[r];
  }

  const auto pivot = [&](std::size_t prow, std::size_t pcol) {
    const double p = t.a[prow][pcol];
    for (std::size_t c = 0; c < total_cols; ++c) t.a[prow][c] /= p;
    t.rhs[prow] /= p;
    for (std::size_t r = 0; r < n_rows; ++r) {
      if (r == prow) continue;
      const double f = t.a[r][pcol];
      if (std::abs(f) < 1e-300) continue;
      for (std::size_t c = 0; c < total_cols; ++c) {
        t.a[r][c] -= f * t.a[prow][c];
      }
      t.rhs[r] -= f * t.rhs[prow];
    }
    const double f = cost[pcol];
    if (std::abs(f) > 0.0) {
      for (std::size_t c = 0; c < total_cols; ++c) {
        cost[c] -= f * t.a[prow][c];
      }
      objective -= f * t.rhs[prow];
    }
    t.basis[prow] = pcol;
  };

  // Bland's rule end to end: entering = lowest-index negative reduced cost,
  // leaving = min ratio with lowest basic index on ties. Finite by design.
  const std::size_t max_pivots = 50 * (n_rows + 1) * (total_cols + 1);
  for (std::size_t step = 0;; ++step) {
    if (step > max_pivots) {
      throw std::runtime_error("simplex pivot budget exceeded");
    }
    std::size_t entering = SIZE_MAX;
    for (std::size_t c = 0; c < total_cols; ++c) {
      if (cost[c] < -options.pivot_tol) {
        entering = c;
        break;
      }
    }
    if (entering == SIZE_MAX) break;
    std::size_t leaving = SIZE_MAX;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < n_rows; ++r) {
      if (t.a[r][entering] > options.pivot_tol) {
        const double ratio = t.rhs[r] / t.a[r][entering];
        if (ratio < best_ratio - 1e-15 ||
            (std::abs(ratio - best_ratio) <= 1e-15 &&
             (leaving == SIZE_MAX || t.basis[r] < t.basis[leaving]))) {
          best_ratio = ratio;
          leaving = r;
        }
      }
    }
    if (leaving == SIZE_MAX) {
      throw std::runtime_error("phase-1 objective unbounded below");
    }
    pivot(leaving, entering);
  }

  if (-objective > options.feasibility_tol) {
    throw InfeasibleError(-objective);
  }

  std::vector<double> x(ell, 0.0);
  for (std::size_t r = 0; r < n_rows; ++r) {
    if (t.basis[r] < ell) x[t.basis[r]] = t.rhs[r];
  }
  for (double& v : x) {
    if (v < 0.0 && v > -options.feasibility_tol) v = 0.0;
  }

  // The contract is on the returned point, not on solver state.
  for (std::size_t i = 0; i < m; ++i) {
    double dot = 0.0;
    for (std::size_t jj = 0; jj < ell; ++jj) dot += a[i][jj] * x[jj];
    if (std::abs(dot - b[i]) > eta + options.feasibility_tol) {
      throw std::runtime_error("simplex returned an unverifiable point");
    }
  }
  if (simplex_constraint) {
    double sum = 0.0;
    for (double v : x) sum += v;
    if (std::abs(sum - 1.0) > options.feasibility_tol) {
      throw std::runtime_error("simplex point off the probability simplex");
    }
  }
  for (double v : x) {
    if (v < 0.0) throw std::runtime_error("simplex point has negative entry");
  }
  return x;
}

}  // namespace qpac
