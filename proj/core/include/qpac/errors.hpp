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

#ifndef QPAC_ERRORS_HPP
#define QPAC_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qpac {

/// Training data cannot be satisfied by any hypothesis in the class.
struct InconsistentDataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Generator completion ran out of backtracking budget.
struct CompletionFailedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A gate update would push a bond rank past the configured cap.
struct RankOverflowError : std::runtime_error {
  RankOverflowError(std::size_t cut, std::size_t needed, std::size_t cap)
      : std::runtime_error("rank overflow at cut " + std::to_string(cut) +
                           ": needed " + std::to_string(needed) + " > cap " +
                           std::to_string(cap)),
        cut(cut),
        needed(needed),
        cap(cap) {}
  std::size_t cut;
  std::size_t needed;
  std::size_t cap;
};

/// No point satisfies the linear feasibility problem.
struct InfeasibleError : std::runtime_error {
  explicit InfeasibleError(double certificate)
      : std::runtime_error("infeasible: phase-1 objective " +
                           std::to_string(certificate)),
        certificate(certificate) {}
  double certificate;
};

/// Search budget exhausted before an eta-feasible point was found.
struct BudgetExhaustedError : std::runtime_error {
  explicit BudgetExhaustedError(double best_residual)
      : std::runtime_error("budget exhausted: best max-residual " +
                           std::to_string(best_residual)),
        best_residual(best_residual) {}
  double best_residual;
};

/// Input exceeds a configured size cap (oracle scale, pool size, ...).
struct CapExceededError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed or mistyped serialized input.
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qpac

#endif
