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

#ifndef QPAC_LP_HPP
#define QPAC_LP_HPP

#include <vector>

namespace qpac {

struct LpOptions {
  double pivot_tol = 1e-11;        // entries below this never pivot
  double feasibility_tol = 1e-9;   // phase-1 objective above this is a
                                   // genuine infeasibility certificate
};

// Finds x >= 0 with |A x - b|_inf <= eta, optionally on the probability
// simplex (sum x = 1), via a dense phase-1 simplex with Bland's anti-cycling
// rule. Deterministic; every returned point is re-verified against the
// constraints before being handed back. Throws InfeasibleError carrying the
// final phase-1 objective when no such point exists.
std::vector<double> lp_feasibility(const std::vector<std::vector<double>>& a,
                                   const std::vector<double>& b, double eta,
                                   bool simplex_constraint,
                                   const LpOptions& options = {});

}  // namespace qpac

#endif
