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

#ifndef QPAC_PAC_HPP
#define QPAC_PAC_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "qpac/function_class.hpp"
#include "qpac/io.hpp"
#include "qpac/measurement.hpp"

namespace qpac {

struct OccamParams {
  int n = 1;
  double epsilon = 0.1;
  double delta = 0.05;
  double gamma = 0.1;
  double eta = 0.0;  // consistency tolerance, must stay below gamma
  double occam_constant = 1.0;    // C
  double anthony_constant = 1.0;  // K
};

void validate_occam_params(const OccamParams& p);

// The sample-size expression carries a squared symbol in its leading
// denominator that collides with the hypothesis-state name; the usable
// reading is gamma^2 and the literal one is rejected at runtime.
enum class DatasizeReading { kGammaSquared, kLiteralSigma };

// ceil( C / (gamma^2 eps^2) * ( n / (gamma^2 eps^2) * ln^2(1/(gamma eps))
//       + ln(1/delta) ) ), natural logs.
long long occam_sample_bound(
    const OccamParams& p,
    DatasizeReading reading = DatasizeReading::kGammaSquared);

// ceil( K / eps * ( fat((gamma-eta)/8) * ln^2( fat((gamma-eta)/8) /
//       ((gamma-eta) eps) ) + ln(1/delta) ) ); the fat term is 0 when the
// dimension is 0. Requires gamma > eta.
long long anthony_sample_bound(const OccamParams& p,
                               const std::function<long long(double)>& fat);

/// fat(gamma') = ceil(n / gamma'^2), the preparation-class envelope.
std::function<long long(double)> corollary_fat(int n);

/// H(p) = -p log2 p - (1-p) log2 (1-p), with H(0) = H(1) = 0.
double binary_entropy(double p);

struct RacBound {
  double lhs = 0.0;  // log2(lambda_size)
  double rhs = 0.0;  // (1 - H(p)) * k
  bool satisfied = false;
};

// Information bound for random-access encodings into an ontic space of size
// lambda_size: log2(lambda_size) >= (1 - H(p)) k - slack. The theorem's
// statement and proof disagree on the inequality's direction; this is the
// information-theoretically coherent reading (the proof's conclusion).
// Requires k >= 1, lambda_size >= 1 and p in (0.5, 1].
RacBound rac_bound_check(int k, int lambda_size, double p, double slack = 0.0);

struct FatOptions {
  std::size_t exhaustive_cap = 12;  // largest pool searched exhaustively
};

// Exact gamma-fat-shattering dimension of the finite class on the given
// pool, capped at max_k: the largest k such that some k-subset admits
// witnesses alpha_i with every sign pattern realized by a hypothesis at
// margin gamma. Witness candidates are the per-coordinate midpoints between
// consecutive distinct values plus the values +- gamma, which is exhaustive
// for finite classes. Throws CapExceededError past the pool cap.
int fat_shattering_estimate(const FunctionClassEvaluator& v,
                            const std::vector<Measurement>& pool, double gamma,
                            int max_k, const FatOptions& options = {});

json occam_params_to_json(const OccamParams& p);
OccamParams occam_params_from_json(const json& j);

}  // namespace qpac

#endif
