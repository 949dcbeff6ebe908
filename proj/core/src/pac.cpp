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

#include "qpac/pac.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "qpac/errors.hpp"

namespace qpac {

void validate_occam_params(const OccamParams& p) {
  const auto in_unit = [](double v) { return v > 0.0 && v < 1.0; };
  if (p.n < 1) throw std::invalid_argument("n must be >= 1");
  if (!in_unit(p.epsilon) || !in_unit(p.delta) || !in_unit(p.gamma)) {
    throw std::invalid_argument("epsilon, delta, gamma must lie in (0, 1)");
  }
  if (p.eta < 0.0) throw std::invalid_argument("eta must be >= 0");
  if (p.eta >= p.gamma) throw std::invalid_argument("eta must stay below gamma");
  if (p.occam_constant <= 0.0 || p.anthony_constant <= 0.0) {
    throw std::invalid_argument("constants C, K must be positive");
  }
}

long long occam_sample_bound(const OccamParams& p, DatasizeReading reading) {
  validate_occam_params(p);
  if (reading == DatasizeReading::kLiteralSigma) {
    throw std::invalid_argument(
        "the literal sigma^2 reading is dimensionally unusable; "
        "use the gamma^2 reading");
  }
  const double ge = p.gamma * p.epsilon;
  const double lead = p.occam_constant / (p.gamma * p.gamma * p.epsilon * p.epsilon);
  const double log_term = std::log(1.0 / ge);
  const double inner =
      p.n / (p.gamma * p.gamma * p.epsilon * p.epsilon) * log_term * log_term +
      std::log(1.0 / p.delta);
  return static_cast<long long>(std::ceil(lead * inner));
}

long long anthony_sample_bound(const OccamParams& p,
                               const std::function<long long(double)>& fat) {
  validate_occam_params(p);
  const double margin = p.gamma - p.eta;
  const long long fat_dim = fat(margin / 8.0);
  if (fat_dim < 0) throw std::invalid_argument("fat dimension must be >= 0");
  double fat_term = 0.0;
  if (fat_dim > 0) {
    const double log_arg =
        static_cast<double>(fat_dim) / (margin * p.epsilon);
    const double lg = std::log(log_arg);
    fat_term = static_cast<double>(fat_dim) * lg * lg;
  }
  const double total = p.anthony_constant / p.epsilon *
                       (fat_term + std::log(1.0 / p.delta));
  return static_cast<long long>(std::ceil(total));
}

std::function<long long(double)> corollary_fat(int n) {
  return [n](double gamma_prime) -> long long {
    if (gamma_prime <= 0.0) {
      throw std::invalid_argument("fat argument must be positive");
    }
    return static_cast<long long>(
        std::ceil(n / (gamma_prime * gamma_prime)));
  };
}

double binary_entropy(double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("p must lie in [0, 1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

RacBound rac_bound_check(int k, int lambda_size, double p, double slack) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (lambda_size < 1) throw std::invalid_argument("lambda_size must be >= 1");
  if (!(p > 0.5 && p <= 1.0)) {
    throw std::invalid_argument("p must lie in (0.5, 1]: below that the "
                                "measurement carries no information");
  }
  RacBound out;
  out.lhs = std::log2(static_cast<double>(lambda_size));
  out.rhs = (1.0 - binary_entropy(p)) * k;
  out.satisfied = out.lhs >= out.rhs - slack;
  return out;
}

namespace {

class Bitset {
 public:
  explicit Bitset(std::size_t bits)
      : bits_(bits), words_((bits + 63) / 64, 0) {}

  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }

  bool any_and(const Bitset& other) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (words_[w] & other.words_[w]) return true;
    }
    return false;
  }

  Bitset and_with(const Bitset& other) const {
    Bitset out(bits_);
    for (std::size_t w = 0; w < words_.size(); ++w) {
      out.words_[w] = words_[w] & other.words_[w];
    }
    return out;
  }

  bool empty() const {
    return std::all_of(words_.begin(), words_.end(),
                       [](std::uint64_t w) { return w == 0; });
  }

  bool operator==(const Bitset& other) const { return words_ == other.words_; }
  bool operator<(const Bitset& other) const { return words_ < other.words_; }

 private:
  std::size_t bits_;
  std::vector<std::uint64_t> words_;
};

// Hypotheses usable for the high side (value >= alpha + gamma) and the low
// side (value <= alpha - gamma) of one witness threshold.
struct ThresholdClass {
  Bitset high;
  Bitset low;
};

std::vector<ThresholdClass> threshold_classes(
    const std::vector<std::vector<double>>& values, std::size_t coord,
    double gamma) {
  std::set<double> distinct;
  for (const auto& row : values) distinct.insert(row[coord]);
  std::vector<double> candidates;
  double prev = 0.0;
  bool have_prev = false;
  for (double v : distinct) {
    candidates.push_back(v - gamma);
    candidates.push_back(v + gamma);
    if (have_prev) candidates.push_back(0.5 * (prev + v));
    prev = v;
    have_prev = true;
  }
  std::map<std::pair<std::vector<bool>, std::vector<bool>>, bool> seen;
  std::vector<ThresholdClass> classes;
  for (double alpha : candidates) {
    std::vector<bool> hi_key(values.size()), lo_key(values.size());
    ThresholdClass cls{Bitset(values.size()), Bitset(values.size())};
    bool any_high = false, any_low = false;
    for (std::size_t h = 0; h < values.size(); ++h) {
      if (values[h][coord] >= alpha + gamma) {
        cls.high.set(h);
        hi_key[h] = true;
        any_high = true;
      }
      if (values[h][coord] <= alpha - gamma) {
        cls.low.set(h);
        lo_key[h] = true;
        any_low = true;
      }
    }
    if (!any_high || !any_low) continue;
    if (!seen.emplace(std::make_pair(hi_key, lo_key), true).second) continue;
    classes.push_back(std::move(cls));
  }
  return classes;
}

// Depth-first search over per-coordinate threshold classes keeping, for every
// sign pattern over the processed coordinates, the set of hypotheses still
// realizing it. All sets nonempty at full depth means the subset shatters.
bool shatterable(const std::vector<std::vector<ThresholdClass>>& coords,
                 std::size_t depth, std::vector<Bitset>& pattern_sets) {
  if (depth == coords.size()) return true;
  for (const ThresholdClass& cls : coords[depth]) {
    std::vector<Bitset> next;
    next.reserve(pattern_sets.size() * 2);
    bool dead = false;
    for (const Bitset& s : pattern_sets) {
      Bitset low = s.and_with(cls.low);
      Bitset high = s.and_with(cls.high);
      if (low.empty() || high.empty()) {
        dead = true;
        break;
      }
      next.push_back(std::move(low));
      next.push_back(std::move(high));
    }
    if (dead) continue;
    if (shatterable(coords, depth + 1, next)) return true;
  }
  return false;
}

bool subset_shatters(const std::vector<std::vector<double>>& values,
                     const std::vector<std::size_t>& subset, double gamma) {
  std::vector<std::vector<ThresholdClass>> coords;
  coords.reserve(subset.size());
  for (std::size_t coord : subset) {
    std::vector<ThresholdClass> classes = threshold_classes(values, coord, gamma);
    if (classes.empty()) return false;
    coords.push_back(std::move(classes));
  }
  // Cheapest coordinates first keeps the search tree narrow.
  std::sort(coords.begin(), coords.end(),
            [](const auto& a, const auto& b) { return a.size() < b.size(); });
  Bitset all(values.size());
  for (std::size_t h = 0; h < values.size(); ++h) all.set(h);
  std::vector<Bitset> roots = {all};
  return shatterable(coords, 0, roots);
}

bool any_subset_shatters(const std::vector<std::vector<double>>& values,
                         std::size_t pool_size, int k, double gamma) {
  std::vector<std::size_t> subset(k);
  // Lexicographic k-combinations of [0, pool_size).
  std::function<bool(int, std::size_t)> rec = [&](int depth,
                                                  std::size_t start) -> bool {
    if (depth == k) return subset_shatters(values, subset, gamma);
    for (std::size_t i = start; i + (k - depth - 1) < pool_size; ++i) {
      subset[depth] = i;
      if (rec(depth + 1, i + 1)) return true;
    }
    return false;
  };
  return rec(0, 0);
}

}  // namespace

int fat_shattering_estimate(const FunctionClassEvaluator& v,
                            const std::vector<Measurement>& pool, double gamma,
                            int max_k, const FatOptions& options) {
  if (pool.size() > options.exhaustive_cap) {
    throw CapExceededError("pool exceeds the exhaustive cap of " +
                           std::to_string(options.exhaustive_cap));
  }
  if (max_k > static_cast<int>(pool.size())) {
    throw std::invalid_argument("max_k exceeds the pool size");
  }
  if (gamma <= 0.0) throw std::invalid_argument("gamma must be positive");
  if (v.count == 0) throw std::invalid_argument("empty hypothesis class");

  std::vector<std::vector<double>> values(v.count,
                                          std::vector<double>(pool.size()));
  for (std::size_t h = 0; h < v.count; ++h) {
    for (std::size_t e = 0; e < pool.size(); ++e) {
      values[h][e] = v.eval(h, pool[e]);
    }
  }

  int fat = 0;
  for (int k = 1; k <= max_k; ++k) {
    // 2^k patterns need 2^k distinct realizers.
    if (k < 63 && (std::uint64_t{1} << k) > v.count) break;
    if (!any_subset_shatters(values, pool.size(), k, gamma)) break;
    fat = k;
  }
  return fat;
}

json occam_params_to_json(const OccamParams& p) {
  json out;
  out["format"] = "occam/1";
  out["n"] = p.n;
  out["epsilon"] = p.epsilon;
  out["delta"] = p.delta;
  out["gamma"] = p.gamma;
  out["eta"] = p.eta;
  out["C"] = p.occam_constant;
  out["K"] = p.anthony_constant;
  return out;
}

OccamParams occam_params_from_json(const json& j) {
  require_format(j, "occam/1");
  OccamParams p;
  p.n = require_field(j, "n").get<int>();
  p.epsilon = require_field(j, "epsilon").get<double>();
  p.delta = require_field(j, "delta").get<double>();
  p.gamma = require_field(j, "gamma").get<double>();
  p.eta = require_field(j, "eta").get<double>();
  p.occam_constant = require_field(j, "C").get<double>();
  p.anthony_constant = require_field(j, "K").get<double>();
  try {
    validate_occam_params(p);
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  return p;
}

}  // namespace qpac
