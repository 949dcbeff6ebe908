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

#include "qpac/stabilizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "qpac/errors.hpp"

namespace qpac {

namespace {

// Packed symplectic row for GF(2) elimination: x bits in [0, n), z bits in
// [n, 2n). Limits tableau linear algebra to n <= 32, far past desk scale.
std::uint64_t pack_bits(const PauliString& p) {
  const std::size_t n = p.num_qubits();
  if (n > 32) throw CapExceededError("stabilizer module caps n at 32");
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (p.x[i]) v |= std::uint64_t{1} << i;
    if (p.z[i]) v |= std::uint64_t{1} << (n + i);
  }
  return v;
}

// Signed span of mutually commuting Paulis, kept row-reduced. Rows remember
// their Pauli (with sign) so dependent inserts can report the sign of the
// matching group element.
class SignedSpan {
 public:
  enum class Insert { kAdded, kDependentMatch, kDependentConflict };

  explicit SignedSpan(std::size_t n) : n_(n) {}

  // Requires p to commute with every row. Reduces p; when it falls in the
  // span, compares the propagated sign against p's.
  Insert insert(PauliString p) {
    std::uint64_t bits = pack_bits(p);
    for (const Row& row : rows_) {
      if (bits & row.pivot) {
        p = pauli_product(row.pauli, p);
        bits ^= row.bits;
      }
    }
    if (bits == 0) {
      return p.sign == +1 ? Insert::kDependentMatch
                          : Insert::kDependentConflict;
    }
    rows_.push_back({p, bits, lowest_bit(bits)});
    return Insert::kAdded;
  }

  /// Sign of the group element with p's unsigned part, or 0 if outside the
  /// span. p must commute with every row.
  int membership_sign(PauliString p) const {
    p.sign = +1;
    std::uint64_t bits = pack_bits(p);
    for (const Row& row : rows_) {
      if (bits & row.pivot) {
        p = pauli_product(row.pauli, p);
        bits ^= row.bits;
      }
    }
    if (bits != 0) return 0;
    // product * p = sign * I and every factor squares to +I, so the group
    // element equals sign * (unsigned p).
    return p.sign;
  }

  bool commutes_with_all(const PauliString& p) const {
    return std::all_of(rows_.begin(), rows_.end(), [&](const Row& r) {
      return r.pauli.commutes_with(p);
    });
  }

  std::size_t size() const { return rows_.size(); }

  std::vector<PauliString> paulis() const {
    std::vector<PauliString> out;
    out.reserve(rows_.size());
    for (const Row& r : rows_) out.push_back(r.pauli);
    return out;
  }

 private:
  struct Row {
    PauliString pauli;
    std::uint64_t bits;
    std::uint64_t pivot;
  };

  static std::uint64_t lowest_bit(std::uint64_t v) { return v & (~v + 1); }

  std::size_t n_;
  std::vector<Row> rows_;
};

// Bits-only rank tracker for completion scans. reduce() returns a canonical
// coset representative: equal results mean equal cosets of the span.
class BitSpan {
 public:
  std::uint64_t reduce(std::uint64_t bits) const {
    for (std::uint64_t row : rows_) {
      const std::uint64_t pivot = row & (~row + 1);
      if (bits & pivot) bits ^= row;
    }
    return bits;
  }

  bool contains(std::uint64_t bits) const { return reduce(bits) == 0; }

  void add(std::uint64_t bits) {
    bits = reduce(bits);
    if (bits == 0) return;
    // Keep rows fully reduced against each other so representatives are
    // independent of insertion order.
    for (std::uint64_t& row : rows_) {
      const std::uint64_t pivot = bits & (~bits + 1);
      if (row & pivot) row ^= bits;
    }
    rows_.push_back(bits);
  }

 private:
  std::vector<std::uint64_t> rows_;
};

bool commutes_packed(std::uint64_t a, std::uint64_t b, std::size_t n) {
  const std::uint64_t mask = n == 64 ? ~std::uint64_t{0}
                                     : ((std::uint64_t{1} << n) - 1);
  const std::uint64_t ax = a & mask, az = a >> n;
  const std::uint64_t bx = b & mask, bz = b >> n;
  return (__builtin_parityll(ax & bz) ^ __builtin_parityll(az & bx)) == 0;
}

}  // namespace

StabilizerTableau tableau_zero(int n) {
  if (n < 1) throw std::invalid_argument("need n >= 1");
  StabilizerTableau t;
  t.n = n;
  t.generators.reserve(n);
  for (int q = 0; q < n; ++q) {
    t.generators.push_back(PauliString::single_z(n, q));
  }
  return t;
}

void validate_tableau(const StabilizerTableau& t) {
  if (t.n < 1 || t.generators.size() != static_cast<std::size_t>(t.n)) {
    throw std::invalid_argument("tableau needs exactly n generators");
  }
  BitSpan span;
  for (std::size_t i = 0; i < t.generators.size(); ++i) {
    const PauliString& g = t.generators[i];
    if (g.num_qubits() != static_cast<std::size_t>(t.n)) {
      throw std::invalid_argument("generator arity mismatch");
    }
    if (g.sign != 1 && g.sign != -1) {
      throw std::invalid_argument("generator sign must be +1 or -1");
    }
    const std::uint64_t bits = pack_bits(g);
    if (span.contains(bits)) {
      throw std::invalid_argument("generators are dependent");
    }
    span.add(bits);
    for (std::size_t j = i + 1; j < t.generators.size(); ++j) {
      if (!g.commutes_with(t.generators[j])) {
        throw std::invalid_argument("generators do not commute");
      }
    }
  }
}

PauliString conjugate_pauli(const Gate& g, PauliString p, bool inverse) {
  if (!is_clifford(g.kind)) {
    throw std::invalid_argument("non-Clifford gate in tableau update");
  }
  const auto flip = [&p](bool cond) {
    if (cond) p.sign = -p.sign;
  };
  switch (g.kind) {
    case GateKind::kH: {
      const int q = g.targets[0];
      flip(p.x[q] && p.z[q]);
      std::swap(p.x[q], p.z[q]);
      return p;
    }
    case GateKind::kS: {
      // S X S^+ = Y, S Y S^+ = -X; the inverse is S applied three times.
      const int reps = inverse ? 3 : 1;
      const int q = g.targets[0];
      for (int r = 0; r < reps; ++r) {
        flip(p.x[q] && p.z[q]);
        p.z[q] ^= p.x[q];
      }
      return p;
    }
    case GateKind::kX:
      flip(p.z[g.targets[0]]);
      return p;
    case GateKind::kY:
      flip(p.x[g.targets[0]] != p.z[g.targets[0]]);
      return p;
    case GateKind::kZ:
      flip(p.x[g.targets[0]]);
      return p;
    case GateKind::kCnot: {
      const int c = g.targets[0];
      const int t = g.targets[1];
      flip(p.x[c] && p.z[t] && (p.x[t] == p.z[c]));
      p.x[t] ^= p.x[c];
      p.z[c] ^= p.z[t];
      return p;
    }
    case GateKind::kCz: {
      // CZ = (I (x) H) CNOT (I (x) H); self-inverse.
      const Gate h = Gate::h(g.targets[1]);
      const Gate cx = Gate::cnot(g.targets[0], g.targets[1]);
      return conjugate_pauli(h, conjugate_pauli(cx, conjugate_pauli(h, std::move(p))));
    }
    default:
      throw std::invalid_argument("non-Clifford gate in tableau update");
  }
}

StabilizerTableau apply_clifford(const StabilizerTableau& t, const Gate& g) {
  for (std::size_t i = 0; i < g.arity(); ++i) {
    if (g.targets[i] < 0 || g.targets[i] >= t.n) {
      throw std::invalid_argument("gate target out of range");
    }
  }
  StabilizerTableau out;
  out.n = t.n;
  out.generators.reserve(t.generators.size());
  for (const PauliString& gen : t.generators) {
    out.generators.push_back(conjugate_pauli(g, gen));
  }
  return out;
}

StabilizerTableau apply_clifford_circuit(const StabilizerTableau& t,
                                         const Circuit& c) {
  if (c.n != t.n) throw std::invalid_argument("circuit arity mismatch");
  StabilizerTableau out = t;
  for (const Gate& g : c.gates) out = apply_clifford(out, g);
  return out;
}

PauliString pauli_from_circuit_measurement(const Circuit& circuit, int line) {
  validate_circuit(circuit);
  if (line < 0 || line >= circuit.n) {
    throw std::invalid_argument("measured line out of range");
  }
  PauliString p = PauliString::single_z(circuit.n, line);
  for (auto it = circuit.gates.rbegin(); it != circuit.gates.rend(); ++it) {
    p = conjugate_pauli(*it, std::move(p), /*inverse=*/true);
  }
  return p;
}

double pauli_value(const StabilizerTableau& t, const PauliString& p) {
  if (p.num_qubits() != static_cast<std::size_t>(t.n)) {
    throw std::invalid_argument("measurement arity mismatch");
  }
  if (p.is_identity()) return p.sign == +1 ? 1.0 : 0.0;
  SignedSpan span(t.n);
  for (const PauliString& g : t.generators) {
    if (!g.commutes_with(p)) return 0.5;
    span.insert(g);
  }
  // p commutes with a maximal abelian group, so it lies in the span.
  const int sign = span.membership_sign(p);
  if (sign == 0) throw std::logic_error("tableau not full rank");
  return sign == p.sign ? 1.0 : 0.0;
}

double tableau_predict(const StabilizerTableau& t, const Measurement& m) {
  if (m.is_pauli()) return pauli_value(t, m.pauli());
  const CircuitInduced& ci = m.circuit_induced();
  if (!ci.circuit.all_clifford()) {
    throw std::invalid_argument(
        "stabilizer hypotheses only evaluate Clifford-induced measurements");
  }
  return pauli_value(t, pauli_from_circuit_measurement(ci.circuit, ci.line));
}

void invert_constraint(const TrainingExample& example, ConstraintSet& out,
                       double tol) {
  if (!example.measurement.is_pauli()) {
    throw std::invalid_argument("stabilizer learner needs Pauli measurements");
  }
  const double v = example.value;
  PauliString p = example.measurement.pauli();
  if (std::abs(v - 1.0) <= tol) {
    out.deterministic.push_back(std::move(p));
  } else if (std::abs(v) <= tol) {
    p.sign = -p.sign;
    out.deterministic.push_back(std::move(p));
  } else if (std::abs(v - 0.5) <= tol) {
    p.sign = +1;
    out.unbiased.push_back(std::move(p));
  } else {
    throw InconsistentDataError(
        "training value " + std::to_string(v) +
        " is not in {0, 1/2, 1}: not a stabilizer state under this POVM");
  }
}

namespace {

struct CompletionResult {
  bool completed = false;
  std::vector<PauliString> generators;     // deterministic rows + completions
  std::vector<std::uint64_t> added_bits;   // packed completion generators
};

// Greedy lexicographic completion. A candidate must commute with the current
// generators, be independent of them, and respect the unbiased constraints:
// adding it must not pull any unbiased Pauli into the generated group, which
// happens exactly when the candidate reduces to the same coset
// representative as that Pauli. Every rejection reason is monotone in the
// generator set, so the scan never needs to revisit an index.
CompletionResult complete_generators(
    const std::vector<PauliString>& base,
    const std::vector<std::uint64_t>& unbiased_bits, std::size_t n,
    const std::unordered_set<std::uint64_t>& banned) {
  CompletionResult result;
  result.generators = base;
  std::vector<std::uint64_t> packed;
  BitSpan span;
  for (const PauliString& g : base) {
    const std::uint64_t bits = pack_bits(g);
    packed.push_back(bits);
    span.add(bits);
  }
  std::unordered_set<std::uint64_t> unbiased_cosets;
  const auto refresh_cosets = [&] {
    unbiased_cosets.clear();
    for (std::uint64_t u : unbiased_bits) {
      unbiased_cosets.insert(span.reduce(u));
    }
  };
  refresh_cosets();

  const std::uint64_t end = std::uint64_t{1} << (2 * n);
  PauliString candidate(n);
  std::uint64_t index = 1;
  while (result.generators.size() < n) {
    if (index >= end) return result;  // stuck; caller backtracks
    pauli_from_lex_index(index, n, candidate);
    ++index;
    const std::uint64_t bits = pack_bits(candidate);
    if (banned.count(bits)) continue;
    bool ok = true;
    for (std::uint64_t row : packed) {
      if (!commutes_packed(bits, row, n)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    const std::uint64_t reduced = span.reduce(bits);
    if (reduced == 0) continue;  // dependent
    if (unbiased_cosets.count(reduced)) continue;
    span.add(bits);
    packed.push_back(bits);
    result.generators.push_back(candidate);
    result.added_bits.push_back(bits);
    refresh_cosets();
  }
  result.completed = true;
  return result;
}

}  // namespace

StabilizerTableau learn_stabilizer(const TrainingSet& training,
                                   const StabilizerLearnOptions& options) {
  const std::size_t n = static_cast<std::size_t>(training.n);
  if (n < 1) throw std::invalid_argument("training set has no qubits");

  ConstraintSet cs;
  for (const TrainingExample& ex : training.examples) {
    invert_constraint(ex, cs, options.value_tol);
  }

  // Identity constraints are vacuous when satisfied and contradictions
  // otherwise; deduplicate the rest by unsigned bits.
  std::unordered_map<std::uint64_t, int> det_signs;
  std::vector<PauliString> deterministic;
  for (PauliString& p : cs.deterministic) {
    if (p.is_identity()) {
      if (p.sign == -1) {
        throw InconsistentDataError("identity measurement forced to value 0");
      }
      continue;
    }
    const std::uint64_t bits = pack_bits(p);
    auto [it, fresh] = det_signs.emplace(bits, p.sign);
    if (!fresh) {
      if (it->second != p.sign) {
        throw InconsistentDataError("same Pauli forced with both signs: " +
                                    p.str());
      }
      continue;
    }
    deterministic.push_back(std::move(p));
  }
  std::unordered_set<std::uint64_t> unbiased_bits;
  std::vector<PauliString> unbiased;
  for (PauliString& p : cs.unbiased) {
    if (p.is_identity()) {
      throw InconsistentDataError("identity measurement cannot be unbiased");
    }
    const std::uint64_t bits = pack_bits(p);
    if (det_signs.count(bits)) {
      throw InconsistentDataError(
          "Pauli constrained both deterministic and unbiased: " + p.str());
    }
    if (unbiased_bits.insert(bits).second) unbiased.push_back(std::move(p));
  }

  // Reduce deterministic constraints with sign propagation.
  SignedSpan span(n);
  for (const PauliString& p : deterministic) {
    if (!span.commutes_with_all(p)) {
      throw InconsistentDataError("anticommuting deterministic constraints: " +
                                  p.str());
    }
    if (span.insert(p) == SignedSpan::Insert::kDependentConflict) {
      throw InconsistentDataError(
          "deterministic constraints force both signs of " + p.str());
    }
  }
  // An unbiased Pauli inside the deterministic span is already forced.
  for (const PauliString& u : unbiased) {
    if (span.commutes_with_all(u) && span.membership_sign(u) != 0) {
      throw InconsistentDataError(
          "Pauli forced deterministic by products but observed unbiased: " +
          u.str());
    }
  }

  const std::vector<PauliString> base = span.paulis();
  std::vector<std::uint64_t> unbiased_bits_list;
  unbiased_bits_list.reserve(unbiased.size());
  for (const PauliString& u : unbiased) {
    unbiased_bits_list.push_back(pack_bits(u));
  }
  const int max_backtracks =
      options.max_backtracks > 0 ? options.max_backtracks : 2 * static_cast<int>(n);
  std::unordered_set<std::uint64_t> banned;
  for (int attempt = 0; attempt <= max_backtracks; ++attempt) {
    CompletionResult completion =
        complete_generators(base, unbiased_bits_list, n, banned);
    if (!completion.completed) {
      // The scan dead-ended; the first greedy pick of this attempt steered
      // into a corner, so ban it and retry from scratch.
      if (completion.added_bits.empty()) break;
      banned.insert(completion.added_bits.front());
      continue;
    }
    StabilizerTableau t;
    t.n = static_cast<int>(n);
    t.generators = std::move(completion.generators);
    validate_tableau(t);
    for (const PauliString& u : unbiased) {
      if (pauli_value(t, u) != 0.5) {
        throw std::logic_error("completion trapped an unbiased constraint");
      }
    }
    for (const TrainingExample& ex : training.examples) {
      if (std::abs(pauli_value(t, ex.measurement.pauli()) - ex.value) >
          options.value_tol) {
        throw std::logic_error("learned tableau fails a training example");
      }
    }
    return t;
  }
  throw CompletionFailedError(
      "no completion satisfies every unbiased constraint for " +
      std::to_string(unbiased.size()) + " unbiased rows after " +
      std::to_string(max_backtracks) + " backtracks");
}

json tableau_to_json(const StabilizerTableau& t) {
  json out;
  out["format"] = "tableau/1";
  out["n"] = t.n;
  json gens = json::array();
  for (const PauliString& g : t.generators) {
    json gen;
    json xbits = json::array();
    json zbits = json::array();
    for (std::size_t i = 0; i < g.num_qubits(); ++i) {
      xbits.push_back(static_cast<int>(g.x[i]));
      zbits.push_back(static_cast<int>(g.z[i]));
    }
    gen["x_bits"] = std::move(xbits);
    gen["z_bits"] = std::move(zbits);
    gen["sign"] = g.sign;
    gens.push_back(std::move(gen));
  }
  out["generators"] = std::move(gens);
  return out;
}

StabilizerTableau tableau_from_json(const json& j) {
  require_format(j, "tableau/1");
  StabilizerTableau t;
  t.n = require_field(j, "n").get<int>();
  for (const json& gen : require_field(j, "generators")) {
    PauliString p;
    for (const json& b : require_field(gen, "x_bits")) {
      p.x.push_back(static_cast<std::uint8_t>(b.get<int>()));
    }
    for (const json& b : require_field(gen, "z_bits")) {
      p.z.push_back(static_cast<std::uint8_t>(b.get<int>()));
    }
    p.sign = require_field(gen, "sign").get<int>();
    t.generators.push_back(std::move(p));
  }
  try {
    validate_tableau(t);
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  return t;
}

}  // namespace qpac
