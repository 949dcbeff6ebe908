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

#include "qpac/io.hpp"

#include <fstream>

#include "qpac/errors.hpp"

namespace qpac {

const json& require_field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw FormatError(std::string("missing field \"") + key + "\"");
  }
  return *it;
}

void require_format(const json& j, const char* tag) {
  if (!j.is_object()) throw FormatError("expected a JSON object");
  const json& f = require_field(j, "format");
  if (!f.is_string() || f.get<std::string>() != tag) {
    throw FormatError(std::string("expected format \"") + tag + "\"");
  }
}

namespace {

json complex_to_json(const cdouble& v) {
  return json::array({v.real(), v.imag()});
}

cdouble complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw FormatError("complex values are [re, im] pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json matrix_to_json(const std::vector<cdouble>& m, std::size_t dim) {
  json rows = json::array();
  for (std::size_t r = 0; r < dim; ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < dim; ++c) {
      row.push_back(complex_to_json(m[r * dim + c]));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<cdouble> matrix_from_json(const json& j, std::size_t dim) {
  if (!j.is_array() || j.size() != dim) throw FormatError("bad matrix shape");
  std::vector<cdouble> m(dim * dim);
  for (std::size_t r = 0; r < dim; ++r) {
    const json& row = j[r];
    if (!row.is_array() || row.size() != dim) {
      throw FormatError("bad matrix shape");
    }
    for (std::size_t c = 0; c < dim; ++c) {
      m[r * dim + c] = complex_from_json(row[c]);
    }
  }
  return m;
}

json bits_to_json(const std::vector<std::uint8_t>& bits) {
  json arr = json::array();
  for (std::uint8_t b : bits) arr.push_back(static_cast<int>(b));
  return arr;
}

std::vector<std::uint8_t> bits_from_json(const json& j) {
  if (!j.is_array()) throw FormatError("bit vector must be an array");
  std::vector<std::uint8_t> bits;
  bits.reserve(j.size());
  for (const json& v : j) {
    const int b = v.get<int>();
    if (b != 0 && b != 1) throw FormatError("bits must be 0 or 1");
    bits.push_back(static_cast<std::uint8_t>(b));
  }
  return bits;
}

json gate_to_json(const Gate& g) {
  json out;
  out["kind"] = gate_kind_name(g.kind);
  json targets = json::array();
  for (std::size_t i = 0; i < g.arity(); ++i) targets.push_back(g.targets[i]);
  out["targets"] = std::move(targets);
  if (!g.matrix.empty()) {
    out["matrix"] = matrix_to_json(g.matrix, g.arity() == 1 ? 2 : 4);
  }
  return out;
}

Gate gate_from_json(const json& j) {
  const GateKind kind =
      gate_kind_from_name(require_field(j, "kind").get<std::string>());
  const json& targets = require_field(j, "targets");
  const std::size_t arity = is_two_qubit(kind) ? 2 : 1;
  if (!targets.is_array() || targets.size() != arity) {
    throw FormatError("gate target count mismatch");
  }
  const int t0 = targets[0].get<int>();
  const int t1 = arity == 2 ? targets[1].get<int>() : -1;
  switch (kind) {
    case GateKind::kH: return Gate::h(t0);
    case GateKind::kS: return Gate::s(t0);
    case GateKind::kX: return Gate::x(t0);
    case GateKind::kY: return Gate::y(t0);
    case GateKind::kZ: return Gate::z(t0);
    case GateKind::kCnot: return Gate::cnot(t0, t1);
    case GateKind::kCz: return Gate::cz(t0, t1);
    case GateKind::kGeneric1:
      return Gate::generic1(t0, matrix_from_json(require_field(j, "matrix"), 2));
    case GateKind::kGeneric2:
      return Gate::generic2(t0, t1,
                            matrix_from_json(require_field(j, "matrix"), 4));
  }
  throw FormatError("unreachable gate kind");
}

json pauli_to_json(const PauliString& p) {
  json out;
  out["n"] = p.num_qubits();
  out["x_bits"] = bits_to_json(p.x);
  out["z_bits"] = bits_to_json(p.z);
  out["sign"] = p.sign;
  return out;
}

PauliString pauli_from_json(const json& j) {
  PauliString p;
  p.x = bits_from_json(require_field(j, "x_bits"));
  p.z = bits_from_json(require_field(j, "z_bits"));
  const std::size_t n = require_field(j, "n").get<std::size_t>();
  if (p.x.size() != n || p.z.size() != n) {
    throw FormatError("bit vector lengths disagree with n");
  }
  p.sign = require_field(j, "sign").get<int>();
  if (p.sign != 1 && p.sign != -1) throw FormatError("sign must be +1 or -1");
  return p;
}

}  // namespace

json circuit_to_json(const Circuit& c) {
  json out;
  out["format"] = "circuit/1";
  out["n"] = c.n;
  json gates = json::array();
  for (const Gate& g : c.gates) gates.push_back(gate_to_json(g));
  out["gates"] = std::move(gates);
  return out;
}

Circuit circuit_from_json(const json& j) {
  require_format(j, "circuit/1");
  Circuit c(require_field(j, "n").get<int>());
  for (const json& g : require_field(j, "gates")) {
    c.append(gate_from_json(g));
  }
  try {
    validate_circuit(c);
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  return c;
}

json measurement_to_json(const Measurement& m) {
  json out;
  out["format"] = "meas/1";
  if (m.is_pauli()) {
    out["variant"] = "pauli";
    const json p = pauli_to_json(m.pauli());
    out.update(p);
  } else {
    out["variant"] = "circuit";
    out["circuit"] = circuit_to_json(m.circuit_induced().circuit);
    out["line"] = m.circuit_induced().line;
  }
  return out;
}

Measurement measurement_from_json(const json& j) {
  require_format(j, "meas/1");
  const std::string variant = require_field(j, "variant").get<std::string>();
  Measurement m;
  if (variant == "pauli") {
    m = Measurement(pauli_from_json(j));
  } else if (variant == "circuit") {
    m = Measurement(circuit_from_json(require_field(j, "circuit")),
                    require_field(j, "line").get<int>());
  } else {
    throw FormatError("unknown measurement variant \"" + variant + "\"");
  }
  try {
    validate_measurement(m);
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  return m;
}

json distribution_to_json(const MeasurementDistribution& d) {
  json out;
  if (const auto* up = std::get_if<UniformPauliSpec>(&d.spec)) {
    out["kind"] = "uniform_pauli";
    out["max_weight"] = up->max_weight;
  } else {
    const auto& cf = std::get<CircuitFamilySpec>(d.spec);
    out["kind"] = "circuit_family";
    out["gate_budget"] = cf.gate_budget;
    out["d_budget"] = cf.d_budget;
  }
  return out;
}

MeasurementDistribution distribution_from_json(const json& j) {
  const std::string kind = require_field(j, "kind").get<std::string>();
  if (kind == "uniform_pauli") {
    UniformPauliSpec spec;
    spec.max_weight = require_field(j, "max_weight").get<int>();
    return MeasurementDistribution(spec);
  }
  if (kind == "circuit_family") {
    CircuitFamilySpec spec;
    spec.gate_budget = require_field(j, "gate_budget").get<int>();
    spec.d_budget = require_field(j, "d_budget").get<int>();
    return MeasurementDistribution(spec);
  }
  throw FormatError("unknown distribution kind \"" + kind + "\"");
}

json training_set_to_json(const TrainingSet& t) {
  json out;
  out["format"] = "train/1";
  out["n"] = t.n;
  json examples = json::array();
  for (const TrainingExample& ex : t.examples) {
    json e;
    e["measurement"] = measurement_to_json(ex.measurement);
    e["value"] = ex.value;
    examples.push_back(std::move(e));
  }
  out["examples"] = std::move(examples);
  json prov;
  prov["true_state_descriptor"] = t.provenance.true_state_descriptor;
  prov["distribution_spec"] = t.provenance.distribution
                                  ? distribution_to_json(*t.provenance.distribution)
                                  : json(nullptr);
  prov["seed"] = t.provenance.seed;
  out["provenance"] = std::move(prov);
  return out;
}

TrainingSet training_set_from_json(const json& j) {
  require_format(j, "train/1");
  TrainingSet t;
  t.n = require_field(j, "n").get<int>();
  for (const json& e : require_field(j, "examples")) {
    TrainingExample ex;
    ex.measurement = measurement_from_json(require_field(e, "measurement"));
    ex.value = require_field(e, "value").get<double>();
    if (ex.value < 0.0 || ex.value > 1.0) {
      throw FormatError("training value outside [0, 1]");
    }
    if (ex.measurement.num_qubits() != static_cast<std::size_t>(t.n)) {
      throw FormatError("measurement arity disagrees with training set n");
    }
    t.examples.push_back(std::move(ex));
  }
  const json& prov = require_field(j, "provenance");
  t.provenance.true_state_descriptor =
      require_field(prov, "true_state_descriptor").get<std::string>();
  const json& dist = require_field(prov, "distribution_spec");
  if (!dist.is_null()) {
    t.provenance.distribution = distribution_from_json(dist);
  }
  t.provenance.seed = require_field(prov, "seed").get<std::uint64_t>();
  return t;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open \"" + path + "\"");
  json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("parse error in \"" + path + "\": " + e.what());
  }
  return j;
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write \"" + path + "\"");
  out << j.dump(2) << "\n";
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

}  // namespace qpac
