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

#ifndef QPAC_IO_HPP
#define QPAC_IO_HPP

#include <string>

#include <json.hpp>

#include "qpac/circuit.hpp"
#include "qpac/measurement.hpp"
#include "qpac/training.hpp"

namespace qpac {

using json = nlohmann::ordered_json;

// Versioned text formats. Every top-level document carries a "format" tag
// ("circuit/1", "meas/1", "train/1", ...); loaders check it and throw
// FormatError on mismatch or missing fields. Numbers round-trip exactly:
// doubles are emitted in shortest-exact form.

json circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const json& j);

json measurement_to_json(const Measurement& m);
Measurement measurement_from_json(const json& j);

json training_set_to_json(const TrainingSet& t);
TrainingSet training_set_from_json(const json& j);

json distribution_to_json(const MeasurementDistribution& d);
MeasurementDistribution distribution_from_json(const json& j);

/// Reads a whole JSON document; FormatError on parse failure.
json read_json_file(const std::string& path);

/// Two-space indented dump with trailing newline.
void write_json_file(const std::string& path, const json& j);

std::string dump_json(const json& j);

/// Fetches j[key] or throws FormatError naming the missing field.
const json& require_field(const json& j, const char* key);

void require_format(const json& j, const char* tag);

}  // namespace qpac

#endif
