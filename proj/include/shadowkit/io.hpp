// Copyright 2026 The shadowkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// File formats:
//   state record   {"n": int, "k": int, "amplitudes": [[re, im], ...]}
//   matrix         {"n": int, "matrix": [[[re, im], ...], ...]} (row-major)
//   records CSV    projector_index,count
// Floating-point text uses 17 significant digits.

#ifndef SHADOWKIT_IO_HPP
#define SHADOWKIT_IO_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <json.hpp>
#include <string>
#include <vector>

#include "shadowkit/shadow.hpp"
#include "shadowkit/stabilizer.hpp"

namespace shadowkit::io {

using json = nlohmann::json;

/// %.17g
std::string format_double(double v);

/// 64-bit FNV-1a of the compact, key-sorted JSON dump.
std::string config_hash(const json &config);

json state_to_json(const PureState &state);
PureState state_from_json(const json &j);
json states_to_json(const std::vector<PureState> &states);
std::vector<PureState> states_from_json(const json &j);

json matrix_to_json(std::size_t qubits, const Eigen::MatrixXcd &m);
/// Returns the matrix; `qubits` receives n.
Eigen::MatrixXcd matrix_from_json(const json &j, std::size_t &qubits);

struct CountRow {
    std::size_t projector_index;
    std::uint64_t count;
};

std::string records_to_csv(const std::vector<MeasurementRecord> &records);
std::vector<CountRow> counts_from_csv(const std::string &text);
/// Joins a counts CSV with its projector sidecar.
std::vector<MeasurementRecord> join_records(const std::vector<CountRow> &rows, const std::vector<PureState> &projectors);

std::string read_file(const std::filesystem::path &path);
void write_file(const std::filesystem::path &path, const std::string &content);
json read_json(const std::filesystem::path &path);
void write_json(const std::filesystem::path &path, const json &j);

}  // namespace shadowkit::io

#endif
