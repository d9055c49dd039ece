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

#include "shadowkit/io.hpp"

#include <bit>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "shadowkit/error.hpp"

namespace shadowkit::io {

namespace {

json complex_to_json(std::complex<double> z) {
    return json::array({z.real(), z.imag()});
}

std::complex<double> complex_from_json(const json &j) {
    require(j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(), ErrorCode::InvalidArgument,
            "expected a complex number as [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string config_hash(const json &config) {
    // nlohmann::json objects are key-sorted, so dump() is canonical.
    const std::string text = config.dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json state_to_json(const PureState &state) {
    std::size_t support = 0;
    json amps = json::array();
    for (std::size_t i = 0; i < state.dim(); i++) {
        if (std::abs(state[i]) > 1e-12) {
            support++;
        }
        amps.push_back(complex_to_json(state[i]));
    }
    json j = {{"n", state.qubits()}, {"amplitudes", std::move(amps)}};
    // k is only meaningful for stabilizer states (support 2^k).
    if (std::has_single_bit(support)) {
        j["k"] = std::countr_zero(support);
    }
    return j;
}

PureState state_from_json(const json &j) {
    require(j.is_object() && j.contains("amplitudes") && j["amplitudes"].is_array(), ErrorCode::InvalidArgument,
            "state record needs an 'amplitudes' array");
    const auto &amps = j["amplitudes"];
    Eigen::VectorXcd v(static_cast<Eigen::Index>(amps.size()));
    for (std::size_t i = 0; i < amps.size(); i++) {
        v[static_cast<Eigen::Index>(i)] = complex_from_json(amps[i]);
    }
    PureState state(std::move(v));
    if (j.contains("n")) {
        require(j["n"].is_number_integer() && state.qubits() == j["n"].get<std::size_t>(), ErrorCode::InvalidArgument,
                "state record field 'n' does not match the amplitude count");
    }
    return state;
}

json states_to_json(const std::vector<PureState> &states) {
    json out = json::array();
    for (const auto &s : states) {
        out.push_back(state_to_json(s));
    }
    return out;
}

std::vector<PureState> states_from_json(const json &j) {
    require(j.is_array(), ErrorCode::InvalidArgument, "expected a JSON array of state records");
    std::vector<PureState> out;
    out.reserve(j.size());
    for (const auto &item : j) {
        out.push_back(state_from_json(item));
    }
    return out;
}

json matrix_to_json(std::size_t qubits, const Eigen::MatrixXcd &m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); r++) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); c++) {
            row.push_back(complex_to_json(m(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return {{"n", qubits}, {"matrix", std::move(rows)}};
}

Eigen::MatrixXcd matrix_from_json(const json &j, std::size_t &qubits) {
    require(j.is_object() && j.contains("n") && j["n"].is_number_integer() && j.contains("matrix") &&
                j["matrix"].is_array(),
            ErrorCode::InvalidArgument, "matrix file needs integer 'n' and array 'matrix'");
    qubits = j["n"].get<std::size_t>();
    require(qubits >= 1 && qubits < 16, ErrorCode::InvalidArgument, "matrix field 'n' out of range");
    const auto dim = Eigen::Index{1} << qubits;
    const auto &rows = j["matrix"];
    require(static_cast<Eigen::Index>(rows.size()) == dim, ErrorCode::DimensionMismatch,
            "matrix row count must be 2^n");
    Eigen::MatrixXcd m(dim, dim);
    for (Eigen::Index r = 0; r < dim; r++) {
        const auto &row = rows[static_cast<std::size_t>(r)];
        require(row.is_array() && static_cast<Eigen::Index>(row.size()) == dim, ErrorCode::DimensionMismatch,
                "matrix column count must be 2^n");
        for (Eigen::Index c = 0; c < dim; c++) {
            m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
        }
    }
    return m;
}

std::string records_to_csv(const std::vector<MeasurementRecord> &records) {
    std::string out = "projector_index,count\n";
    for (std::size_t i = 0; i < records.size(); i++) {
        out += std::to_string(i) + "," + std::to_string(records[i].count) + "\n";
    }
    return out;
}

std::vector<CountRow> counts_from_csv(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    require(static_cast<bool>(std::getline(in, line)), ErrorCode::Io, "records CSV is empty");
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    require(line == "projector_index,count", ErrorCode::Io, "records CSV header must be 'projector_index,count'");
    std::vector<CountRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        line_no++;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        auto comma = line.find(',');
        require(comma != std::string::npos, ErrorCode::Io, ("records CSV line " + std::to_string(line_no) + ": missing comma").c_str());
        try {
            std::size_t used = 0;
            const std::string idx_text = line.substr(0, comma);
            const std::string count_text = line.substr(comma + 1);
            require(idx_text.find('-') == std::string::npos && count_text.find('-') == std::string::npos,
                    ErrorCode::Io, "negative value");
            CountRow row{std::stoull(idx_text, &used), 0};
            require(used == idx_text.size(), ErrorCode::Io, "trailing characters");
            row.count = std::stoull(count_text, &used);
            require(used == count_text.size(), ErrorCode::Io, "trailing characters");
            rows.push_back(row);
        } catch (const std::exception &e) {
            fail(ErrorCode::Io, "records CSV line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return rows;
}

std::vector<MeasurementRecord> join_records(const std::vector<CountRow> &rows, const std::vector<PureState> &projectors) {
    std::vector<MeasurementRecord> out;
    out.reserve(rows.size());
    for (const auto &row : rows) {
        require(row.projector_index < projectors.size(), ErrorCode::InvalidArgument,
                "records CSV references a projector index missing from the sidecar");
        out.push_back({projectors[row.projector_index], row.count});
    }
    return out;
}

std::string read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), ErrorCode::Io, ("cannot open '" + path.string() + "' for reading").c_str());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path &path, const std::string &content) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    require(out.good(), ErrorCode::Io, ("cannot open '" + path.string() + "' for writing").c_str());
    out << content;
    require(out.good(), ErrorCode::Io, ("write to '" + path.string() + "' failed").c_str());
}

json read_json(const std::filesystem::path &path) {
    try {
        return json::parse(read_file(path));
    } catch (const json::parse_error &e) {
        fail(ErrorCode::Io, "'" + path.string() + "' is not valid JSON: " + e.what());
    }
}

void write_json(const std::filesystem::path &path, const json &j) {
    write_file(path, j.dump(2) + "\n");
}

}  // namespace shadowkit::io
