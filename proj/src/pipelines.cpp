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

#include "shadowkit/pipelines.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <boost/version.hpp>
#include <map>

#include "shadowkit/analysis.hpp"
#include "shadowkit/error.hpp"
#include "shadowkit/io.hpp"

namespace shadowkit {

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

enum class FieldKind { Uint, Real, Bool, Text, UintList };

struct FieldSpec {
    FieldKind kind;
    json fallback;
};

const std::map<std::string, FieldSpec> &field_table() {
    static const std::map<std::string, FieldSpec> table = {
        {"qubits", {FieldKind::Uint, 3}},
        {"projections", {FieldKind::Uint, 10000}},
        {"exposure", {FieldKind::Real, 3e5}},
        {"seed", {FieldKind::Uint, 0}},
        {"gouy_phase", {FieldKind::Real, 0.0}},
        {"observables", {FieldKind::Uint, 5000}},
        {"observable_kind", {FieldKind::Text, "haar"}},
        {"direct_noise", {FieldKind::Bool, false}},
        {"estimator", {FieldKind::Text, "shadow"}},
        {"grid", {FieldKind::UintList, json::array({50, 100, 251, 1000, 10000})}},
        {"k_grid", {FieldKind::UintList, nullptr}},
        {"repetitions", {FieldKind::Uint, 5}},
        {"count", {FieldKind::Uint, 1}},
        {"out", {FieldKind::Text, "states.json"}},
        {"records", {FieldKind::Text, "records.csv"}},
        {"projectors", {FieldKind::Text, "projectors.json"}},
        {"prepared", {FieldKind::Text, ""}},
    };
    return table;
}

const std::vector<std::string> kExperimentFields = {"qubits", "projections", "exposure", "seed", "gouy_phase"};

std::vector<std::string> fields_for(const std::string &command) {
    auto with = [](std::vector<std::string> extra) {
        std::vector<std::string> out = kExperimentFields;
        out.insert(out.end(), extra.begin(), extra.end());
        return out;
    };
    if (command == "stab-sample") {
        return {"qubits", "seed", "count", "out"};
    }
    if (command == "simulate") {
        return kExperimentFields;
    }
    if (command == "estimate") {
        return {"seed", "records", "projectors", "prepared", "estimator"};
    }
    if (command == "correlate") {
        return with({"observables", "observable_kind", "direct_noise"});
    }
    if (command == "bias") {
        return with({"observables", "direct_noise"});
    }
    if (command == "fidelity-curve") {
        return with({"grid", "estimator", "repetitions"});
    }
    if (command == "median-sweep") {
        return with({"observables", "k_grid"});
    }
    fail(ErrorCode::InvalidArgument, "unknown command '" + command + "'");
}

json default_k_grid() {
    json out = json::array();
    for (int k = 1; k <= 50; k++) {
        out.push_back(k);
    }
    return out;
}

void check_field(const std::string &name, FieldKind kind, const json &value) {
    auto bad = [&](const char *what) {
        fail(ErrorCode::InvalidArgument, "config field '" + name + "' must be " + what);
    };
    switch (kind) {
        case FieldKind::Uint:
            if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<std::int64_t>() >= 0)) {
                bad("a non-negative integer");
            }
            break;
        case FieldKind::Real:
            if (!value.is_number()) {
                bad("a number");
            }
            break;
        case FieldKind::Bool:
            if (!value.is_boolean()) {
                bad("a boolean");
            }
            break;
        case FieldKind::Text:
            if (!value.is_string()) {
                bad("a string");
            }
            break;
        case FieldKind::UintList:
            if (!value.is_array() || value.empty()) {
                bad("a nonempty array of positive integers");
            }
            for (const auto &v : value) {
                if (!(v.is_number_unsigned() || v.is_number_integer()) || v.get<std::int64_t>() < 1) {
                    bad("a nonempty array of positive integers");
                }
            }
            break;
    }
}

ExperimentConfig experiment_from(const json &c) {
    ExperimentConfig config;
    config.qubits = c.at("qubits").get<std::size_t>();
    config.projections = c.at("projections").get<std::size_t>();
    config.exposure = c.at("exposure").get<double>();
    config.seed = c.at("seed").get<std::uint64_t>();
    config.gouy_phase = c.at("gouy_phase").get<double>();
    config.validate();
    return config;
}

std::vector<std::size_t> uint_list(const json &j) {
    std::vector<std::size_t> out;
    for (const auto &v : j) {
        out.push_back(v.get<std::size_t>());
    }
    return out;
}

json report_json(const CorrelationReport &r) {
    return {{"pearson_r", r.pearson_r},
            {"beta", r.beta},
            {"beta_stderr", r.beta_stderr},
            {"point_count", r.point_count}};
}

std::string points_csv(const CorrelationReport &r) {
    std::string out = "index,o_meas,o_est\n";
    for (std::size_t i = 0; i < r.points.size(); i++) {
        out += std::to_string(i) + "," + io::format_double(r.points[i].o_meas) + "," +
               io::format_double(r.points[i].o_est) + "\n";
    }
    return out;
}

class Outputs {
   public:
    explicit Outputs(fs::path dir) : dir_(std::move(dir)) {
    }
    void text(const std::string &name, const std::string &content) {
        io::write_file(dir_ / name, content);
        names_.push_back(name);
    }
    void json_file(const std::string &name, const json &j) {
        io::write_json(dir_ / name, j);
        names_.push_back(name);
    }
    const fs::path &dir() const {
        return dir_;
    }
    const std::vector<std::string> &names() const {
        return names_;
    }

   private:
    fs::path dir_;
    std::vector<std::string> names_;
};

void run_stab_sample(const json &c, Outputs &out) {
    const auto n = c.at("qubits").get<std::size_t>();
    require(n >= 1 && n <= 12, ErrorCode::InvalidArgument, "config field 'qubits' must be in [1, 12]");
    const auto count = c.at("count").get<std::size_t>();
    require(count >= 1, ErrorCode::InvalidArgument, "config field 'count' must be >= 1");
    const auto name = c.at("out").get<std::string>();
    require(!name.empty(), ErrorCode::InvalidArgument, "config field 'out' must be a file name");
    RandomSource rng(c.at("seed").get<std::uint64_t>());
    std::vector<PureState> states;
    states.reserve(count);
    for (std::size_t i = 0; i < count; i++) {
        states.push_back(sample_stabilizer_state(n, rng));
    }
    out.json_file(name, io::states_to_json(states));
}

void run_simulate(const json &c, Outputs &out) {
    const ExperimentConfig config = experiment_from(c);
    SimulatedExperiment exp = simulate_experiment(config);
    std::vector<PureState> projectors;
    std::uint64_t total = 0;
    projectors.reserve(exp.records.size());
    for (const auto &r : exp.records) {
        projectors.push_back(r.projector);
        total += r.count;
    }
    out.text("records.csv", io::records_to_csv(exp.records));
    out.json_file("projectors.json", io::states_to_json(projectors));
    out.json_file("states.json", {{"prepared", io::state_to_json(exp.prepared)}, {"truth", io::state_to_json(exp.truth)}});
    out.json_file("report.json", {{"dimension", config.dim()},
                                  {"projections", exp.records.size()},
                                  {"total_counts", total},
                                  {"gouy_phase", config.gouy_phase}});
}

void run_estimate(const json &c, Outputs &out) {
    const auto projectors = io::states_from_json(io::read_json(c.at("projectors").get<std::string>()));
    require(!projectors.empty(), ErrorCode::InvalidArgument, "config field 'projectors' names an empty file");
    const auto rows = io::counts_from_csv(io::read_file(c.at("records").get<std::string>()));
    const auto records = io::join_records(rows, projectors);
    require(!records.empty(), ErrorCode::InvalidArgument, "config field 'records' names a file without rows");
    const std::size_t qubits = projectors.front().qubits();
    const EstimatorKind estimator = parse_estimator_kind(c.at("estimator").get<std::string>());

    Eigen::MatrixXcd estimate;
    json report = {{"estimator", to_string(estimator)}, {"records", records.size()}};
    switch (estimator) {
        case EstimatorKind::Shadow:
            estimate = build_shadow(records, qubits).matrix();
            break;
        case EstimatorKind::ShadowProjected:
            estimate = project_shadow_psd(build_shadow(records, qubits)).matrix();
            break;
        case EstimatorKind::Mle: {
            MLEResult mle = mle_estimate_detailed(records, qubits);
            estimate = mle.estimate.matrix();
            report["iterations"] = mle.iterations;
            report["converged"] = mle.converged;
            break;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(estimate, Eigen::EigenvaluesOnly);
    report["trace"] = estimate.trace().real();
    report["min_eigenvalue"] = eig.eigenvalues().minCoeff();
    out.json_file("estimate.json", io::matrix_to_json(qubits, estimate));

    const auto prepared_path = c.at("prepared").get<std::string>();
    if (!prepared_path.empty()) {
        json doc = io::read_json(prepared_path);
        const PureState prepared = io::state_from_json(doc.is_object() && doc.contains("prepared") ? doc["prepared"] : doc);
        require(prepared.dim() == static_cast<std::size_t>(estimate.rows()), ErrorCode::DimensionMismatch,
                "config field 'prepared' has the wrong dimension");
        const HGModeBasis basis(prepared.dim());
        const GouyFidelityCurve curve(estimate, prepared, basis);
        const FidelityResult best = curve.maximize();
        report["fidelity"] = fidelity(estimate, prepared);
        report["compensated_fidelity"] = best.fidelity;
        report["compensating_phase"] = best.phase;
        std::string csv = "phi,fidelity\n";
        for (const auto &[phi, f] : curve.sample()) {
            csv += io::format_double(phi) + "," + io::format_double(f) + "\n";
        }
        out.text("gouy.csv", csv);
    }
    out.json_file("report.json", report);
}

void run_correlate(const json &c, Outputs &out) {
    const ExperimentConfig config = experiment_from(c);
    const ObservableKind kind = parse_observable_kind(c.at("observable_kind").get<std::string>());
    const CorrelationReport r = run_correlation_study(config, c.at("observables").get<std::size_t>(), kind,
                                                      {c.at("direct_noise").get<bool>()});
    out.text("points.csv", points_csv(r));
    json report = report_json(r);
    report["dimension"] = config.dim();
    report["observable_kind"] = to_string(kind);
    out.json_file("report.json", report);
}

void run_bias(const json &c, Outputs &out) {
    const ExperimentConfig config = experiment_from(c);
    const BiasReport r =
        run_bias_study(config, c.at("observables").get<std::size_t>(), {}, {c.at("direct_noise").get<bool>()});
    out.text("points_shadow.csv", points_csv(r.shadow));
    out.text("points_mle.csv", points_csv(r.mle));
    out.json_file("report.json",
                  {{"dimension", config.dim()}, {"shadow", report_json(r.shadow)}, {"mle", report_json(r.mle)}});
}

void run_fidelity_curve(const json &c, Outputs &out) {
    const ExperimentConfig config = experiment_from(c);
    const auto grid = uint_list(c.at("grid"));
    const EstimatorKind estimator = parse_estimator_kind(c.at("estimator").get<std::string>());
    const FidelityCurve curve = run_fidelity_vs_p(config, grid, estimator, c.at("repetitions").get<std::size_t>());
    std::string csv = "P,mean_F,stderr_F\n";
    for (std::size_t i = 0; i < grid.size(); i++) {
        csv += std::to_string(curve.projection_counts[i]) + "," + io::format_double(curve.fidelity_mean[i]) + "," +
               io::format_double(curve.fidelity_stderr[i]) + "\n";
    }
    out.text("curve.csv", csv);
    out.json_file("report.json", {{"dimension", curve.dimension},
                                  {"estimator", to_string(curve.estimator)},
                                  {"projection_counts", curve.projection_counts},
                                  {"fidelity_mean", curve.fidelity_mean},
                                  {"fidelity_stderr", curve.fidelity_stderr},
                                  {"samples", curve.samples},
                                  {"truth", curve.truth},
                                  {"phase", curve.phase}});
}

void run_median_sweep_command(const json &c, Outputs &out) {
    const ExperimentConfig config = experiment_from(c);
    const auto k_grid = uint_list(c.at("k_grid"));
    const auto sweep = run_median_sweep(config, k_grid, c.at("observables").get<std::size_t>());
    std::string csv = "K,pearson_r\n";
    json points = json::array();
    for (const auto &p : sweep) {
        csv += std::to_string(p.batches) + "," + io::format_double(p.pearson_r) + "\n";
        points.push_back({{"K", p.batches}, {"pearson_r", p.pearson_r}});
    }
    out.text("sweep.csv", csv);
    out.json_file("report.json", {{"dimension", config.dim()}, {"points", points}});
}

}  // namespace

const std::vector<std::string> &command_names() {
    static const std::vector<std::string> names = {"stab-sample", "simulate",       "estimate",    "correlate",
                                                   "bias",        "fidelity-curve", "median-sweep"};
    return names;
}

json resolve_config(const std::string &command, const json &config) {
    require(config.is_object() || config.is_null(), ErrorCode::InvalidArgument, "config must be a JSON object");
    const auto fields = fields_for(command);
    if (config.is_object()) {
        for (const auto &[key, value] : config.items()) {
            if (std::find(fields.begin(), fields.end(), key) == fields.end()) {
                fail(ErrorCode::InvalidArgument,
                     "config field '" + key + "' is not recognised by command '" + command + "'");
            }
        }
    }
    json resolved = json::object();
    for (const auto &name : fields) {
        const FieldSpec &spec = field_table().at(name);
        if (config.is_object() && config.contains(name)) {
            check_field(name, spec.kind, config[name]);
            resolved[name] = config[name];
        } else if (name == "k_grid") {
            resolved[name] = default_k_grid();
        } else {
            resolved[name] = spec.fallback;
        }
    }
    return resolved;
}

json config_from_document(const std::string &command, const json &document) {
    if (document.is_object() && document.contains("config") && document.contains("command")) {
        require(document["command"].is_string() && document["command"].get<std::string>() == command,
                ErrorCode::InvalidArgument, "manifest field 'command' does not match the requested command");
        return document["config"];
    }
    return document;
}

json run_command(const std::string &command, const json &config, const fs::path &out_dir) {
    const json resolved = resolve_config(command, config);
    Outputs out(out_dir);
    if (command == "stab-sample") {
        run_stab_sample(resolved, out);
    } else if (command == "simulate") {
        run_simulate(resolved, out);
    } else if (command == "estimate") {
        run_estimate(resolved, out);
    } else if (command == "correlate") {
        run_correlate(resolved, out);
    } else if (command == "bias") {
        run_bias(resolved, out);
    } else if (command == "fidelity-curve") {
        run_fidelity_curve(resolved, out);
    } else {
        run_median_sweep_command(resolved, out);
    }
    json manifest = {
        {"command", command},
        {"config", resolved},
        {"config_hash", io::config_hash(resolved)},
        {"seed", resolved.at("seed")},
        {"outputs", out.names()},
        {"versions",
         {{"shadowkit", SHADOWKIT_VERSION},
          {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                        std::to_string(EIGEN_MINOR_VERSION)},
          {"boost", BOOST_LIB_VERSION}}},
    };
    io::write_json(out_dir / "manifest.json", manifest);
    return manifest;
}

}  // namespace shadowkit
