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

// shadowkit command-line driver. Flags override values from --config; the
// merged object is handed to the library through the C interface.

#include <CLI11.hpp>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "shadowkit/shadowkit.h"

namespace {

using json = nlohmann::json;

struct Flags {
    std::string config_path;
    std::string out;
    std::optional<std::uint64_t> qubits, projections, seed, observables, repetitions, count;
    std::optional<double> exposure, gouy_phase;
    std::optional<std::string> estimator, observable_kind, grid, k_grid, records, projectors, prepared;
    bool direct_noise = false;
};

struct Command {
    std::string name;
    CLI::App *app;
    Flags flags;
};

enum Option : unsigned {
    kQubits = 1u << 0,
    kProjections = 1u << 1,
    kExposure = 1u << 2,
    kSeed = 1u << 3,
    kGouy = 1u << 4,
    kObservables = 1u << 5,
    kObservableKind = 1u << 6,
    kDirectNoise = 1u << 7,
    kEstimator = 1u << 8,
    kGrid = 1u << 9,
    kKGrid = 1u << 10,
    kRepetitions = 1u << 11,
    kCount = 1u << 12,
    kInputs = 1u << 13,
};

constexpr unsigned kExperiment = kQubits | kProjections | kExposure | kSeed | kGouy;

void add_options(CLI::App *app, Flags &f, unsigned which, const std::string &out_help) {
    app->add_option("--config", f.config_path, "JSON config or manifest from an earlier run");
    app->add_option("--out", f.out, out_help);
    if (which & kQubits) {
        app->add_option("--qubits", f.qubits, "number of qubits n (D = 2^n)");
    }
    if (which & kProjections) {
        app->add_option("--projections", f.projections, "number of stabilizer projectors P");
    }
    if (which & kExposure) {
        app->add_option("--exposure", f.exposure, "mean photon count at unit probability");
    }
    if (which & kSeed) {
        app->add_option("--seed", f.seed, "master seed");
    }
    if (which & kGouy) {
        app->add_option("--gouy-phase", f.gouy_phase, "Gouy phase applied to the prepared state (rad)");
    }
    if (which & kObservables) {
        app->add_option("--observables", f.observables, "number of rank-one observables");
    }
    if (which & kObservableKind) {
        app->add_option("--observable-kind", f.observable_kind, "haar or uniform_overlap");
    }
    if (which & kDirectNoise) {
        app->add_flag("--direct-noise", f.direct_noise, "Poisson noise on the directly measured values");
    }
    if (which & kEstimator) {
        app->add_option("--estimator", f.estimator, "shadow, shadow_projected or mle");
    }
    if (which & kGrid) {
        app->add_option("--grid", f.grid, "comma-separated projection counts, ascending");
    }
    if (which & kKGrid) {
        app->add_option("--k-grid", f.k_grid, "comma-separated batch counts");
    }
    if (which & kRepetitions) {
        app->add_option("--repetitions", f.repetitions, "true states per curve point");
    }
    if (which & kCount) {
        app->add_option("--count", f.count, "number of states to sample");
    }
    if (which & kInputs) {
        app->add_option("--records", f.records, "records CSV (projector_index,count)");
        app->add_option("--projectors", f.projectors, "projector states JSON");
        app->add_option("--prepared", f.prepared, "prepared state JSON; enables Gouy-compensated fidelity");
    }
}

json parse_list(const std::string &field, const std::string &text) {
    json out = json::array();
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const long long v = std::stoll(item, &used);
            if (used != item.size() || v < 1) {
                throw std::invalid_argument(item);
            }
            out.push_back(static_cast<std::uint64_t>(v));
        } catch (const std::exception &) {
            throw CLI::ValidationError("--" + field, "expected comma-separated positive integers, got '" + text + "'");
        }
    }
    return out;
}

json read_document(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open config '" + path + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw std::runtime_error("config '" + path + "' is not valid JSON: " + e.what());
    }
}

json build_config(const std::string &command, const Flags &f) {
    json doc = f.config_path.empty() ? json::object() : read_document(f.config_path);
    json config = doc;
    if (doc.is_object() && doc.contains("command") && doc.contains("config")) {
        if (doc["command"] != command) {
            throw std::runtime_error("manifest '" + f.config_path + "' was written by '" +
                                     doc["command"].get<std::string>() + "', not '" + command + "'");
        }
        config = doc["config"];
    }
    if (!config.is_object()) {
        throw std::runtime_error("config must be a JSON object");
    }
    auto put = [&](const char *key, const auto &opt) {
        if (opt) {
            config[key] = *opt;
        }
    };
    put("qubits", f.qubits);
    put("projections", f.projections);
    put("exposure", f.exposure);
    put("seed", f.seed);
    put("gouy_phase", f.gouy_phase);
    put("observables", f.observables);
    put("observable_kind", f.observable_kind);
    put("estimator", f.estimator);
    put("repetitions", f.repetitions);
    put("count", f.count);
    put("records", f.records);
    put("projectors", f.projectors);
    put("prepared", f.prepared);
    if (f.direct_noise) {
        config["direct_noise"] = true;
    }
    if (f.grid) {
        config["grid"] = parse_list("grid", *f.grid);
    }
    if (f.k_grid) {
        config["k_grid"] = parse_list("k-grid", *f.k_grid);
    }
    return config;
}

int run(const std::string &command, const Flags &f) {
    json config = build_config(command, f);
    std::filesystem::path out_dir = f.out.empty() ? std::filesystem::path(".") : std::filesystem::path(f.out);
    if (command == "stab-sample" && !f.out.empty()) {
        const std::filesystem::path file(f.out);
        out_dir = file.has_parent_path() ? file.parent_path() : std::filesystem::path(".");
        config["out"] = file.filename().string();
    }
    char *manifest = nullptr;
    const sk_status status = sk_run_command(command.c_str(), config.dump().c_str(), out_dir.string().c_str(), &manifest);
    if (status != SK_OK) {
        std::cerr << "shadowkit " << command << ": error: " << sk_last_error() << "\n";
        return static_cast<int>(status);
    }
    const json m = json::parse(manifest);
    sk_string_free(manifest);
    for (const auto &name : m["outputs"]) {
        std::cout << (out_dir / name.get<std::string>()).string() << "\n";
    }
    std::cout << (out_dir / "manifest.json").string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"shadowkit: classical-shadow estimation on simulated stabilizer measurements"};
    app.set_version_flag("--version", std::string(sk_version()));
    app.require_subcommand(1);

    const std::string dir_help = "output directory (default: current directory)";
    std::vector<Command> commands;
    commands.reserve(7);
    auto add = [&](const std::string &name, const std::string &description, unsigned which,
                   const std::string &out_help) {
        commands.push_back({name, app.add_subcommand(name, description), {}});
        add_options(commands.back().app, commands.back().flags, which, out_help);
    };
    add("stab-sample", "sample uniform random stabilizer states", kQubits | kSeed | kCount,
        "output JSON file (default: ./states.json)");
    add("simulate", "simulate a stabilizer measurement run", kExperiment, dir_help);
    add("estimate", "reconstruct a state from recorded counts", kSeed | kEstimator | kInputs, dir_help);
    add("correlate", "shadow predictions versus direct values", kExperiment | kObservables | kObservableKind | kDirectNoise,
        dir_help);
    add("bias", "shadow and MLE predictions for uniform-overlap observables",
        kExperiment | kObservables | kDirectNoise, dir_help);
    add("fidelity-curve", "compensated fidelity versus number of projectors",
        kExperiment | kEstimator | kGrid | kRepetitions, dir_help);
    add("median-sweep", "correlation versus number of median-of-means batches", kExperiment | kObservables | kKGrid,
        dir_help);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e);
    }
    try {
        for (const auto &c : commands) {
            if (c.app->parsed()) {
                return run(c.name, c.flags);
            }
        }
    } catch (const CLI::ParseError &e) {
        return app.exit(e);
    } catch (const std::exception &e) {
        std::cerr << "shadowkit: error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
