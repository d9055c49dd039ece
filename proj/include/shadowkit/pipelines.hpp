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

// Command runners behind the CLI. Each command takes a JSON config, fills in
// defaults, validates every field, writes its outputs into a directory and
// returns the run manifest (also written as manifest.json).
//
// Output files per command:
//   stab-sample     states.json (or config "out")
//   simulate        records.csv, projectors.json, states.json, report.json
//   estimate        estimate.json, report.json, gouy.csv (phi,fidelity) when "prepared" is set
//   correlate       points.csv (index,o_meas,o_est), report.json
//   bias            points_shadow.csv, points_mle.csv, report.json
//   fidelity-curve  curve.csv (P,mean_F,stderr_F), report.json
//   median-sweep    sweep.csv (K,pearson_r), report.json

#ifndef SHADOWKIT_PIPELINES_HPP
#define SHADOWKIT_PIPELINES_HPP

#include <filesystem>
#include <json.hpp>
#include <string>
#include <vector>

namespace shadowkit {

const std::vector<std::string> &command_names();

/// Config with defaults applied. Throws InvalidArgument naming the first bad
/// or unknown field.
nlohmann::json resolve_config(const std::string &command, const nlohmann::json &config);

/// Accepts either a plain config or a previously written manifest, in which
/// case its "config" is used and its "command" must match.
nlohmann::json config_from_document(const std::string &command, const nlohmann::json &document);

nlohmann::json run_command(const std::string &command, const nlohmann::json &config,
                           const std::filesystem::path &out_dir);

}  // namespace shadowkit

#endif
