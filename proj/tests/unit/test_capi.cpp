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

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "shadowkit/shadowkit.h"

TEST_CASE("version and error slot") {
    CHECK(std::strlen(sk_version()) > 0);
    CHECK(sk_rng_create(1, nullptr) == SK_ERR_NULL_POINTER);
    CHECK(std::string(sk_last_error()).find("out") != std::string::npos);
}

TEST_CASE("stabilizer count as decimal text") {
    size_t needed = 0;
    CHECK(sk_stabilizer_count(5, nullptr, 0, &needed) == SK_ERR_BUFFER_TOO_SMALL);
    CHECK(needed == 8);
    char buffer[64];
    REQUIRE(sk_stabilizer_count(5, buffer, sizeof(buffer), &needed) == SK_OK);
    CHECK(std::string(buffer) == "2423520");
    CHECK(sk_stabilizer_count(64, buffer, sizeof(buffer), &needed) == SK_ERR_BUFFER_TOO_SMALL);
    std::vector<char> big(needed);
    REQUIRE(sk_stabilizer_count(64, big.data(), big.size(), nullptr) == SK_OK);
    CHECK(std::strlen(big.data()) + 1 == needed);
    CHECK(sk_stabilizer_count(0, buffer, sizeof(buffer), nullptr) == SK_ERR_INVALID_ARGUMENT);
}

TEST_CASE("sampling and reading amplitudes") {
    sk_rng *rng = nullptr;
    REQUIRE(sk_rng_create(42, &rng) == SK_OK);
    sk_state *state = nullptr;
    REQUIRE(sk_stabilizer_sample(rng, 3, &state) == SK_OK);
    CHECK(sk_state_dim(state) == 8);
    std::vector<double> amps(16);
    CHECK(sk_state_amplitudes(state, amps.data(), 4) == SK_ERR_BUFFER_TOO_SMALL);
    REQUIRE(sk_state_amplitudes(state, amps.data(), amps.size()) == SK_OK);
    double norm = 0.0;
    for (double a : amps) {
        norm += a * a;
    }
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sk_stabilizer_sample(rng, 13, &state) == SK_ERR_INVALID_ARGUMENT);
    sk_state_destroy(state);

    sk_state *haar = nullptr;
    REQUIRE(sk_haar_state(rng, 4, &haar) == SK_OK);
    CHECK(sk_state_dim(haar) == 4);
    sk_state_destroy(haar);
    sk_rng_destroy(rng);
}

TEST_CASE("shadow through the C interface") {
    const double zero[4] = {1.0, 0.0, 0.0, 0.0};
    const double bad[4] = {1.0, 0.0, 1.0, 0.0};
    sk_state *z = nullptr;
    sk_state *b = nullptr;
    REQUIRE(sk_state_create(zero, 2, &z) == SK_OK);
    CHECK(sk_state_create(bad, 2, &b) == SK_ERR_INVALID_ARGUMENT);

    const sk_state *projectors[1] = {z};
    const uint64_t counts[1] = {9};
    sk_shadow *shadow = nullptr;
    REQUIRE(sk_shadow_build(projectors, counts, 1, 1, &shadow) == SK_OK);
    CHECK(sk_shadow_dim(shadow) == 2);
    double m[8];
    REQUIRE(sk_shadow_matrix(shadow, m, 8) == SK_OK);
    CHECK(m[0] == doctest::Approx(2.0));
    CHECK(m[6] == doctest::Approx(-1.0));
    double value = 0.0;
    REQUIRE(sk_shadow_expectation(shadow, z, &value) == SK_OK);
    CHECK(value == doctest::Approx(2.0));
    double f = 0.0, phase = -1.0;
    REQUIRE(sk_shadow_compensated_fidelity(shadow, z, &f, &phase) == SK_OK);
    CHECK(f == doctest::Approx(2.0));
    CHECK(phase >= 0.0);

    const uint64_t none[1] = {0};
    sk_shadow *empty = nullptr;
    CHECK(sk_shadow_build(projectors, none, 1, 1, &empty) == SK_ERR_INVALID_ARGUMENT);
    CHECK(sk_shadow_build(projectors, counts, 1, 2, &empty) == SK_ERR_DIMENSION_MISMATCH);
    sk_shadow_destroy(shadow);
    sk_state_destroy(z);
}

TEST_CASE("batch count") {
    size_t k = 0;
    REQUIRE(sk_batch_count(5000, 0.01, &k) == SK_OK);
    CHECK(k == 28);
    CHECK(sk_batch_count(5000, 1.5, &k) == SK_ERR_INVALID_ARGUMENT);
}

TEST_CASE("running a command") {
    const auto dir = std::filesystem::temp_directory_path() / "shadowkit_capi_run";
    std::filesystem::remove_all(dir);
    char *manifest = nullptr;
    REQUIRE(sk_run_command("simulate", R"({"qubits": 1, "projections": 20})", dir.c_str(), &manifest) == SK_OK);
    CHECK(std::string(manifest).find("\"command\": \"simulate\"") != std::string::npos);
    sk_string_free(manifest);
    CHECK(std::filesystem::exists(dir / "records.csv"));

    CHECK(sk_run_command("simulate", R"({"exposure": -2})", dir.c_str(), nullptr) == SK_ERR_INVALID_ARGUMENT);
    CHECK(std::string(sk_last_error()).find("exposure") != std::string::npos);
    CHECK(sk_run_command("simulate", "{not json", dir.c_str(), nullptr) == SK_ERR_INVALID_ARGUMENT);
    CHECK(sk_run_command(nullptr, "{}", dir.c_str(), nullptr) == SK_ERR_NULL_POINTER);
}
