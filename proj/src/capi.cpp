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

#include "shadowkit/shadowkit.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "shadowkit/baselines.hpp"
#include "shadowkit/error.hpp"
#include "shadowkit/pipelines.hpp"
#include "shadowkit/shadow.hpp"
#include "shadowkit/sim.hpp"
#include "shadowkit/stabilizer.hpp"

struct sk_rng {
    shadowkit::RandomSource source;
};

struct sk_state {
    shadowkit::PureState state;
};

struct sk_shadow {
    shadowkit::ClassicalShadow shadow;
};

namespace {

thread_local std::string last_error;

sk_status status_for(shadowkit::ErrorCode code) {
    switch (code) {
        case shadowkit::ErrorCode::InvalidArgument:
            return SK_ERR_INVALID_ARGUMENT;
        case shadowkit::ErrorCode::DimensionMismatch:
            return SK_ERR_DIMENSION_MISMATCH;
        case shadowkit::ErrorCode::Numerical:
            return SK_ERR_NUMERICAL;
        case shadowkit::ErrorCode::Io:
            return SK_ERR_IO;
        case shadowkit::ErrorCode::Internal:
            return SK_ERR_INTERNAL;
    }
    return SK_ERR_INTERNAL;
}

sk_status set_error(sk_status status, const char *message) {
    last_error = message;
    return status;
}

template <typename Body>
sk_status guarded(Body &&body) {
    last_error.clear();
    try {
        body();
        return SK_OK;
    } catch (const shadowkit::Error &e) {
        return set_error(status_for(e.code()), e.what());
    } catch (const std::bad_alloc &) {
        return set_error(SK_ERR_INTERNAL, "out of memory");
    } catch (const std::exception &e) {
        return set_error(SK_ERR_INTERNAL, e.what());
    }
}

sk_status null_pointer(const char *name) {
    return set_error(SK_ERR_NULL_POINTER, (std::string(name) + " is NULL").c_str());
}

void write_complex(const Eigen::Ref<const Eigen::VectorXcd> &v, double *out) {
    for (Eigen::Index i = 0; i < v.size(); i++) {
        out[2 * i] = v[i].real();
        out[2 * i + 1] = v[i].imag();
    }
}

}  // namespace

extern "C" {

const char *sk_version(void) {
    return SHADOWKIT_VERSION;
}

const char *sk_last_error(void) {
    return last_error.c_str();
}

sk_status sk_rng_create(uint64_t seed, sk_rng **out) {
    if (out == nullptr) {
        return null_pointer("out");
    }
    return guarded([&] { *out = new sk_rng{shadowkit::RandomSource(seed)}; });
}

void sk_rng_destroy(sk_rng *rng) {
    delete rng;
}

sk_status sk_stabilizer_count(uint32_t qubits, char *buffer, size_t buffer_len, size_t *needed) {
    std::string text;
    const sk_status status = guarded([&] { text = shadowkit::total_cardinality(qubits).str(); });
    if (status != SK_OK) {
        return status;
    }
    if (needed != nullptr) {
        *needed = text.size() + 1;
    }
    if (buffer == nullptr || buffer_len < text.size() + 1) {
        return set_error(SK_ERR_BUFFER_TOO_SMALL, "buffer too small for the decimal count");
    }
    std::memcpy(buffer, text.c_str(), text.size() + 1);
    return SK_OK;
}

sk_status sk_stabilizer_sample(sk_rng *rng, uint32_t qubits, sk_state **out) {
    if (rng == nullptr || out == nullptr) {
        return null_pointer(rng == nullptr ? "rng" : "out");
    }
    return guarded([&] { *out = new sk_state{shadowkit::sample_stabilizer_state(qubits, rng->source)}; });
}

sk_status sk_haar_state(sk_rng *rng, size_t dim, sk_state **out) {
    if (rng == nullptr || out == nullptr) {
        return null_pointer(rng == nullptr ? "rng" : "out");
    }
    return guarded([&] { *out = new sk_state{shadowkit::haar_random_state(dim, rng->source)}; });
}

sk_status sk_state_create(const double *amplitudes, size_t dim, sk_state **out) {
    if (amplitudes == nullptr || out == nullptr) {
        return null_pointer(amplitudes == nullptr ? "amplitudes" : "out");
    }
    return guarded([&] {
        Eigen::VectorXcd v(static_cast<Eigen::Index>(dim));
        for (size_t i = 0; i < dim; i++) {
            v[static_cast<Eigen::Index>(i)] = {amplitudes[2 * i], amplitudes[2 * i + 1]};
        }
        *out = new sk_state{shadowkit::PureState(std::move(v))};
    });
}

size_t sk_state_dim(const sk_state *state) {
    return state == nullptr ? 0 : state->state.dim();
}

sk_status sk_state_amplitudes(const sk_state *state, double *out, size_t out_len) {
    if (state == nullptr || out == nullptr) {
        return null_pointer(state == nullptr ? "state" : "out");
    }
    if (out_len < 2 * state->state.dim()) {
        return set_error(SK_ERR_BUFFER_TOO_SMALL, "output buffer needs 2 * dim doubles");
    }
    write_complex(state->state.amplitudes(), out);
    last_error.clear();
    return SK_OK;
}

void sk_state_destroy(sk_state *state) {
    delete state;
}

sk_status sk_shadow_build(const sk_state *const *projectors, const uint64_t *counts, size_t record_count,
                          uint32_t qubits, sk_shadow **out) {
    if (out == nullptr || (record_count > 0 && (projectors == nullptr || counts == nullptr))) {
        return null_pointer(out == nullptr ? "out" : (projectors == nullptr ? "projectors" : "counts"));
    }
    return guarded([&] {
        std::vector<shadowkit::MeasurementRecord> records;
        records.reserve(record_count);
        for (size_t i = 0; i < record_count; i++) {
            if (projectors[i] == nullptr) {
                throw shadowkit::Error(shadowkit::ErrorCode::InvalidArgument,
                                       "projector " + std::to_string(i) + " is NULL");
            }
            records.push_back({projectors[i]->state, counts[i]});
        }
        *out = new sk_shadow{shadowkit::build_shadow(records, qubits)};
    });
}

size_t sk_shadow_dim(const sk_shadow *shadow) {
    return shadow == nullptr ? 0 : shadow->shadow.dim();
}

sk_status sk_shadow_matrix(const sk_shadow *shadow, double *out, size_t out_len) {
    if (shadow == nullptr || out == nullptr) {
        return null_pointer(shadow == nullptr ? "shadow" : "out");
    }
    const size_t dim = shadow->shadow.dim();
    if (out_len < 2 * dim * dim) {
        return set_error(SK_ERR_BUFFER_TOO_SMALL, "output buffer needs 2 * dim * dim doubles");
    }
    const Eigen::MatrixXcd &m = shadow->shadow.matrix();
    for (size_t r = 0; r < dim; r++) {
        write_complex(m.row(static_cast<Eigen::Index>(r)).transpose(), out + 2 * r * dim);
    }
    last_error.clear();
    return SK_OK;
}

sk_status sk_shadow_expectation(const sk_shadow *shadow, const sk_state *phi, double *out) {
    if (shadow == nullptr || phi == nullptr || out == nullptr) {
        return null_pointer(shadow == nullptr ? "shadow" : (phi == nullptr ? "phi" : "out"));
    }
    return guarded([&] {
        *out = shadowkit::estimate_expectation(shadow->shadow, shadowkit::Observable::projector(phi->state));
    });
}

sk_status sk_shadow_compensated_fidelity(const sk_shadow *shadow, const sk_state *prepared, double *fidelity,
                                         double *phase) {
    if (shadow == nullptr || prepared == nullptr) {
        return null_pointer(shadow == nullptr ? "shadow" : "prepared");
    }
    return guarded([&] {
        const shadowkit::HGModeBasis basis(prepared->state.dim());
        const auto result = shadowkit::compensated_fidelity(shadow->shadow, prepared->state, basis);
        if (fidelity != nullptr) {
            *fidelity = result.fidelity;
        }
        if (phase != nullptr) {
            *phase = result.phase;
        }
    });
}

void sk_shadow_destroy(sk_shadow *shadow) {
    delete shadow;
}

sk_status sk_batch_count(size_t observables, double delta, size_t *out) {
    if (out == nullptr) {
        return null_pointer("out");
    }
    return guarded([&] { *out = shadowkit::batch_count(observables, delta); });
}

sk_status sk_run_command(const char *command, const char *config_json, const char *out_dir, char **manifest_json) {
    if (command == nullptr || out_dir == nullptr) {
        return null_pointer(command == nullptr ? "command" : "out_dir");
    }
    return guarded([&] {
        nlohmann::json document = nlohmann::json::object();
        if (config_json != nullptr && *config_json != '\0') {
            try {
                document = nlohmann::json::parse(config_json);
            } catch (const nlohmann::json::parse_error &e) {
                throw shadowkit::Error(shadowkit::ErrorCode::InvalidArgument,
                                       std::string("config is not valid JSON: ") + e.what());
            }
        }
        const auto config = shadowkit::config_from_document(command, document);
        const auto manifest = shadowkit::run_command(command, config, out_dir);
        if (manifest_json != nullptr) {
            const std::string text = manifest.dump(2);
            char *copy = static_cast<char *>(std::malloc(text.size() + 1));
            if (copy == nullptr) {
                throw std::bad_alloc();
            }
            std::memcpy(copy, text.c_str(), text.size() + 1);
            *manifest_json = copy;
        }
    });
}

void sk_string_free(char *s) {
    std::free(s);
}

}  // extern "C"
