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

#ifndef SHADOWKIT_SHADOW_HPP
#define SHADOWKIT_SHADOW_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "shadowkit/stabilizer.hpp"

namespace shadowkit {

/// One chosen stabilizer projector and the number of photons detected on it.
struct MeasurementRecord {
    PureState projector;
    std::uint64_t count = 0;
};

/// Hermitian, trace-one estimate of a density matrix. Generally not positive
/// semidefinite.
class ClassicalShadow {
   public:
    /// Throws unless `matrix` is square, 2^qubits wide and Hermitian to 1e-12.
    ClassicalShadow(std::size_t qubits, Eigen::MatrixXcd matrix);

    std::size_t qubits() const {
        return qubits_;
    }
    std::size_t dim() const {
        return static_cast<std::size_t>(matrix_.rows());
    }
    const Eigen::MatrixXcd &matrix() const {
        return matrix_;
    }

   private:
    std::size_t qubits_;
    Eigen::MatrixXcd matrix_;
};

/// Hermitian observable. Rank-one projectors keep only their vector.
class Observable {
   public:
    /// Throws unless `matrix` is square and Hermitian to 1e-12.
    static Observable from_matrix(Eigen::MatrixXcd matrix);
    /// O = |phi><phi|
    static Observable projector(PureState phi);

    std::size_t dim() const;
    bool is_projector() const {
        return vector_.has_value();
    }
    const PureState &projector_state() const;
    /// Dense matrix form (materialized for projectors).
    Eigen::MatrixXcd matrix() const;

   private:
    Observable() = default;
    std::optional<PureState> vector_;
    Eigen::MatrixXcd matrix_;
};

/// rho_hat = (2^n + 1) sum_i f_i |psi_i><psi_i| - I with f_i = count_i / sum_j count_j,
/// summed in record order. Throws when every count is zero or a projector has
/// the wrong dimension.
ClassicalShadow build_shadow(std::span<const MeasurementRecord> records, std::size_t qubits);

/// Same estimator with real-valued nonnegative weights in place of photon
/// counts (the infinite-exposure limit, f_i = p_i / sum_j p_j).
ClassicalShadow build_shadow(std::span<const PureState> projectors, std::span<const double> weights,
                             std::size_t qubits);

/// Re Tr(O rho_hat). Throws if the imaginary residue exceeds 1e-10, which
/// can only come from a non-Hermitian input.
double estimate_expectation(const ClassicalShadow &shadow, const Observable &obs);

/// Number of median-of-means batches for M observables at failure level delta:
/// round(2 ln(2M / delta)), at least 1.
std::size_t batch_count(std::size_t num_observables, double delta);

/// Median; the mean of the two central values for even sizes.
double median(std::vector<double> values);

/// Splits `records` into `batches` contiguous runs of floor(P/K) records (the
/// remainder joins the last run), builds a shadow per run and returns the
/// per-run shadows.
std::vector<ClassicalShadow> batch_shadows(std::span<const MeasurementRecord> records, std::size_t qubits,
                                           std::size_t batches);

/// Median over batches of Tr(O rho_hat_k). With one batch this is exactly
/// estimate_expectation(build_shadow(records), obs).
double median_of_means_estimate(std::span<const MeasurementRecord> records, std::size_t qubits,
                                const Observable &obs, std::size_t batches);

/// Median-of-means estimates for many observables sharing one batching.
std::vector<double> median_of_means_estimates(std::span<const MeasurementRecord> records, std::size_t qubits,
                                              std::span<const Observable> observables, std::size_t batches);

}  // namespace shadowkit

#endif
