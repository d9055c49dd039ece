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

#ifndef SHADOWKIT_BASELINES_HPP
#define SHADOWKIT_BASELINES_HPP

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "shadowkit/shadow.hpp"
#include "shadowkit/sim.hpp"

namespace shadowkit {

/// Euclidean projection onto the probability simplex {x >= 0, sum x = 1}.
std::vector<double> simplex_project(std::span<const double> values);

/// Nearest density matrix with the same eigenvectors: eigenvalues are
/// simplex-projected. `hermitian` must be Hermitian.
DensityMatrix project_to_density(const Eigen::MatrixXcd &hermitian);

DensityMatrix project_shadow_psd(const ClassicalShadow &shadow);

struct MLEConfig {
    std::size_t max_iterations = 5000;
    double likelihood_tolerance = 1e-10;  // relative change
    double initial_step = 0.0;            // 0 selects 1 / (total counts * D)
    double backtracking_factor = 0.5;
    double probability_floor = 1e-12;

    void validate() const;
};

struct MLEResult {
    DensityMatrix estimate;
    /// Log-likelihood after every accepted iteration, starting with the
    /// maximally mixed initial point.
    std::vector<double> likelihood;
    std::size_t iterations = 0;
    bool converged = false;
};

/// Maximizes sum_i count_i ln <psi_i|rho|psi_i> over density matrices with
/// accelerated projected gradient ascent. Momentum restarts whenever a step
/// would lower the likelihood, so accepted iterates never decrease it.
MLEResult mle_estimate_detailed(std::span<const MeasurementRecord> records, std::size_t qubits,
                                const MLEConfig &config = {});

DensityMatrix mle_estimate(std::span<const MeasurementRecord> records, std::size_t qubits,
                           const MLEConfig &config = {});

/// <psi|rho|psi>, unclamped. For shadows the value may leave [0, 1].
double fidelity(const Eigen::MatrixXcd &estimate, const PureState &target);
double fidelity(const DensityMatrix &estimate, const PureState &target);
double fidelity(const ClassicalShadow &estimate, const PureState &target);

struct FidelityResult {
    double fidelity;
    double phase;  // in [0, 2 pi)
};

/// phi -> <psi_prep| U(phi)^dagger rho U(phi) |psi_prep> on one period. The
/// function is a trigonometric polynomial in phi with integer frequencies
/// bounded by the maximal mode order, so it is stored by its coefficients.
class GouyFidelityCurve {
   public:
    GouyFidelityCurve(const Eigen::MatrixXcd &estimate, const PureState &prepared, const HGModeBasis &basis);

    double operator()(double phi) const;
    /// (phi, F(phi)) on `points` equally spaced phases in [0, 2 pi).
    std::vector<std::pair<double, double>> sample(std::size_t points = 2048) const;
    /// Grid search on 2048 points, then golden-section refinement to 1e-6 rad.
    FidelityResult maximize() const;

   private:
    std::vector<std::complex<double>> coefficients_;  // index m <-> frequency m - max_order
    int max_order_;
};

FidelityResult compensated_fidelity(const Eigen::MatrixXcd &estimate, const PureState &prepared,
                                    const HGModeBasis &basis);
FidelityResult compensated_fidelity(const DensityMatrix &estimate, const PureState &prepared,
                                    const HGModeBasis &basis);
FidelityResult compensated_fidelity(const ClassicalShadow &estimate, const PureState &prepared,
                                    const HGModeBasis &basis);

}  // namespace shadowkit

#endif
