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

#ifndef SHADOWKIT_SIM_HPP
#define SHADOWKIT_SIM_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "shadowkit/random.hpp"
#include "shadowkit/shadow.hpp"
#include "shadowkit/stabilizer.hpp"

namespace shadowkit {

/// Hermitian, positive semidefinite, trace-one matrix.
class DensityMatrix {
   public:
    /// Validates Hermiticity (1e-12), trace (1e-10) and min eigenvalue >= -1e-10.
    explicit DensityMatrix(Eigen::MatrixXcd matrix);
    static DensityMatrix pure(const PureState &psi);
    static DensityMatrix maximally_mixed(std::size_t dim);

    std::size_t dim() const {
        return static_cast<std::size_t>(matrix_.rows());
    }
    const Eigen::MatrixXcd &matrix() const {
        return matrix_;
    }

   private:
    Eigen::MatrixXcd matrix_;
};

/// Unitarily invariant random vector: i.i.d. standard complex Gaussians, normalized.
PureState haar_random_state(std::size_t dim, RandomSource &rng);

/// Density of x = |<psi|phi>|^2 for fixed psi and Haar phi: (D-1)(1-x)^(D-2).
double haar_overlap_pdf(double x, std::size_t dim);

/// <psi|rho|psi>, with round-off negativity down to -1e-10 clamped to 0 and
/// excess above 1 clamped to 1. Larger violations throw.
double born_probability(const DensityMatrix &state, const PureState &projector);

/// Born probabilities for a pure true state, same clamping rules.
double born_probability(const PureState &state, const PureState &projector);

/// One Poisson(exposure * p_i) photon count per projector, in projector order.
std::vector<MeasurementRecord> simulate_counts(const DensityMatrix &state, std::span<const PureState> projectors,
                                               double exposure, RandomSource &rng);

struct OverlapProjector {
    PureState phi;
    double a;  // |<psi|phi>|^2
};

/// phi = sqrt(a) psi + sqrt(1-a) g_perp / |g_perp|, with a ~ U[0,1] and g_perp
/// the part of a complex Gaussian vector orthogonal to psi.
OverlapProjector uniform_overlap_projector(const PureState &psi, RandomSource &rng);

/// Same construction with a prescribed overlap a in [0, 1].
PureState overlap_projector(const PureState &psi, double a, RandomSource &rng);

/// Smallest k with (k+1)(k+2)/2 >= D.
std::size_t hg_kmax(std::size_t dim);

struct HGMode {
    std::size_t nx;
    std::size_t my;
    std::size_t order() const {
        return nx + my;
    }
};

/// First D Hermite-Gaussian modes, ordered by order k = nx + my, then nx.
class HGModeBasis {
   public:
    explicit HGModeBasis(std::size_t dim);

    std::size_t dim() const {
        return modes_.size();
    }
    const std::vector<HGMode> &modes() const {
        return modes_;
    }

   private:
    std::vector<HGMode> modes_;
};

/// Diagonal of U(phi) = diag(exp(i (k_j + 1) phi)).
Eigen::VectorXcd gouy_unitary(const HGModeBasis &basis, double phi);

/// U(phi) |psi>
PureState apply_gouy(const HGModeBasis &basis, double phi, const PureState &psi);

struct ExperimentConfig {
    std::size_t qubits = 3;
    std::size_t projections = 10000;
    double exposure = 3e5;  // mean photons at probability one
    std::uint64_t seed = 0;
    double gouy_phase = 0.0;

    /// Throws naming the offending field.
    void validate() const;
    std::size_t dim() const {
        return std::size_t{1} << qubits;
    }
};

}  // namespace shadowkit

#endif
