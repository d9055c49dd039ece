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

#include "shadowkit/sim.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "shadowkit/error.hpp"

namespace shadowkit {

namespace {

constexpr double kClampTolerance = 1e-10;

double clamp_probability(double p) {
    require(p >= -kClampTolerance && p <= 1.0 + kClampTolerance, ErrorCode::Numerical,
            "born_probability: value outside [0, 1]; state is not a density matrix");
    return std::clamp(p, 0.0, 1.0);
}

Eigen::VectorXcd gaussian_vector(std::size_t dim, RandomSource &rng) {
    Eigen::VectorXcd g(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < g.size(); i++) {
        g[i] = rng.complex_normal();
    }
    return g;
}

}  // namespace

DensityMatrix::DensityMatrix(Eigen::MatrixXcd matrix) : matrix_(std::move(matrix)) {
    require(matrix_.rows() >= 1 && matrix_.rows() == matrix_.cols(), ErrorCode::DimensionMismatch,
            "DensityMatrix: matrix must be square");
    require((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() <= 1e-12, ErrorCode::InvalidArgument,
            "DensityMatrix: matrix is not Hermitian");
    require(std::abs(matrix_.trace() - 1.0) <= 1e-10, ErrorCode::InvalidArgument, "DensityMatrix: trace is not 1");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix_, Eigen::EigenvaluesOnly);
    require(solver.eigenvalues().minCoeff() >= -1e-10, ErrorCode::InvalidArgument,
            "DensityMatrix: matrix is not positive semidefinite");
}

DensityMatrix DensityMatrix::pure(const PureState &psi) {
    return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
    const auto d = static_cast<Eigen::Index>(dim);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(dim);
    return DensityMatrix(std::move(m));
}

PureState haar_random_state(std::size_t dim, RandomSource &rng) {
    require(dim >= 2, ErrorCode::InvalidArgument, "haar_random_state: need D >= 2");
    return PureState::normalized(gaussian_vector(dim, rng));
}

double haar_overlap_pdf(double x, std::size_t dim) {
    require(dim >= 2, ErrorCode::InvalidArgument, "haar_overlap_pdf: need D >= 2");
    require(x >= 0.0 && x <= 1.0, ErrorCode::InvalidArgument, "haar_overlap_pdf: need 0 <= x <= 1");
    const double d = static_cast<double>(dim);
    return (d - 1.0) * std::pow(1.0 - x, d - 2.0);
}

double born_probability(const DensityMatrix &state, const PureState &projector) {
    require(state.dim() == projector.dim(), ErrorCode::DimensionMismatch, "born_probability: dimension mismatch");
    const auto &v = projector.amplitudes();
    return clamp_probability(v.dot(state.matrix() * v).real());
}

double born_probability(const PureState &state, const PureState &projector) {
    return clamp_probability(state.overlap(projector));
}

std::vector<MeasurementRecord> simulate_counts(const DensityMatrix &state, std::span<const PureState> projectors,
                                               double exposure, RandomSource &rng) {
    require(exposure > 0.0 && std::isfinite(exposure), ErrorCode::InvalidArgument,
            "simulate_counts: exposure must be positive");
    std::vector<MeasurementRecord> out;
    out.reserve(projectors.size());
    for (const auto &psi : projectors) {
        const double p = born_probability(state, psi);
        out.push_back({psi, rng.poisson(exposure * p)});
    }
    return out;
}

PureState overlap_projector(const PureState &psi, double a, RandomSource &rng) {
    require(a >= 0.0 && a <= 1.0, ErrorCode::InvalidArgument, "overlap_projector: need 0 <= a <= 1");
    const auto &v = psi.amplitudes();
    Eigen::VectorXcd residual;
    double residual_norm = 0.0;
    do {
        Eigen::VectorXcd g = gaussian_vector(psi.dim(), rng);
        residual = g - v * v.dot(g);
        residual_norm = residual.norm();
    } while (residual_norm < 1e-12);
    Eigen::VectorXcd phi = std::sqrt(a) * v + std::sqrt(1.0 - a) * (residual / residual_norm);
    return PureState::normalized(std::move(phi));
}

OverlapProjector uniform_overlap_projector(const PureState &psi, RandomSource &rng) {
    const double a = rng.uniform();
    return {overlap_projector(psi, a, rng), a};
}

std::size_t hg_kmax(std::size_t dim) {
    require(dim >= 1, ErrorCode::InvalidArgument, "hg_kmax: need D >= 1");
    std::size_t k = 0;
    while ((k + 1) * (k + 2) / 2 < dim) {
        k++;
    }
    return k;
}

HGModeBasis::HGModeBasis(std::size_t dim) {
    require(dim >= 1, ErrorCode::InvalidArgument, "HGModeBasis: need D >= 1");
    for (std::size_t k = 0; modes_.size() < dim; k++) {
        for (std::size_t nx = 0; nx <= k && modes_.size() < dim; nx++) {
            modes_.push_back({nx, k - nx});
        }
    }
}

Eigen::VectorXcd gouy_unitary(const HGModeBasis &basis, double phi) {
    Eigen::VectorXcd phases(static_cast<Eigen::Index>(basis.dim()));
    for (std::size_t j = 0; j < basis.dim(); j++) {
        const double angle = static_cast<double>(basis.modes()[j].order() + 1) * phi;
        phases[static_cast<Eigen::Index>(j)] = std::polar(1.0, angle);
    }
    return phases;
}

PureState apply_gouy(const HGModeBasis &basis, double phi, const PureState &psi) {
    require(basis.dim() == psi.dim(), ErrorCode::DimensionMismatch, "apply_gouy: dimension mismatch");
    Eigen::VectorXcd out = gouy_unitary(basis, phi).cwiseProduct(psi.amplitudes());
    return PureState::normalized(std::move(out));
}

void ExperimentConfig::validate() const {
    require(qubits >= 1 && qubits <= 12, ErrorCode::InvalidArgument, "config field 'qubits' must be in [1, 12]");
    require(projections >= 1, ErrorCode::InvalidArgument, "config field 'projections' must be >= 1");
    require(exposure > 0.0 && std::isfinite(exposure), ErrorCode::InvalidArgument,
            "config field 'exposure' must be positive and finite");
    require(std::isfinite(gouy_phase), ErrorCode::InvalidArgument, "config field 'gouy_phase' must be finite");
}

}  // namespace shadowkit
