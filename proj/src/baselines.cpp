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

#include "shadowkit/baselines.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "shadowkit/error.hpp"

namespace shadowkit {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kGridPoints = 2048;
constexpr double kPhaseTolerance = 1e-6;

Eigen::MatrixXcd project_matrix(const Eigen::MatrixXcd &hermitian) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian);
    require(solver.info() == Eigen::Success, ErrorCode::Numerical, "eigendecomposition failed");
    const Eigen::VectorXd &eig = solver.eigenvalues();
    std::vector<double> projected = simplex_project(std::span<const double>(eig.data(), eig.size()));
    Eigen::VectorXd lambda = Eigen::Map<Eigen::VectorXd>(projected.data(), eig.size());
    const Eigen::MatrixXcd &v = solver.eigenvectors();
    Eigen::MatrixXcd out = v * lambda.cast<std::complex<double>>().asDiagonal() * v.adjoint();
    // Symmetrize away round-off so the result is Hermitian to machine precision.
    return 0.5 * (out + out.adjoint());
}

double frobenius_inner(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    // Re Tr(a^dagger b)
    return (a.conjugate().array() * b.array()).sum().real();
}

// Stacked projectors and counts for the likelihood sum_i c_i ln <psi_i|rho|psi_i>.
class Likelihood {
   public:
    Likelihood(std::span<const MeasurementRecord> records, std::size_t qubits, double floor) : floor_(floor) {
        const auto dim = Eigen::Index{1} << qubits;
        std::size_t used = 0;
        for (const auto &rec : records) {
            require(static_cast<Eigen::Index>(rec.projector.dim()) == dim, ErrorCode::DimensionMismatch,
                    "mle_estimate: projector dimension does not match 2^n");
            total_ += static_cast<double>(rec.count);
            used += rec.count > 0 ? 1 : 0;
        }
        require(total_ > 0.0, ErrorCode::InvalidArgument, "mle_estimate: all counts are zero");
        rows_.resize(static_cast<Eigen::Index>(used), dim);
        counts_.resize(static_cast<Eigen::Index>(used));
        Eigen::Index i = 0;
        for (const auto &rec : records) {
            if (rec.count == 0) {
                continue;
            }
            rows_.row(i) = rec.projector.amplitudes().adjoint();
            counts_[i] = static_cast<double>(rec.count);
            i++;
        }
    }

    double total() const {
        return total_;
    }

    Eigen::VectorXd probabilities(const Eigen::MatrixXcd &rho) const {
        Eigen::VectorXd p = ((rows_ * rho).cwiseProduct(rows_.conjugate())).rowwise().sum().real();
        return p.cwiseMax(floor_);
    }

    bool inside(const Eigen::MatrixXcd &rho) const {
        Eigen::VectorXd p = ((rows_ * rho).cwiseProduct(rows_.conjugate())).rowwise().sum().real();
        return p.size() == 0 || p.minCoeff() > floor_;
    }

    double value(const Eigen::VectorXd &p) const {
        return counts_.dot(p.array().log().matrix());
    }

    Eigen::MatrixXcd gradient(const Eigen::VectorXd &p) const {
        Eigen::VectorXd w = counts_.cwiseQuotient(p);
        Eigen::MatrixXcd weighted = w.cast<std::complex<double>>().asDiagonal() * rows_;
        Eigen::MatrixXcd g = rows_.adjoint() * weighted;
        return 0.5 * (g + g.adjoint());
    }

   private:
    Eigen::MatrixXcd rows_;  // row i = <psi_i|
    Eigen::VectorXd counts_;
    double total_ = 0.0;
    double floor_;
};

}  // namespace

std::vector<double> simplex_project(std::span<const double> values) {
    require(!values.empty(), ErrorCode::InvalidArgument, "simplex_project: empty input");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double cumulative = 0.0;
    double tau = 0.0;
    for (std::size_t j = 0; j < sorted.size(); j++) {
        cumulative += sorted[j];
        const double candidate = (cumulative - 1.0) / static_cast<double>(j + 1);
        if (sorted[j] - candidate > 0.0) {
            tau = candidate;
        }
    }
    std::vector<double> out(values.size());
    std::transform(values.begin(), values.end(), out.begin(), [tau](double v) { return std::max(v - tau, 0.0); });
    return out;
}

DensityMatrix project_to_density(const Eigen::MatrixXcd &hermitian) {
    require(hermitian.rows() >= 1 && hermitian.rows() == hermitian.cols(), ErrorCode::DimensionMismatch,
            "project_to_density: matrix must be square");
    return DensityMatrix(project_matrix(hermitian));
}

DensityMatrix project_shadow_psd(const ClassicalShadow &shadow) {
    return project_to_density(shadow.matrix());
}

void MLEConfig::validate() const {
    require(max_iterations >= 1, ErrorCode::InvalidArgument, "MLEConfig: max_iterations must be positive");
    require(likelihood_tolerance > 0.0, ErrorCode::InvalidArgument, "MLEConfig: likelihood_tolerance must be positive");
    require(initial_step >= 0.0, ErrorCode::InvalidArgument, "MLEConfig: initial_step must be positive (0 = auto)");
    require(backtracking_factor > 0.0 && backtracking_factor < 1.0, ErrorCode::InvalidArgument,
            "MLEConfig: backtracking_factor must be in (0, 1)");
    require(probability_floor > 0.0, ErrorCode::InvalidArgument, "MLEConfig: probability_floor must be positive");
}

MLEResult mle_estimate_detailed(std::span<const MeasurementRecord> records, std::size_t qubits,
                                const MLEConfig &config) {
    config.validate();
    require(qubits >= 1 && qubits < 16, ErrorCode::InvalidArgument, "mle_estimate: qubit count out of range");
    const Likelihood lik(records, qubits, config.probability_floor);
    const auto dim = Eigen::Index{1} << qubits;
    const double min_step = 1e-300;

    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Identity(dim, dim) / static_cast<double>(dim);
    double value = lik.value(lik.probabilities(rho));
    Eigen::MatrixXcd momentum = rho;
    double theta = 1.0;
    double step = config.initial_step > 0.0 ? config.initial_step : 1.0 / (lik.total() * static_cast<double>(dim));

    MLEResult result{DensityMatrix(rho), {value}, 0, false};
    bool restarted = false;
    for (std::size_t it = 0; it < config.max_iterations; it++) {
        result.iterations = it + 1;
        if (!restarted && !lik.inside(momentum)) {
            momentum = rho;
            theta = 1.0;
        }
        const Eigen::VectorXd p_momentum = lik.probabilities(momentum);
        const double value_momentum = lik.value(p_momentum);
        const Eigen::MatrixXcd grad = lik.gradient(p_momentum);

        Eigen::MatrixXcd candidate;
        double value_candidate = 0.0;
        bool backtracked = false;
        while (true) {
            candidate = project_matrix(momentum + step * grad);
            value_candidate = lik.value(lik.probabilities(candidate));
            const Eigen::MatrixXcd delta = candidate - momentum;
            const double model =
                value_momentum + frobenius_inner(grad, delta) - delta.squaredNorm() / (2.0 * step);
            if (value_candidate >= model || step < min_step) {
                break;
            }
            step *= config.backtracking_factor;
            backtracked = true;
        }

        if (value_candidate < value) {
            if (restarted) {
                // A plain projected step from the accepted point made no progress.
                result.converged = true;
                break;
            }
            momentum = rho;
            theta = 1.0;
            restarted = true;
            continue;
        }
        restarted = false;

        const double theta_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * theta * theta));
        momentum = candidate + ((theta - 1.0) / theta_next) * (candidate - rho);
        theta = theta_next;
        const double change = std::abs(value_candidate - value) / std::max(std::abs(value), 1e-300);
        rho = std::move(candidate);
        value = value_candidate;
        result.likelihood.push_back(value);
        step /= config.backtracking_factor;
        // A step cut short by the line search says little about stationarity.
        if (change < config.likelihood_tolerance && !backtracked) {
            result.converged = true;
            break;
        }
    }
    result.estimate = DensityMatrix(rho);
    return result;
}

DensityMatrix mle_estimate(std::span<const MeasurementRecord> records, std::size_t qubits, const MLEConfig &config) {
    return mle_estimate_detailed(records, qubits, config).estimate;
}

double fidelity(const Eigen::MatrixXcd &estimate, const PureState &target) {
    require(static_cast<std::size_t>(estimate.rows()) == target.dim() && estimate.rows() == estimate.cols(),
            ErrorCode::DimensionMismatch, "fidelity: dimension mismatch");
    const auto &v = target.amplitudes();
    return v.dot(estimate * v).real();
}

double fidelity(const DensityMatrix &estimate, const PureState &target) {
    return fidelity(estimate.matrix(), target);
}

double fidelity(const ClassicalShadow &estimate, const PureState &target) {
    return fidelity(estimate.matrix(), target);
}

GouyFidelityCurve::GouyFidelityCurve(const Eigen::MatrixXcd &estimate, const PureState &prepared,
                                     const HGModeBasis &basis) {
    const auto dim = static_cast<Eigen::Index>(prepared.dim());
    require(estimate.rows() == dim && estimate.cols() == dim && basis.dim() == prepared.dim(),
            ErrorCode::DimensionMismatch, "compensated_fidelity: dimension mismatch");
    max_order_ = static_cast<int>(basis.modes().back().order());
    coefficients_.assign(static_cast<std::size_t>(2 * max_order_ + 1), 0.0);
    // <U psi| rho |U psi> = sum_ab conj(psi_a) rho_ab psi_b exp(i (k_b - k_a) phi)
    const auto &psi = prepared.amplitudes();
    for (Eigen::Index a = 0; a < dim; a++) {
        const int ka = static_cast<int>(basis.modes()[static_cast<std::size_t>(a)].order());
        for (Eigen::Index b = 0; b < dim; b++) {
            const int kb = static_cast<int>(basis.modes()[static_cast<std::size_t>(b)].order());
            coefficients_[static_cast<std::size_t>(kb - ka + max_order_)] += std::conj(psi[a]) * estimate(a, b) * psi[b];
        }
    }
}

double GouyFidelityCurve::operator()(double phi) const {
    std::complex<double> total = 0.0;
    for (int m = -max_order_; m <= max_order_; m++) {
        total += coefficients_[static_cast<std::size_t>(m + max_order_)] * std::polar(1.0, m * phi);
    }
    return total.real();
}

std::vector<std::pair<double, double>> GouyFidelityCurve::sample(std::size_t points) const {
    require(points >= 1, ErrorCode::InvalidArgument, "GouyFidelityCurve::sample: need at least one point");
    std::vector<std::pair<double, double>> out;
    out.reserve(points);
    for (std::size_t j = 0; j < points; j++) {
        const double phi = kTwoPi * static_cast<double>(j) / static_cast<double>(points);
        out.emplace_back(phi, (*this)(phi));
    }
    return out;
}

FidelityResult GouyFidelityCurve::maximize() const {
    auto grid = sample(kGridPoints);
    auto best = std::max_element(grid.begin(), grid.end(),
                                 [](const auto &x, const auto &y) { return x.second < y.second; });
    const double h = kTwoPi / static_cast<double>(kGridPoints);
    double lo = best->first - h;
    double hi = best->first + h;
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - ratio * (hi - lo);
    double x2 = lo + ratio * (hi - lo);
    double f1 = (*this)(x1);
    double f2 = (*this)(x2);
    while (hi - lo > kPhaseTolerance) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = (*this)(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = (*this)(x1);
        }
    }
    double phi = 0.5 * (lo + hi);
    double value = (*this)(phi);
    if (value < best->second) {
        phi = best->first;
        value = best->second;
    }
    phi = std::fmod(phi, kTwoPi);
    if (phi < 0.0) {
        phi += kTwoPi;
    }
    return {value, phi};
}

FidelityResult compensated_fidelity(const Eigen::MatrixXcd &estimate, const PureState &prepared,
                                    const HGModeBasis &basis) {
    return GouyFidelityCurve(estimate, prepared, basis).maximize();
}

FidelityResult compensated_fidelity(const DensityMatrix &estimate, const PureState &prepared,
                                    const HGModeBasis &basis) {
    return compensated_fidelity(estimate.matrix(), prepared, basis);
}

FidelityResult compensated_fidelity(const ClassicalShadow &estimate, const PureState &prepared,
                                    const HGModeBasis &basis) {
    return compensated_fidelity(estimate.matrix(), prepared, basis);
}

}  // namespace shadowkit
