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

#include "shadowkit/shadow.hpp"

#include <algorithm>
#include <cmath>

#include "shadowkit/error.hpp"

namespace shadowkit {

namespace {

constexpr double kHermitianTolerance = 1e-12;
constexpr double kImaginaryTolerance = 1e-10;

bool is_hermitian(const Eigen::MatrixXcd &m, double tol) {
    return m.rows() == m.cols() && (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double real_checked(std::complex<double> v) {
    require(std::abs(v.imag()) < kImaginaryTolerance, ErrorCode::Numerical,
            "expectation has a nonzero imaginary part; input is not Hermitian");
    return v.real();
}

}  // namespace

ClassicalShadow::ClassicalShadow(std::size_t qubits, Eigen::MatrixXcd matrix)
    : qubits_(qubits), matrix_(std::move(matrix)) {
    require(qubits >= 1 && qubits < 31, ErrorCode::InvalidArgument, "ClassicalShadow: qubit count out of range");
    const auto dim = Eigen::Index{1} << qubits;
    require(matrix_.rows() == dim && matrix_.cols() == dim, ErrorCode::DimensionMismatch,
            "ClassicalShadow: matrix must be 2^n x 2^n");
    require(is_hermitian(matrix_, kHermitianTolerance), ErrorCode::InvalidArgument,
            "ClassicalShadow: matrix is not Hermitian");
}

Observable Observable::from_matrix(Eigen::MatrixXcd matrix) {
    require(matrix.rows() >= 1 && is_hermitian(matrix, kHermitianTolerance), ErrorCode::InvalidArgument,
            "Observable: matrix must be square and Hermitian");
    Observable o;
    o.matrix_ = std::move(matrix);
    return o;
}

Observable Observable::projector(PureState phi) {
    Observable o;
    o.vector_ = std::move(phi);
    return o;
}

std::size_t Observable::dim() const {
    return vector_ ? vector_->dim() : static_cast<std::size_t>(matrix_.rows());
}

const PureState &Observable::projector_state() const {
    require(vector_.has_value(), ErrorCode::InvalidArgument, "Observable: not a rank-one projector");
    return *vector_;
}

Eigen::MatrixXcd Observable::matrix() const {
    if (vector_) {
        return vector_->amplitudes() * vector_->amplitudes().adjoint();
    }
    return matrix_;
}

namespace {

// (2^n + 1) sum_i f_i |psi_i><psi_i| - I, accumulated in input order.
template <typename WeightAt, typename ProjectorAt>
ClassicalShadow accumulate_shadow(std::size_t qubits, std::size_t size, WeightAt weight_at, ProjectorAt projector_at) {
    require(qubits >= 1 && qubits < 31, ErrorCode::InvalidArgument, "build_shadow: qubit count out of range");
    const auto dim = Eigen::Index{1} << qubits;
    double total = 0.0;
    for (std::size_t i = 0; i < size; i++) {
        require(static_cast<Eigen::Index>(projector_at(i).dim()) == dim, ErrorCode::DimensionMismatch,
                "build_shadow: projector dimension does not match 2^n");
        const double w = weight_at(i);
        require(w >= 0.0 && std::isfinite(w), ErrorCode::InvalidArgument, "build_shadow: negative or non-finite weight");
        total += w;
    }
    require(total > 0.0, ErrorCode::InvalidArgument, "build_shadow: all counts are zero");

    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t i = 0; i < size; i++) {
        const double w = weight_at(i);
        if (w == 0.0) {
            continue;
        }
        const double f = w / total;
        const auto &v = projector_at(i).amplitudes();
        sum.noalias() += f * (v * v.adjoint());
    }
    Eigen::MatrixXcd shadow = static_cast<double>(dim + 1) * sum;
    shadow.diagonal().array() -= 1.0;
    return ClassicalShadow(qubits, std::move(shadow));
}

}  // namespace

ClassicalShadow build_shadow(std::span<const MeasurementRecord> records, std::size_t qubits) {
    // Counts below 2^53 convert exactly, so scaling every count by the same
    // integer leaves each f_i bit-identical.
    return accumulate_shadow(
        qubits, records.size(), [&](std::size_t i) { return static_cast<double>(records[i].count); },
        [&](std::size_t i) -> const PureState & { return records[i].projector; });
}

ClassicalShadow build_shadow(std::span<const PureState> projectors, std::span<const double> weights,
                             std::size_t qubits) {
    require(projectors.size() == weights.size(), ErrorCode::DimensionMismatch,
            "build_shadow: projector and weight counts differ");
    return accumulate_shadow(
        qubits, projectors.size(), [&](std::size_t i) { return weights[i]; },
        [&](std::size_t i) -> const PureState & { return projectors[i]; });
}

double estimate_expectation(const ClassicalShadow &shadow, const Observable &obs) {
    require(obs.dim() == shadow.dim(), ErrorCode::DimensionMismatch, "estimate_expectation: dimension mismatch");
    if (obs.is_projector()) {
        const auto &v = obs.projector_state().amplitudes();
        return real_checked(v.dot(shadow.matrix() * v));
    }
    // Tr(O rho) = sum_ij O_ij rho_ji
    Eigen::MatrixXcd o = obs.matrix();
    return real_checked((o.array() * shadow.matrix().transpose().array()).sum());
}

std::size_t batch_count(std::size_t num_observables, double delta) {
    require(num_observables >= 1, ErrorCode::InvalidArgument, "batch_count: need M >= 1");
    require(delta > 0.0 && delta < 1.0, ErrorCode::InvalidArgument, "batch_count: need 0 < delta < 1");
    double k = std::round(2.0 * std::log(2.0 * static_cast<double>(num_observables) / delta));
    return k < 1.0 ? 1 : static_cast<std::size_t>(k);
}

double median(std::vector<double> values) {
    require(!values.empty(), ErrorCode::InvalidArgument, "median: empty input");
    const std::size_t mid = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
    double upper = values[mid];
    if (values.size() % 2 == 1) {
        return upper;
    }
    double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lower + upper);
}

std::vector<ClassicalShadow> batch_shadows(std::span<const MeasurementRecord> records, std::size_t qubits,
                                           std::size_t batches) {
    require(batches >= 1, ErrorCode::InvalidArgument, "median of means: need K >= 1");
    require(records.size() >= batches, ErrorCode::InvalidArgument, "median of means: fewer records than batches");
    const std::size_t length = records.size() / batches;
    std::vector<ClassicalShadow> out;
    out.reserve(batches);
    for (std::size_t b = 0; b < batches; b++) {
        const std::size_t begin = b * length;
        const std::size_t end = (b + 1 == batches) ? records.size() : begin + length;
        out.push_back(build_shadow(records.subspan(begin, end - begin), qubits));
    }
    return out;
}

double median_of_means_estimate(std::span<const MeasurementRecord> records, std::size_t qubits,
                                const Observable &obs, std::size_t batches) {
    return median_of_means_estimates(records, qubits, std::span<const Observable>(&obs, 1), batches).front();
}

std::vector<double> median_of_means_estimates(std::span<const MeasurementRecord> records, std::size_t qubits,
                                              std::span<const Observable> observables, std::size_t batches) {
    auto shadows = batch_shadows(records, qubits, batches);
    std::vector<double> out;
    out.reserve(observables.size());
    std::vector<double> per_batch(shadows.size());
    for (const auto &obs : observables) {
        for (std::size_t b = 0; b < shadows.size(); b++) {
            per_batch[b] = estimate_expectation(shadows[b], obs);
        }
        out.push_back(median(per_batch));
    }
    return out;
}

}  // namespace shadowkit
