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

#include "shadowkit/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "parallel.hpp"
#include "shadowkit/error.hpp"

namespace shadowkit {

namespace {

// Independent random streams of one experiment.
enum Stream : std::uint64_t {
    kTruthStream = 0,
    kProjectorStream = 1,
    kCountStream = 2,
    kObservableStream = 3,
    kDirectNoiseStream = 4,
};

struct MeanAndError {
    double mean;
    double standard_error;
};

MeanAndError mean_and_error(std::span<const double> values) {
    const double n = static_cast<double>(values.size());
    double mean = 0.0;
    for (double v : values) {
        mean += v;
    }
    mean /= n;
    if (values.size() < 2) {
        return {mean, 0.0};
    }
    double ss = 0.0;
    for (double v : values) {
        ss += (v - mean) * (v - mean);
    }
    return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

Eigen::MatrixXcd estimate_matrix(std::span<const MeasurementRecord> records, std::size_t qubits,
                                 EstimatorKind estimator, const MLEConfig &mle) {
    switch (estimator) {
        case EstimatorKind::Shadow:
            return build_shadow(records, qubits).matrix();
        case EstimatorKind::ShadowProjected:
            return project_shadow_psd(build_shadow(records, qubits)).matrix();
        case EstimatorKind::Mle:
            return mle_estimate(records, qubits, mle).matrix();
    }
    fail(ErrorCode::Internal, "unknown estimator");
}

std::vector<double> shadow_predictions(const ClassicalShadow &shadow, std::span<const Observable> observables) {
    std::vector<double> out(observables.size());
    detail::parallel_for(observables.size(),
                         [&](std::size_t i) { out[i] = estimate_expectation(shadow, observables[i]); });
    return out;
}

}  // namespace

double pearson_r(std::span<const double> xs, std::span<const double> ys) {
    require(xs.size() == ys.size(), ErrorCode::DimensionMismatch, "pearson_r: length mismatch");
    require(xs.size() >= 2, ErrorCode::InvalidArgument, "pearson_r: need at least two points");
    const double n = static_cast<double>(xs.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < xs.size(); i++) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); i++) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    require(sxx > 0.0 && syy > 0.0, ErrorCode::InvalidArgument, "pearson_r: zero variance");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

BetaFit fit_beta_origin(std::span<const double> xs, std::span<const double> ys) {
    require(xs.size() == ys.size(), ErrorCode::DimensionMismatch, "fit_beta_origin: length mismatch");
    require(xs.size() >= 2, ErrorCode::InvalidArgument, "fit_beta_origin: need at least two points");
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); i++) {
        sxy += xs[i] * ys[i];
        sxx += xs[i] * xs[i];
    }
    require(sxx > 0.0, ErrorCode::InvalidArgument, "fit_beta_origin: all x values are zero");
    const double beta = sxy / sxx;
    double residual = 0.0;
    for (std::size_t i = 0; i < xs.size(); i++) {
        const double r = ys[i] - beta * xs[i];
        residual += r * r;
    }
    const double m = static_cast<double>(xs.size());
    return {beta, std::sqrt(residual / ((m - 1.0) * sxx))};
}

CorrelationReport make_correlation_report(std::span<const double> o_meas, std::span<const double> o_est) {
    CorrelationReport report;
    report.pearson_r = pearson_r(o_meas, o_est);
    BetaFit fit = fit_beta_origin(o_meas, o_est);
    report.beta = fit.beta;
    report.beta_stderr = fit.standard_error;
    report.point_count = o_meas.size();
    report.points.reserve(o_meas.size());
    for (std::size_t i = 0; i < o_meas.size(); i++) {
        report.points.push_back({o_meas[i], o_est[i]});
    }
    return report;
}

std::string to_string(ObservableKind kind) {
    return kind == ObservableKind::Haar ? "haar" : "uniform_overlap";
}

std::string to_string(EstimatorKind kind) {
    switch (kind) {
        case EstimatorKind::Shadow:
            return "shadow";
        case EstimatorKind::ShadowProjected:
            return "shadow_projected";
        case EstimatorKind::Mle:
            return "mle";
    }
    return "unknown";
}

ObservableKind parse_observable_kind(const std::string &name) {
    if (name == "haar") {
        return ObservableKind::Haar;
    }
    if (name == "uniform_overlap") {
        return ObservableKind::UniformOverlap;
    }
    fail(ErrorCode::InvalidArgument, "observable kind must be 'haar' or 'uniform_overlap', got '" + name + "'");
}

EstimatorKind parse_estimator_kind(const std::string &name) {
    if (name == "shadow") {
        return EstimatorKind::Shadow;
    }
    if (name == "shadow_projected") {
        return EstimatorKind::ShadowProjected;
    }
    if (name == "mle") {
        return EstimatorKind::Mle;
    }
    fail(ErrorCode::InvalidArgument, "estimator must be 'shadow', 'shadow_projected' or 'mle', got '" + name + "'");
}

SimulatedExperiment simulate_experiment(const ExperimentConfig &config) {
    config.validate();
    const RandomSource master(config.seed);
    RandomSource truth_rng = master.derive(kTruthStream);
    RandomSource projector_rng = master.derive(kProjectorStream);
    RandomSource count_rng = master.derive(kCountStream);

    const std::size_t dim = config.dim();
    PureState prepared = haar_random_state(dim, truth_rng);
    PureState truth = apply_gouy(HGModeBasis(dim), config.gouy_phase, prepared);

    std::vector<PureState> projectors;
    projectors.reserve(config.projections);
    for (std::size_t i = 0; i < config.projections; i++) {
        projectors.push_back(sample_stabilizer_state(config.qubits, projector_rng));
    }
    auto records = simulate_counts(DensityMatrix::pure(truth), projectors, config.exposure, count_rng);
    return {config.qubits, std::move(prepared), std::move(truth), std::move(records)};
}

std::vector<Observable> draw_observables(const ExperimentConfig &config, std::size_t count, ObservableKind kind,
                                         const PureState &reference) {
    require(count >= 2, ErrorCode::InvalidArgument, "config field 'observables' must be >= 2");
    RandomSource rng = RandomSource(config.seed).derive(kObservableStream);
    std::vector<Observable> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; i++) {
        if (kind == ObservableKind::Haar) {
            out.push_back(Observable::projector(haar_random_state(config.dim(), rng)));
        } else {
            out.push_back(Observable::projector(uniform_overlap_projector(reference, rng).phi));
        }
    }
    return out;
}

std::vector<double> expectations(const Eigen::MatrixXcd &estimate, std::span<const Observable> observables) {
    std::vector<double> out(observables.size());
    detail::parallel_for(observables.size(), [&](std::size_t i) {
        const Observable &obs = observables[i];
        require(obs.dim() == static_cast<std::size_t>(estimate.rows()), ErrorCode::DimensionMismatch,
                "expectations: dimension mismatch");
        if (obs.is_projector()) {
            out[i] = fidelity(estimate, obs.projector_state());
        } else {
            out[i] = (obs.matrix().array() * estimate.transpose().array()).sum().real();
        }
    });
    return out;
}

std::vector<double> direct_values(const ExperimentConfig &config, const PureState &truth,
                                  std::span<const Observable> observables, DirectMeasurement mode) {
    const Eigen::MatrixXcd rho = truth.amplitudes() * truth.amplitudes().adjoint();
    std::vector<double> values = expectations(rho, observables);
    if (mode.poisson_noise) {
        RandomSource rng = RandomSource(config.seed).derive(kDirectNoiseStream);
        for (double &v : values) {
            v = static_cast<double>(rng.poisson(config.exposure * std::max(v, 0.0))) / config.exposure;
        }
    }
    return values;
}

CorrelationReport run_correlation_study(const ExperimentConfig &config, std::size_t observables, ObservableKind kind,
                                        DirectMeasurement mode) {
    SimulatedExperiment exp = simulate_experiment(config);
    auto obs = draw_observables(config, observables, kind, exp.truth);
    auto o_meas = direct_values(config, exp.truth, obs, mode);
    auto o_est = shadow_predictions(build_shadow(exp.records, exp.qubits), obs);
    return make_correlation_report(o_meas, o_est);
}

BiasReport run_bias_study(const ExperimentConfig &config, std::size_t observables, const MLEConfig &mle,
                          DirectMeasurement mode) {
    SimulatedExperiment exp = simulate_experiment(config);
    auto obs = draw_observables(config, observables, ObservableKind::UniformOverlap, exp.truth);
    auto o_meas = direct_values(config, exp.truth, obs, mode);
    auto o_shadow = shadow_predictions(build_shadow(exp.records, exp.qubits), obs);
    auto o_mle = expectations(mle_estimate(exp.records, exp.qubits, mle).matrix(), obs);
    return {make_correlation_report(o_meas, o_shadow), make_correlation_report(o_meas, o_mle)};
}

FidelityCurve run_fidelity_vs_p(const ExperimentConfig &config, std::span<const std::size_t> p_grid,
                                EstimatorKind estimator, std::size_t repetitions, const MLEConfig &mle) {
    config.validate();
    require(!p_grid.empty(), ErrorCode::InvalidArgument, "config field 'grid' must be nonempty");
    require(p_grid.front() >= 1 && std::is_sorted(p_grid.begin(), p_grid.end()), ErrorCode::InvalidArgument,
            "config field 'grid' must be ascending positive integers");
    require(repetitions >= 1, ErrorCode::InvalidArgument, "config field 'repetitions' must be >= 1");

    const std::size_t dim = config.dim();
    const HGModeBasis basis(dim);
    FidelityCurve curve;
    curve.dimension = dim;
    curve.estimator = estimator;
    curve.projection_counts.assign(p_grid.begin(), p_grid.end());
    curve.samples.assign(p_grid.size(), std::vector<double>(repetitions));
    curve.truth.assign(repetitions, 0.0);
    curve.phase.assign(repetitions, 0.0);

    detail::parallel_for(repetitions, [&](std::size_t rep) {
        ExperimentConfig rep_config = config;
        rep_config.seed = derive_seed(config.seed, rep);
        rep_config.projections = p_grid.back();
        SimulatedExperiment exp = simulate_experiment(rep_config);
        const std::span<const MeasurementRecord> all(exp.records);

        const FidelityResult full =
            compensated_fidelity(estimate_matrix(all, exp.qubits, estimator, mle), exp.prepared, basis);
        const PureState compensated = apply_gouy(basis, full.phase, exp.prepared);
        curve.phase[rep] = full.phase;
        curve.truth[rep] = compensated.overlap(exp.truth);
        for (std::size_t p = 0; p < p_grid.size(); p++) {
            auto prefix = all.first(p_grid[p]);
            curve.samples[p][rep] = fidelity(estimate_matrix(prefix, exp.qubits, estimator, mle), compensated);
        }
    });

    for (const auto &row : curve.samples) {
        MeanAndError m = mean_and_error(row);
        curve.fidelity_mean.push_back(m.mean);
        curve.fidelity_stderr.push_back(m.standard_error);
    }
    return curve;
}

std::vector<MedianSweepPoint> run_median_sweep(const ExperimentConfig &config, std::span<const std::size_t> k_grid,
                                               std::size_t observables) {
    require(!k_grid.empty(), ErrorCode::InvalidArgument, "config field 'k_grid' must be nonempty");
    for (std::size_t k : k_grid) {
        require(k >= 1, ErrorCode::InvalidArgument, "config field 'k_grid' values must be >= 1");
    }
    SimulatedExperiment exp = simulate_experiment(config);
    auto obs = draw_observables(config, observables, ObservableKind::Haar, exp.truth);
    auto o_meas = direct_values(config, exp.truth, obs);

    std::vector<MedianSweepPoint> out(k_grid.size());
    detail::parallel_for(k_grid.size(), [&](std::size_t i) {
        auto o_est = median_of_means_estimates(exp.records, exp.qubits, obs, k_grid[i]);
        out[i] = {k_grid[i], pearson_r(o_meas, o_est)};
    });
    return out;
}

}  // namespace shadowkit
