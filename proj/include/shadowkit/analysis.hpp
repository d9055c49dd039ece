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

#ifndef SHADOWKIT_ANALYSIS_HPP
#define SHADOWKIT_ANALYSIS_HPP

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "shadowkit/baselines.hpp"
#include "shadowkit/shadow.hpp"
#include "shadowkit/sim.hpp"

namespace shadowkit {

/// Sample Pearson correlation. Throws on fewer than two points or zero variance.
double pearson_r(std::span<const double> xs, std::span<const double> ys);

struct BetaFit {
    double beta;
    double standard_error;
};

/// Least squares through the origin, ys ~ beta * xs.
/// stderr = sqrt(sum (y - beta x)^2 / ((m - 1) sum x^2)).
BetaFit fit_beta_origin(std::span<const double> xs, std::span<const double> ys);

struct CorrelationPoint {
    double o_meas;
    double o_est;
};

struct CorrelationReport {
    double pearson_r = 0.0;
    double beta = 0.0;
    double beta_stderr = 0.0;
    std::size_t point_count = 0;
    std::vector<CorrelationPoint> points;
};

CorrelationReport make_correlation_report(std::span<const double> o_meas, std::span<const double> o_est);

enum class ObservableKind { Haar, UniformOverlap };
enum class EstimatorKind { Shadow, ShadowProjected, Mle };

std::string to_string(ObservableKind kind);
std::string to_string(EstimatorKind kind);
ObservableKind parse_observable_kind(const std::string &name);
EstimatorKind parse_estimator_kind(const std::string &name);

/// One simulated acquisition. Random streams are derived from the config seed
/// so that each stage is reproducible independently of the others.
struct SimulatedExperiment {
    std::size_t qubits;
    PureState prepared;  // Haar-random state written to the preparation side
    PureState truth;     // prepared state after the Gouy phase, what is measured
    std::vector<MeasurementRecord> records;
};

SimulatedExperiment simulate_experiment(const ExperimentConfig &config);

/// Rank-one observables for a correlation test: Haar-random projectors, or
/// projectors with uniformly distributed overlap with `reference`.
std::vector<Observable> draw_observables(const ExperimentConfig &config, std::size_t count, ObservableKind kind,
                                         const PureState &reference);

struct DirectMeasurement {
    bool poisson_noise = false;  // false: exact Born values
};

/// o_meas for each observable on the true state. With poisson_noise each value
/// is Poisson(exposure * o) / exposure.
std::vector<double> direct_values(const ExperimentConfig &config, const PureState &truth,
                                  std::span<const Observable> observables, DirectMeasurement mode = {});

/// Tr(O rho) for every observable, evaluated in parallel into fixed slots.
std::vector<double> expectations(const Eigen::MatrixXcd &estimate, std::span<const Observable> observables);

/// Shadow predictions versus direct values on one simulated experiment.
CorrelationReport run_correlation_study(const ExperimentConfig &config, std::size_t observables, ObservableKind kind,
                                        DirectMeasurement mode = {});

struct BiasReport {
    CorrelationReport shadow;
    CorrelationReport mle;
};

/// Shadow and MLE predictions for uniform-overlap observables, both computed
/// from the same records.
BiasReport run_bias_study(const ExperimentConfig &config, std::size_t observables, const MLEConfig &mle = {},
                          DirectMeasurement mode = {});

struct FidelityCurve {
    std::size_t dimension = 0;
    EstimatorKind estimator = EstimatorKind::Shadow;
    std::vector<std::size_t> projection_counts;
    std::vector<double> fidelity_mean;
    std::vector<double> fidelity_stderr;
    /// samples[p][r]: fidelity at grid point p for repetition r.
    std::vector<std::vector<double>> samples;
    /// |<compensated prepared|truth>|^2 per repetition.
    std::vector<double> truth;
    /// Compensating Gouy phase per repetition, found from the full data set.
    std::vector<double> phase;
};

/// For each repetition: a fresh Haar state, max(p_grid) records, the
/// compensating phase from the full-data estimate, then the fidelity to the
/// compensated prepared state of the estimate built from each prefix.
FidelityCurve run_fidelity_vs_p(const ExperimentConfig &config, std::span<const std::size_t> p_grid,
                                EstimatorKind estimator, std::size_t repetitions, const MLEConfig &mle = {});

struct MedianSweepPoint {
    std::size_t batches;
    double pearson_r;
};

/// Pearson r of median-of-means predictions (Haar observables) for each K.
/// K = 1 reproduces run_correlation_study exactly.
std::vector<MedianSweepPoint> run_median_sweep(const ExperimentConfig &config, std::span<const std::size_t> k_grid,
                                               std::size_t observables);

}  // namespace shadowkit

#endif
