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
#include <numbers>

#include "../common/stats.hpp"
#include "shadowkit/error.hpp"
#include "shadowkit/sim.hpp"

using namespace shadowkit;
using shadowkit::testing::ks_critical;
using shadowkit::testing::ks_statistic;
using cd = std::complex<double>;

namespace {

const double kH = 1.0 / std::sqrt(2.0);

PureState plus() {
    return PureState(Eigen::Vector2cd(kH, kH));
}

double simpson(const std::function<double(double)> &f, int intervals) {
    const double h = 1.0 / intervals;
    double sum = f(0.0) + f(1.0);
    for (int i = 1; i < intervals; i++) {
        sum += (i % 2 ? 4.0 : 2.0) * f(i * h);
    }
    return sum * h / 3.0;
}

}  // namespace

TEST_CASE("Haar states are normalized") {
    RandomSource rng(1);
    for (std::size_t dim : {2, 3, 8, 32}) {
        for (int i = 0; i < 100; i++) {
            CHECK(std::abs(haar_random_state(dim, rng).amplitudes().norm() - 1.0) < 1e-12);
        }
    }
    CHECK_THROWS_AS(haar_random_state(1, rng), Error);
}

TEST_CASE("Haar overlaps follow the beta law") {
    RandomSource rng(2);
    for (std::size_t dim : {2, 8}) {
        const PureState fixed = PureState::basis(dim, 0);
        std::vector<double> overlaps;
        const int draws = 100000;
        for (int i = 0; i < draws; i++) {
            overlaps.push_back(haar_random_state(dim, rng).overlap(fixed));
        }
        const double d = static_cast<double>(dim);
        auto cdf = [d](double x) { return 1.0 - std::pow(1.0 - x, d - 1.0); };
        CHECK(ks_statistic(overlaps, cdf) < ks_critical(overlaps.size(), 0.01));
        double mean = 0.0;
        for (double x : overlaps) {
            mean += x;
        }
        mean /= draws;
        const double sigma = std::sqrt((d - 1.0) / (d * d * (d + 1.0)) / draws);
        CHECK(std::abs(mean - 1.0 / d) < 5.0 * sigma);
    }
}

TEST_CASE("Haar overlap density") {
    for (double x : {0.0, 0.3, 0.99, 1.0}) {
        CHECK(haar_overlap_pdf(x, 2) == 1.0);
    }
    CHECK(haar_overlap_pdf(0.0, 3) == 2.0);
    for (std::size_t dim : {2, 3, 8, 32}) {
        CHECK(simpson([dim](double x) { return haar_overlap_pdf(x, dim); }, 2000) == doctest::Approx(1.0).epsilon(1e-9));
    }
    CHECK_THROWS_AS(haar_overlap_pdf(-0.1, 4), Error);
    CHECK_THROWS_AS(haar_overlap_pdf(0.5, 1), Error);
}

TEST_CASE("Born probability") {
    CHECK(born_probability(DensityMatrix::pure(PureState::basis(2, 0)), plus()) == doctest::Approx(0.5).epsilon(1e-15));
    RandomSource rng(3);
    PureState psi = haar_random_state(8, rng);
    CHECK(born_probability(DensityMatrix::maximally_mixed(8), psi) == doctest::Approx(0.125).epsilon(1e-14));
    CHECK(born_probability(DensityMatrix::pure(psi), psi) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(born_probability(psi, psi) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(born_probability(DensityMatrix::maximally_mixed(4), psi), Error);
}

TEST_CASE("density matrix invariants are enforced") {
    Eigen::MatrixXcd not_psd(2, 2);
    not_psd << 2.0, 0.0, 0.0, -1.0;
    CHECK_THROWS_AS(DensityMatrix{not_psd}, Error);
    Eigen::MatrixXcd not_unit(2, 2);
    not_unit << 0.5, 0.0, 0.0, 0.4;
    CHECK_THROWS_AS(DensityMatrix{not_unit}, Error);
    Eigen::MatrixXcd not_hermitian(2, 2);
    not_hermitian << 0.5, 0.1, 0.0, 0.5;
    CHECK_THROWS_AS(DensityMatrix{not_hermitian}, Error);
}

TEST_CASE("Born probabilities over all stabilizer states average to 1/D") {
    RandomSource rng(4);
    for (std::size_t n = 1; n <= 2; n++) {
        const std::size_t dim = std::size_t{1} << n;
        auto all = enumerate_all(n);
        for (int trial = 0; trial < 5; trial++) {
            DensityMatrix rho = DensityMatrix::pure(haar_random_state(dim, rng));
            double sum = 0.0;
            for (const auto &s : all) {
                sum += born_probability(rho, s);
            }
            CHECK(std::abs(sum - static_cast<double>(all.size()) / dim) < 1e-10);
        }
    }
}

TEST_CASE("photon counts") {
    RandomSource rng(5);
    const PureState zero = PureState::basis(2, 0);
    const DensityMatrix rho = DensityMatrix::pure(zero);
    std::vector<PureState> certain(100, zero);
    auto records = simulate_counts(rho, certain, 3e5, rng);
    double mean = 0.0;
    for (const auto &r : records) {
        mean += static_cast<double>(r.count);
    }
    mean /= records.size();
    CHECK(std::abs(mean - 3e5) < 0.01 * 3e5);

    std::vector<PureState> never(50, PureState::basis(2, 1));
    for (const auto &r : simulate_counts(rho, never, 3e5, rng)) {
        CHECK(r.count == 0);
    }
    CHECK_THROWS_AS(simulate_counts(rho, never, 0.0, rng), Error);
}

TEST_CASE("frequencies approach normalized Born probabilities at high exposure") {
    RandomSource rng(6);
    const DensityMatrix rho = DensityMatrix::pure(haar_random_state(8, rng));
    std::vector<PureState> projectors;
    for (int i = 0; i < 40; i++) {
        projectors.push_back(sample_stabilizer_state(3, rng));
    }
    auto records = simulate_counts(rho, projectors, 1e7, rng);
    double total_counts = 0.0;
    double total_p = 0.0;
    for (std::size_t i = 0; i < records.size(); i++) {
        total_counts += static_cast<double>(records[i].count);
        total_p += born_probability(rho, projectors[i]);
    }
    for (std::size_t i = 0; i < records.size(); i++) {
        const double f = static_cast<double>(records[i].count) / total_counts;
        CHECK(std::abs(f - born_probability(rho, projectors[i]) / total_p) < 1e-2);
    }
}

TEST_CASE("count simulation is deterministic per seed") {
    RandomSource setup(7);
    const DensityMatrix rho = DensityMatrix::pure(haar_random_state(4, setup));
    std::vector<PureState> projectors;
    for (int i = 0; i < 30; i++) {
        projectors.push_back(sample_stabilizer_state(2, setup));
    }
    RandomSource a(99);
    RandomSource b(99);
    auto ra = simulate_counts(rho, projectors, 1e3, a);
    auto rb = simulate_counts(rho, projectors, 1e3, b);
    for (std::size_t i = 0; i < ra.size(); i++) {
        CHECK(ra[i].count == rb[i].count);
    }
}

TEST_CASE("overlap projector hits the requested overlap") {
    RandomSource rng(8);
    const PureState psi = haar_random_state(8, rng);
    CHECK(same_ray(overlap_projector(psi, 1.0, rng), psi, 1e-12));
    for (int i = 0; i < 20; i++) {
        CHECK(std::abs(psi.inner(overlap_projector(psi, 0.0, rng))) < 1e-12);
    }
    std::vector<double> overlaps;
    for (int i = 0; i < 10000; i++) {
        OverlapProjector p = uniform_overlap_projector(psi, rng);
        CHECK(std::abs(psi.overlap(p.phi) - p.a) < 1e-12);
        CHECK(std::abs(p.phi.amplitudes().norm() - 1.0) < 1e-12);
        overlaps.push_back(psi.overlap(p.phi));
    }
    CHECK(ks_statistic(overlaps, [](double x) { return x; }) < ks_critical(overlaps.size(), 0.01));
    CHECK_THROWS_AS(overlap_projector(psi, 1.5, rng), Error);
}

TEST_CASE("Hermite-Gauss truncation order") {
    CHECK(hg_kmax(1) == 0);
    CHECK(hg_kmax(2) == 1);
    CHECK(hg_kmax(3) == 1);
    CHECK(hg_kmax(4) == 2);
    CHECK(hg_kmax(32) == 7);
}

TEST_CASE("Hermite-Gauss mode basis ordering") {
    for (std::size_t dim : {1, 2, 4, 8, 32}) {
        HGModeBasis basis(dim);
        REQUIRE(basis.dim() == dim);
        for (std::size_t j = 1; j < dim; j++) {
            const HGMode &a = basis.modes()[j - 1];
            const HGMode &b = basis.modes()[j];
            CHECK((a.order() < b.order() || (a.order() == b.order() && a.nx < b.nx)));
        }
        CHECK(basis.modes().back().order() == hg_kmax(dim));
    }
    HGModeBasis b4(4);
    CHECK(b4.modes()[0].nx == 0);
    CHECK(b4.modes()[1].nx == 0);
    CHECK(b4.modes()[1].my == 1);
    CHECK(b4.modes()[2].nx == 1);
    CHECK(b4.modes()[3].order() == 2);
}

TEST_CASE("Gouy phases") {
    HGModeBasis b2(2);
    Eigen::VectorXcd id = gouy_unitary(b2, 0.0);
    CHECK(std::abs(id[0] - 1.0) == 0.0);
    CHECK(std::abs(id[1] - 1.0) == 0.0);
    Eigen::VectorXcd pi = gouy_unitary(b2, std::numbers::pi);
    CHECK(std::abs(pi[0] + 1.0) < 1e-15);
    CHECK(std::abs(pi[1] - 1.0) < 1e-15);

    HGModeBasis b32(32);
    Eigen::VectorXcd u1 = gouy_unitary(b32, 0.4);
    Eigen::VectorXcd u2 = gouy_unitary(b32, 1.3);
    Eigen::VectorXcd u12 = gouy_unitary(b32, 1.7);
    CHECK((u1.cwiseProduct(u2) - u12).cwiseAbs().maxCoeff() < 1e-14);
    for (Eigen::Index j = 0; j < u1.size(); j++) {
        CHECK(std::abs(std::abs(u1[j]) - 1.0) < 1e-15);
    }
    RandomSource rng(9);
    PureState psi = haar_random_state(32, rng);
    CHECK(same_ray(apply_gouy(b32, 0.0, psi), psi, 1e-15));
    CHECK_THROWS_AS(apply_gouy(b2, 0.3, psi), Error);
}

TEST_CASE("experiment config validation names the field") {
    ExperimentConfig c;
    CHECK_NOTHROW(c.validate());
    c.projections = 0;
    CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("projections"), Error);
    c = {};
    c.exposure = -1.0;
    CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("exposure"), Error);
    c = {};
    c.qubits = 0;
    CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("qubits"), Error);
}
