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

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <complex>
#include <map>
#include <set>
#include <unordered_map>

#include "shadowkit/error.hpp"
#include "shadowkit/stabilizer.hpp"

using namespace shadowkit;
using cd = std::complex<double>;

namespace {

const cd I(0.0, 1.0);

// Amplitude vector straight from the sum over x in F_2^k, with unpacked
// integer loops. rank of R is not checked here; callers pass full-rank R.
// q[i][j], c[i], r[row][col], t[row] are 0/1.
Eigen::VectorXcd oracle_amplitudes(int n, int k, const std::vector<std::vector<int>> &q, const std::vector<int> &c,
                                   const std::vector<std::vector<int>> &r, const std::vector<int> &t,
                                   bool parity_exponent) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(1 << n);
    const double norm = std::pow(2.0, -k / 2.0);
    for (int xi = 0; xi < (1 << k); xi++) {
        std::vector<int> x(k);
        for (int j = 0; j < k; j++) {
            x[j] = (xi >> (k - 1 - j)) & 1;
        }
        int quad = 0;
        int dot = 0;
        for (int a = 0; a < k; a++) {
            dot += c[a] * x[a];
            for (int b = 0; b < k; b++) {
                quad += x[a] * q[a][b] * x[b];
            }
        }
        const int exponent = parity_exponent ? dot % 2 : dot % 4;
        int index = 0;
        for (int row = 0; row < n; row++) {
            int bit = t[row];
            for (int col = 0; col < k; col++) {
                bit ^= r[row][col] * x[col];
            }
            index = (index << 1) | bit;
        }
        v[index] += norm * ((quad % 2) ? -1.0 : 1.0) * std::pow(I, exponent);
    }
    return v;
}

int dense_rank(std::vector<std::vector<int>> d) {
    int rank = 0;
    const int rows = static_cast<int>(d.size());
    const int cols = rows ? static_cast<int>(d[0].size()) : 0;
    for (int c = 0; c < cols && rank < rows; c++) {
        int p = rank;
        while (p < rows && !d[p][c]) {
            p++;
        }
        if (p == rows) {
            continue;
        }
        std::swap(d[p], d[rank]);
        for (int r = 0; r < rows; r++) {
            if (r != rank && d[r][c]) {
                for (int j = 0; j < cols; j++) {
                    d[r][j] ^= d[rank][j];
                }
            }
        }
        rank++;
    }
    return rank;
}

std::vector<std::vector<int>> unpack(std::uint64_t bits, int rows, int cols) {
    std::vector<std::vector<int>> m(rows, std::vector<int>(cols));
    for (int i = 0; i < rows * cols; i++) {
        m[i / cols][i % cols] = (bits >> i) & 1;
    }
    return m;
}

// Distinct rays generated by the oracle over every parameter tuple.
std::set<std::string> oracle_keys(int n, bool parity_exponent) {
    std::set<std::string> keys;
    for (int k = 0; k <= n; k++) {
        for (std::uint64_t rb = 0; rb < (std::uint64_t{1} << (n * k)); rb++) {
            auto r = unpack(rb, n, k);
            if (k > 0 && dense_rank(r) != k) {
                continue;
            }
            for (std::uint64_t qb = 0; qb < (std::uint64_t{1} << (k * k)); qb++) {
                auto q = unpack(qb, k, k);
                for (int cb = 0; cb < (1 << k); cb++) {
                    std::vector<int> c(k);
                    for (int j = 0; j < k; j++) {
                        c[j] = (cb >> j) & 1;
                    }
                    for (int tb = 0; tb < (1 << n); tb++) {
                        std::vector<int> t(n);
                        for (int j = 0; j < n; j++) {
                            t[j] = (tb >> j) & 1;
                        }
                        keys.insert(stabilizer_key(PureState(oracle_amplitudes(n, k, q, c, r, t, parity_exponent))));
                    }
                }
            }
        }
    }
    return keys;
}

BitMatrix to_bits(const std::vector<std::vector<int>> &m) {
    BitMatrix out(m.size(), m[0].size());
    for (std::size_t i = 0; i < m.size(); i++) {
        for (std::size_t j = 0; j < m[0].size(); j++) {
            out.set(i, j, m[i][j] != 0);
        }
    }
    return out;
}

double chi_square_critical(double dof, double alpha) {
    boost::math::chi_squared dist(dof);
    return boost::math::quantile(boost::math::complement(dist, alpha));
}

}  // namespace

TEST_CASE("total cardinality") {
    CHECK(total_cardinality(1) == 6);
    CHECK(total_cardinality(2) == 60);
    CHECK(total_cardinality(3) == 1080);
    CHECK(total_cardinality(5) == 2423520);
    CHECK_NOTHROW(total_cardinality(64));
    CHECK_THROWS_AS(total_cardinality(0), Error);
    CHECK_THROWS_AS(total_cardinality(65), Error);
}

TEST_CASE("gaussian binomial") {
    for (std::size_t n = 0; n <= 6; n++) {
        CHECK(gaussian_binomial(n, 0) == 1);
    }
    CHECK(gaussian_binomial(2, 1) == 3);
    CHECK(gaussian_binomial(4, 2) == 35);
    CHECK(gaussian_binomial(5, 5) == 1);
    CHECK_THROWS_AS(gaussian_binomial(2, 3), Error);
}

TEST_CASE("gaussian binomial counts k-dimensional subspaces of F_2^4") {
    // A k-subspace of F_2^n has (2^k - 1)...(2^k - 2^{k-1}) ordered bases; count
    // full-rank 4 x k matrices and divide.
    for (int k = 1; k <= 4; k++) {
        std::uint64_t full_rank = 0;
        for (std::uint64_t b = 0; b < (std::uint64_t{1} << (4 * k)); b++) {
            full_rank += dense_rank(unpack(b, 4, k)) == k;
        }
        std::uint64_t bases = 1;
        for (int j = 0; j < k; j++) {
            bases *= (std::uint64_t{1} << k) - (std::uint64_t{1} << j);
        }
        CHECK(gaussian_binomial(4, k) == full_rank / bases);
    }
}

TEST_CASE("stratum cardinality") {
    CHECK(stratum_cardinality(1, 0) == 2);
    CHECK(stratum_cardinality(1, 1) == 4);
    CHECK(stratum_cardinality(2, 0) == 4);
    CHECK(stratum_cardinality(2, 1) == 24);
    CHECK(stratum_cardinality(2, 2) == 32);
    for (std::size_t n = 1; n <= 10; n++) {
        BigInt sum = 0;
        for (std::size_t k = 0; k <= n; k++) {
            sum += stratum_cardinality(n, k);
        }
        CHECK(sum == total_cardinality(n));
    }
}

TEST_CASE("stratum cardinality matches enumeration by support size") {
    for (std::size_t n = 1; n <= 3; n++) {
        std::map<std::size_t, std::size_t> by_k;
        for (const auto &s : enumerate_all(n)) {
            std::size_t support = 0;
            for (std::size_t i = 0; i < s.dim(); i++) {
                support += std::abs(s[i]) > 1e-9;
            }
            by_k[static_cast<std::size_t>(std::log2(support) + 0.5)]++;
        }
        for (std::size_t k = 0; k <= n; k++) {
            CHECK(stratum_cardinality(n, k) == by_k[k]);
        }
    }
}

TEST_CASE("uniform_below stays in range and covers every value") {
    RandomSource rng(4);
    std::vector<int> hits(7);
    for (int i = 0; i < 7000; i++) {
        BigInt u = uniform_below(7, rng);
        REQUIRE(u < 7);
        hits[static_cast<int>(u)]++;
    }
    for (int h : hits) {
        CHECK(h > 800);
    }
    const BigInt huge = total_cardinality(40);
    for (int i = 0; i < 100; i++) {
        CHECK(uniform_below(huge, rng) < huge);
    }
    CHECK_THROWS_AS(uniform_below(0, rng), Error);
}

TEST_CASE("support exponent distribution") {
    RandomSource rng(17);
    const int draws = 60000;
    std::vector<int> n1(2);
    std::vector<int> n2(3);
    for (int i = 0; i < draws; i++) {
        n1[sample_support_exponent(1, rng)]++;
        n2[sample_support_exponent(2, rng)]++;
    }
    auto within = [&](int observed, double p) {
        const double sigma = std::sqrt(draws * p * (1.0 - p));
        return std::abs(observed - draws * p) < 5.0 * sigma;
    };
    CHECK(within(n1[0], 1.0 / 3.0));
    CHECK(within(n1[1], 2.0 / 3.0));
    CHECK(within(n2[0], 4.0 / 60.0));
    CHECK(within(n2[1], 24.0 / 60.0));
    CHECK(within(n2[2], 32.0 / 60.0));
    for (std::size_t n = 1; n <= 12; n++) {
        for (int i = 0; i < 50; i++) {
            CHECK(sample_support_exponent(n, rng) <= n);
        }
    }
}

TEST_CASE("build_state examples") {
    StabilizerParams p;
    p.n = 2;
    p.k = 0;
    p.t = BitVector{0, 1};
    PureState s = build_state(p);
    CHECK(std::abs(s[1] - 1.0) < 1e-15);
    CHECK(std::abs(s[0]) + std::abs(s[2]) + std::abs(s[3]) == 0.0);

    const double h = 1.0 / std::sqrt(2.0);
    StabilizerParams y;
    y.n = 1;
    y.k = 1;
    y.q = BitMatrix{{0}};
    y.c = BitVector{1};
    y.r = BitMatrix{{1}};
    y.t = BitVector{0};
    PureState plus_i = build_state(y);
    CHECK(std::abs(plus_i[0] - h) < 1e-15);
    CHECK(std::abs(plus_i[1] - I * h) < 1e-15);

    StabilizerParams m = y;
    m.q = BitMatrix{{1}};
    m.c = BitVector{0};
    PureState minus = build_state(m);
    CHECK(std::abs(minus[0] - h) < 1e-15);
    CHECK(std::abs(minus[1] + h) < 1e-15);
}

TEST_CASE("build_state rejects bad parameters") {
    StabilizerParams p;
    p.n = 2;
    p.k = 2;
    p.q = BitMatrix(2, 2);
    p.c = BitVector(2);
    p.r = BitMatrix{{1, 1}, {1, 1}};
    p.t = BitVector(2);
    CHECK_THROWS_AS(build_state(p), Error);
    p.r = BitMatrix::identity(2);
    CHECK_NOTHROW(build_state(p));
    p.c = BitVector(3);
    CHECK_THROWS_AS(build_state(p), Error);
}

TEST_CASE("build_state agrees with the direct sum") {
    RandomSource rng(31);
    for (int trial = 0; trial < 300; trial++) {
        const std::size_t n = 1 + rng.next_u64() % 5;
        StabilizerParams p = sample_stabilizer_params(n, rng);
        const int k = static_cast<int>(p.k);
        std::vector<std::vector<int>> q(k, std::vector<int>(k)), r(n, std::vector<int>(k));
        std::vector<int> c(k), t(n);
        for (int i = 0; i < k; i++) {
            c[i] = p.c.get(i);
            for (int j = 0; j < k; j++) {
                q[i][j] = p.q.get(i, j);
            }
        }
        for (std::size_t i = 0; i < n; i++) {
            t[i] = p.t.get(i);
            for (int j = 0; j < k; j++) {
                r[i][j] = p.r.get(i, j);
            }
        }
        Eigen::VectorXcd expect = oracle_amplitudes(static_cast<int>(n), k, q, c, r, t, false);
        CHECK((build_state(p).amplitudes() - expect).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("enumeration sizes and the single-qubit states") {
    CHECK(enumerate_all(1).size() == 6);
    CHECK(enumerate_all(2).size() == 60);
    CHECK(enumerate_all(3).size() == 1080);
    CHECK_THROWS_AS(enumerate_all(4), Error);

    const double h = 1.0 / std::sqrt(2.0);
    std::vector<Eigen::Vector2cd> expected = {
        {1, 0}, {0, 1}, {h, h}, {h, -h}, {h, I * h}, {h, -I * h},
    };
    auto states = enumerate_all(1);
    for (const auto &e : expected) {
        int matches = 0;
        for (const auto &s : states) {
            matches += same_ray(s, PureState(Eigen::VectorXcd(e)));
        }
        CHECK(matches == 1);
    }
}

TEST_CASE("enumeration matches the direct-sum oracle") {
    for (int n = 1; n <= 2; n++) {
        std::set<std::string> from_library;
        for (const auto &s : enumerate_all(n)) {
            from_library.insert(stabilizer_key(s));
        }
        CHECK(from_library == oracle_keys(n, false));
    }
}

TEST_CASE("parity reading of the phase exponent reaches the same set of states") {
    // i^{a+b} = i^{a xor b} (-1)^{ab}: the extra sign is absorbed by Q, so both
    // readings generate every stabilizer state.
    for (int n = 1; n <= 2; n++) {
        CHECK(oracle_keys(n, true) == oracle_keys(n, false));
    }
}

TEST_CASE("each quadratic-form fingerprint comes from exactly two matrices Q (k = 2)") {
    std::map<int, int> multiplicity;
    for (std::uint64_t qb = 0; qb < 16; qb++) {
        BitMatrix q = to_bits(unpack(qb, 2, 2));
        int fingerprint = 0;
        for (int x = 0; x < 4; x++) {
            fingerprint |= quadratic_form_gf2(q, BitVector{(x >> 1) & 1, x & 1}) << x;
        }
        multiplicity[fingerprint]++;
    }
    CHECK(multiplicity.size() == 8);
    for (const auto &[fp, count] : multiplicity) {
        CHECK(count == 2);
    }
}

TEST_CASE("sampled states are uniform over the enumeration") {
    for (std::size_t n = 1; n <= 2; n++) {
        auto all = enumerate_all(n);
        std::unordered_map<std::string, std::size_t> index;
        for (std::size_t i = 0; i < all.size(); i++) {
            index[stabilizer_key(all[i])] = i;
        }
        const std::size_t draws = 10000 * all.size();
        std::vector<double> counts(all.size());
        RandomSource rng(100 + n);
        for (std::size_t d = 0; d < draws; d++) {
            auto it = index.find(stabilizer_key(sample_stabilizer_state(n, rng)));
            REQUIRE(it != index.end());
            counts[it->second]++;
        }
        const double expected = 10000.0;
        const double sigma = std::sqrt(draws * (1.0 / all.size()) * (1.0 - 1.0 / all.size()));
        double chi2 = 0.0;
        for (double c : counts) {
            CHECK(std::abs(c - expected) < 5.0 * sigma);
            chi2 += (c - expected) * (c - expected) / expected;
        }
        CHECK(chi2 < chi_square_critical(static_cast<double>(all.size() - 1), 0.01));
    }
}

TEST_CASE("sampled states have stabilizer structure") {
    RandomSource rng(77);
    for (std::size_t n = 1; n <= 5; n++) {
        for (int trial = 0; trial < 500; trial++) {
            StabilizerParams p = sample_stabilizer_params(n, rng);
            PureState s = build_state(p);
            std::vector<std::size_t> support;
            const double modulus = std::pow(2.0, -static_cast<double>(p.k) / 2.0);
            for (std::size_t i = 0; i < s.dim(); i++) {
                if (std::abs(s[i]) > 1e-12) {
                    support.push_back(i);
                    cd u = s[i] / modulus;
                    const bool unit_phase = std::abs(u - 1.0) < 1e-12 || std::abs(u + 1.0) < 1e-12 ||
                                            std::abs(u - I) < 1e-12 || std::abs(u + I) < 1e-12;
                    CHECK(unit_phase);
                }
            }
            CHECK(support.size() == (std::size_t{1} << p.k));
            CHECK(std::abs(s.amplitudes().norm() - 1.0) < 1e-12);
            std::set<std::size_t> lookup(support.begin(), support.end());
            bool closed = true;
            for (std::size_t a : support) {
                for (std::size_t b : support) {
                    for (std::size_t c : support) {
                        closed = closed && lookup.count(a ^ b ^ c) == 1;
                    }
                }
            }
            CHECK(closed);
        }
    }
}

TEST_CASE("sampling is limited to twelve qubits") {
    RandomSource rng(1);
    CHECK_THROWS_AS(sample_stabilizer_state(13, rng), Error);
    CHECK_THROWS_AS(sample_stabilizer_state(0, rng), Error);
    CHECK(sample_stabilizer_state(12, rng).dim() == 4096);
}

TEST_CASE("phase canonicalization") {
    const double h = 1.0 / std::sqrt(2.0);
    Eigen::VectorXcd v(2);
    v << I * h, -h;
    PureState c = canonicalize_phase(PureState(v));
    CHECK(std::abs(c[0] - h) < 1e-15);
    CHECK(std::abs(c[1] - I * h) < 1e-15);
    CHECK(same_ray(PureState(v), c));
    CHECK_FALSE(same_ray(PureState::basis(2, 0), PureState::basis(2, 1)));
    CHECK_THROWS_AS(PureState(Eigen::VectorXcd::Ones(2)), Error);
}
