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

#include "shadowkit/stabilizer.hpp"

#include <bit>
#include <cmath>
#include <unordered_set>

#include "shadowkit/error.hpp"

namespace shadowkit {

namespace {

constexpr double kNormTolerance = 1e-12;
constexpr std::size_t kMaxSampleQubits = 12;
constexpr std::size_t kMaxEnumerateQubits = 3;

const std::complex<double> kPowersOfI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

// Packed-integer view of the parameters. Vector component j of a length-m
// vector sits at integer bit (m - 1 - j), matching the index convention.
struct PackedParams {
    std::size_t n;
    std::size_t k;
    std::vector<std::uint64_t> r_cols;  // column j of R as an n-bit index
    std::vector<std::uint64_t> q_rows;  // row i of Q as a k-bit mask
    std::uint64_t c;
    std::uint64_t t;
};

std::uint64_t pack(const BitVector &v) {
    std::uint64_t out = 0;
    for (std::size_t j = 0; j < v.size(); j++) {
        if (v.get(j)) {
            out |= std::uint64_t{1} << (v.size() - 1 - j);
        }
    }
    return out;
}

PackedParams pack(const StabilizerParams &p) {
    PackedParams out{p.n, p.k, {}, {}, 0, pack(p.t)};
    if (p.k == 0) {
        return out;
    }
    out.r_cols.assign(p.k, 0);
    for (std::size_t i = 0; i < p.n; i++) {
        for (std::size_t j = 0; j < p.k; j++) {
            if (p.r.get(i, j)) {
                out.r_cols[j] |= std::uint64_t{1} << (p.n - 1 - i);
            }
        }
    }
    for (std::size_t i = 0; i < p.k; i++) {
        out.q_rows.push_back(pack(p.q.row(i)));
    }
    out.c = pack(p.c);
    return out;
}

Eigen::VectorXcd build_amplitudes(const PackedParams &p) {
    const std::size_t dim = std::size_t{1} << p.n;
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
    if (p.k == 0) {
        amps[static_cast<Eigen::Index>(p.t)] = 1.0;
        return amps;
    }
    const double scale = std::pow(2.0, -0.5 * static_cast<double>(p.k));
    const std::uint64_t count = std::uint64_t{1} << p.k;
    for (std::uint64_t x = 0; x < count; x++) {
        std::uint64_t index = p.t;
        unsigned quad = 0;
        for (std::size_t j = 0; j < p.k; j++) {
            if ((x >> (p.k - 1 - j)) & 1) {
                index ^= p.r_cols[j];
                quad ^= static_cast<unsigned>(std::popcount(p.q_rows[j] & x)) & 1U;
            }
        }
        unsigned dot = static_cast<unsigned>(std::popcount(p.c & x));
        unsigned power = (2 * quad + dot) & 3U;
        amps[static_cast<Eigen::Index>(index)] = scale * kPowersOfI[power];
    }
    return amps;
}

BigInt pow2(std::size_t e) {
    BigInt one = 1;
    return one << e;
}

}  // namespace

PureState::PureState(Eigen::VectorXcd amplitudes) : amplitudes_(std::move(amplitudes)) {
    require(amplitudes_.size() >= 1, ErrorCode::InvalidArgument, "PureState: empty amplitude vector");
    require(std::abs(amplitudes_.squaredNorm() - 1.0) <= kNormTolerance, ErrorCode::InvalidArgument,
            "PureState: amplitudes not normalized");
}

PureState PureState::normalized(Eigen::VectorXcd amplitudes) {
    double norm = amplitudes.norm();
    require(norm > 0.0 && std::isfinite(norm), ErrorCode::Numerical, "PureState: cannot normalize zero vector");
    amplitudes /= norm;
    return PureState(std::move(amplitudes));
}

PureState PureState::basis(std::size_t dim, std::size_t index) {
    require(index < dim, ErrorCode::InvalidArgument, "PureState::basis: index out of range");
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
    v[static_cast<Eigen::Index>(index)] = 1.0;
    return PureState(std::move(v));
}

std::size_t PureState::qubits() const {
    std::size_t d = dim();
    require(std::has_single_bit(d), ErrorCode::InvalidArgument, "PureState: dimension is not a power of two");
    return static_cast<std::size_t>(std::countr_zero(d));
}

std::complex<double> PureState::inner(const PureState &other) const {
    require(dim() == other.dim(), ErrorCode::DimensionMismatch, "PureState::inner: dimension mismatch");
    return amplitudes_.dot(other.amplitudes_);
}

double PureState::overlap(const PureState &other) const {
    return std::norm(inner(other));
}

PureState canonicalize_phase(const PureState &state) {
    const auto &a = state.amplitudes();
    for (Eigen::Index i = 0; i < a.size(); i++) {
        double mag = std::abs(a[i]);
        if (mag > kNormTolerance) {
            Eigen::VectorXcd out = a * (std::conj(a[i]) / mag);
            out[i] = mag;
            return PureState::normalized(std::move(out));
        }
    }
    fail(ErrorCode::Internal, "canonicalize_phase: zero state");
}

bool same_ray(const PureState &a, const PureState &b, double tol) {
    if (a.dim() != b.dim()) {
        return false;
    }
    auto ca = canonicalize_phase(a);
    auto cb = canonicalize_phase(b);
    return (ca.amplitudes() - cb.amplitudes()).cwiseAbs().maxCoeff() <= tol;
}

std::string stabilizer_key(const PureState &state) {
    const auto &a = state.amplitudes();
    std::size_t support = 0;
    for (Eigen::Index i = 0; i < a.size(); i++) {
        if (std::abs(a[i]) > 1e-9) {
            support++;
        }
    }
    require(std::has_single_bit(support), ErrorCode::InvalidArgument, "stabilizer_key: support is not a power of two");
    const double scale = std::sqrt(static_cast<double>(support));
    auto canonical = canonicalize_phase(state);
    std::string key(static_cast<std::size_t>(a.size()), '0');
    for (Eigen::Index i = 0; i < a.size(); i++) {
        std::complex<double> v = canonical.amplitudes()[i] * scale;
        if (std::abs(v) < 1e-6) {
            continue;
        }
        char code;
        if (std::abs(v - 1.0) < 1e-6) {
            code = '+';
        } else if (std::abs(v + 1.0) < 1e-6) {
            code = '-';
        } else if (std::abs(v - std::complex<double>(0, 1)) < 1e-6) {
            code = 'i';
        } else if (std::abs(v + std::complex<double>(0, 1)) < 1e-6) {
            code = 'j';
        } else {
            fail(ErrorCode::InvalidArgument, "stabilizer_key: amplitude not in {0, +-1, +-i} / sqrt(support)");
        }
        key[static_cast<std::size_t>(i)] = code;
    }
    return key;
}

void StabilizerParams::validate() const {
    require(n >= 1 && n <= 62, ErrorCode::InvalidArgument, "StabilizerParams: n out of range");
    require(k <= n, ErrorCode::InvalidArgument, "StabilizerParams: k must not exceed n");
    require(t.size() == n, ErrorCode::DimensionMismatch, "StabilizerParams: t must have length n");
    if (k == 0) {
        require(q.empty() && r.empty() && c.size() == 0, ErrorCode::InvalidArgument,
                "StabilizerParams: Q, c, R must be empty when k = 0");
        return;
    }
    require(q.rows() == k && q.cols() == k, ErrorCode::DimensionMismatch, "StabilizerParams: Q must be k x k");
    require(c.size() == k, ErrorCode::DimensionMismatch, "StabilizerParams: c must have length k");
    require(r.rows() == n && r.cols() == k, ErrorCode::DimensionMismatch, "StabilizerParams: R must be n x k");
    require(rank_gf2(r) == k, ErrorCode::InvalidArgument, "StabilizerParams: R must have rank k");
}

BigInt total_cardinality(std::size_t n) {
    require(n >= 1 && n <= 64, ErrorCode::InvalidArgument, "total_cardinality: need 1 <= n <= 64");
    BigInt result = pow2(n);
    for (std::size_t k = 1; k <= n; k++) {
        result *= pow2(k) + 1;
    }
    return result;
}

BigInt gaussian_binomial(std::size_t n, std::size_t k) {
    require(k <= n, ErrorCode::InvalidArgument, "gaussian_binomial: need k <= n");
    BigInt num = 1;
    BigInt den = 1;
    for (std::size_t j = 0; j < k; j++) {
        num *= pow2(n) - pow2(j);
        den *= pow2(k) - pow2(j);
    }
    require(num % den == 0, ErrorCode::Internal, "gaussian_binomial: inexact division");
    return num / den;
}

BigInt stratum_cardinality(std::size_t n, std::size_t k) {
    return pow2(n + k * (k + 1) / 2) * gaussian_binomial(n, k);
}

BigInt uniform_below(const BigInt &bound, RandomSource &rng) {
    require(bound > 0, ErrorCode::InvalidArgument, "uniform_below: bound must be positive");
    const std::size_t bits = boost::multiprecision::msb(bound) + 1;
    const std::size_t words = (bits + 63) / 64;
    const BigInt mask = pow2(bits) - 1;
    while (true) {
        BigInt draw = 0;
        for (std::size_t w = 0; w < words; w++) {
            draw <<= 64;
            draw |= rng.next_u64();
        }
        draw &= mask;
        if (draw < bound) {
            return draw;
        }
    }
}

std::size_t sample_support_exponent(std::size_t n, RandomSource &rng) {
    require(n >= 1, ErrorCode::InvalidArgument, "sample_support_exponent: need n >= 1");
    BigInt u = uniform_below(total_cardinality(n), rng);
    BigInt cumulative = 0;
    for (std::size_t k = 0; k <= n; k++) {
        cumulative += stratum_cardinality(n, k);
        if (u < cumulative) {
            return k;
        }
    }
    fail(ErrorCode::Internal, "sample_support_exponent: strata do not sum to C(n)");
}

PureState build_state(const StabilizerParams &params) {
    params.validate();
    return PureState(build_amplitudes(pack(params)));
}

StabilizerParams sample_stabilizer_params(std::size_t n, RandomSource &rng) {
    require(n >= 1 && n <= kMaxSampleQubits, ErrorCode::InvalidArgument, "sample_stabilizer_state: need 1 <= n <= 12");
    StabilizerParams p;
    p.n = n;
    p.k = sample_support_exponent(n, rng);
    if (p.k > 0) {
        p.q = BitMatrix::random(p.k, p.k, rng);
        p.c = BitVector::random(p.k, rng);
        p.r = random_full_rank_matrix(n, p.k, rng);
    }
    p.t = BitVector::random(n, rng);
    return p;
}

PureState sample_stabilizer_state(std::size_t n, RandomSource &rng) {
    return build_state(sample_stabilizer_params(n, rng));
}

std::vector<PureState> enumerate_all(std::size_t n) {
    require(n >= 1 && n <= kMaxEnumerateQubits, ErrorCode::InvalidArgument, "enumerate_all: need 1 <= n <= 3");
    std::vector<PureState> out;
    std::unordered_set<std::string> seen;
    auto emit = [&](const PackedParams &p) {
        PureState state(build_amplitudes(p));
        if (seen.insert(stabilizer_key(state)).second) {
            out.push_back(canonicalize_phase(state));
        }
    };

    const std::uint64_t vectors_n = std::uint64_t{1} << n;
    for (std::uint64_t t = 0; t < vectors_n; t++) {
        emit(PackedParams{n, 0, {}, {}, 0, t});
    }
    for (std::size_t k = 1; k <= n; k++) {
        const std::uint64_t r_patterns = std::uint64_t{1} << (n * k);
        const std::uint64_t q_patterns = std::uint64_t{1} << (k * k);
        const std::uint64_t c_patterns = std::uint64_t{1} << k;
        for (std::uint64_t rbits = 0; rbits < r_patterns; rbits++) {
            BitMatrix r(n, k);
            for (std::size_t b = 0; b < n * k; b++) {
                r.set(b / k, b % k, (rbits >> b) & 1);
            }
            if (rank_gf2(r) != k) {
                continue;
            }
            StabilizerParams shape;
            shape.n = n;
            shape.k = k;
            shape.q = BitMatrix(k, k);
            shape.c = BitVector(k);
            shape.r = r;
            shape.t = BitVector(n);
            PackedParams p = pack(shape);
            for (std::uint64_t qbits = 0; qbits < q_patterns; qbits++) {
                for (std::size_t i = 0; i < k; i++) {
                    p.q_rows[i] = (qbits >> (i * k)) & (c_patterns - 1);
                }
                for (std::uint64_t c = 0; c < c_patterns; c++) {
                    p.c = c;
                    for (std::uint64_t t = 0; t < vectors_n; t++) {
                        p.t = t;
                        emit(p);
                    }
                }
            }
        }
    }
    return out;
}

}  // namespace shadowkit
