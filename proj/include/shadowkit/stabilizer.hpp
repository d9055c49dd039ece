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

#ifndef SHADOWKIT_STABILIZER_HPP
#define SHADOWKIT_STABILIZER_HPP

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <string>
#include <vector>

#include "shadowkit/gf2.hpp"
#include "shadowkit/random.hpp"

namespace shadowkit {

using BigInt = boost::multiprecision::cpp_int;

/// Normalized pure state of a D-dimensional system (D = 2^n for qubits).
///
/// Computational-basis index convention: bit 0 of the integer index is the
/// last qubit, so the bit string of an index read left to right lists qubits
/// 1..n.
class PureState {
   public:
    /// Takes ownership of `amplitudes`; throws unless the squared norm is
    /// within 1e-12 of one.
    explicit PureState(Eigen::VectorXcd amplitudes);
    /// Scales `amplitudes` to unit norm first; throws on a zero vector.
    static PureState normalized(Eigen::VectorXcd amplitudes);
    static PureState basis(std::size_t dim, std::size_t index);

    std::size_t dim() const {
        return static_cast<std::size_t>(amplitudes_.size());
    }
    /// log2(dim); throws if dim is not a power of two.
    std::size_t qubits() const;
    const Eigen::VectorXcd &amplitudes() const {
        return amplitudes_;
    }
    std::complex<double> operator[](std::size_t i) const {
        return amplitudes_[static_cast<Eigen::Index>(i)];
    }

    /// <this|other>
    std::complex<double> inner(const PureState &other) const;
    /// |<this|other>|^2
    double overlap(const PureState &other) const;

   private:
    Eigen::VectorXcd amplitudes_;
};

/// Same state with the first nonzero amplitude (index order) made real positive.
PureState canonicalize_phase(const PureState &state);

/// Equality up to global phase, compared after canonicalization.
bool same_ray(const PureState &a, const PureState &b, double tol = 1e-12);

/// Exact identity key for a stabilizer state: canonicalize the global phase,
/// scale by sqrt(support size), and record each amplitude as one of
/// {0, +1, -1, +i, -i}. Throws if the state is not of that form.
std::string stabilizer_key(const PureState &state);

/// Parameter tuple (k, Q, c, R, t) of the amplitude form
///   |psi> = 2^{-k/2} sum_x (-1)^{x^T Q x} i^{c^T x} |R x + t>.
/// For k = 0, Q, c and R are empty and |psi> = |t>.
struct StabilizerParams {
    std::size_t n = 0;
    std::size_t k = 0;
    BitMatrix q;
    BitVector c;
    BitMatrix r;
    BitVector t;

    /// Throws unless shapes agree and rank R = k.
    void validate() const;
};

/// C(n) = 2^n prod_{k=1..n} (2^k + 1), the number of n-qubit stabilizer states.
BigInt total_cardinality(std::size_t n);

/// Number of k-dimensional subspaces of GF(2)^n.
BigInt gaussian_binomial(std::size_t n, std::size_t k);

/// C(n, k) = 2^{n + k(k+1)/2} [n choose k]_2, stabilizer states with 2^k
/// nonzero amplitudes.
BigInt stratum_cardinality(std::size_t n, std::size_t k);

/// Uniform integer in [0, bound) by rejection over the bit length of bound.
BigInt uniform_below(const BigInt &bound, RandomSource &rng);

/// k with probability exactly C(n, k) / C(n).
std::size_t sample_support_exponent(std::size_t n, RandomSource &rng);

/// Explicit amplitude vector of the state described by `params`.
PureState build_state(const StabilizerParams &params);

StabilizerParams sample_stabilizer_params(std::size_t n, RandomSource &rng);

/// Uniformly distributed n-qubit stabilizer state, 1 <= n <= 12.
PureState sample_stabilizer_state(std::size_t n, RandomSource &rng);

/// Every n-qubit stabilizer state (n <= 3), phase-canonical and deduplicated,
/// in order of first appearance over (k, R, Q, c, t).
std::vector<PureState> enumerate_all(std::size_t n);

}  // namespace shadowkit

#endif
