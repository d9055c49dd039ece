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

#ifndef SHADOWKIT_GF2_HPP
#define SHADOWKIT_GF2_HPP

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "shadowkit/random.hpp"

namespace shadowkit {

/// Fixed-length vector over GF(2), packed 64 bits per word. Bits past the
/// logical length are kept zero.
class BitVector {
   public:
    BitVector() = default;
    explicit BitVector(std::size_t size);
    BitVector(std::initializer_list<int> bits);

    std::size_t size() const {
        return size_;
    }
    bool get(std::size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1;
    }
    void set(std::size_t i, bool value);
    void flip(std::size_t i) {
        words_[i >> 6] ^= std::uint64_t{1} << (i & 63);
    }

    /// Number of ones.
    std::size_t popcount() const;
    bool is_zero() const;

    BitVector &operator^=(const BitVector &other);
    friend BitVector operator^(BitVector a, const BitVector &b) {
        a ^= b;
        return a;
    }
    bool operator==(const BitVector &other) const = default;

    const std::vector<std::uint64_t> &words() const {
        return words_;
    }
    std::vector<std::uint64_t> &words() {
        return words_;
    }

    static BitVector random(std::size_t size, RandomSource &rng);

   private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Dense row-major matrix over GF(2); each row is a packed BitVector.
/// The default-constructed 0x0 matrix stands for "absent" (support exponent
/// k = 0); explicitly sized matrices must be nonempty.
class BitMatrix {
   public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols);
    BitMatrix(std::initializer_list<std::initializer_list<int>> rows);

    static BitMatrix identity(std::size_t n);
    static BitMatrix random(std::size_t rows, std::size_t cols, RandomSource &rng);

    std::size_t rows() const {
        return rows_.size();
    }
    std::size_t cols() const {
        return cols_;
    }
    bool empty() const {
        return rows_.empty();
    }

    bool get(std::size_t r, std::size_t c) const {
        return rows_[r].get(c);
    }
    void set(std::size_t r, std::size_t c, bool value) {
        rows_[r].set(c, value);
    }

    const BitVector &row(std::size_t r) const {
        return rows_[r];
    }
    BitVector &row(std::size_t r) {
        return rows_[r];
    }
    void swap_rows(std::size_t a, std::size_t b);
    /// row[dst] ^= row[src]
    void xor_row_into(std::size_t src, std::size_t dst);

    bool operator==(const BitMatrix &other) const = default;

   private:
    std::size_t cols_ = 0;
    std::vector<BitVector> rows_;
};

/// Rank over GF(2) by Gaussian elimination on a copy; throws on an empty matrix.
std::size_t rank_gf2(const BitMatrix &m);

/// m * v with arithmetic mod 2.
BitVector matvec_gf2(const BitMatrix &m, const BitVector &v);

/// x^T Q x mod 2.
bool quadratic_form_gf2(const BitMatrix &q, const BitVector &x);

struct LinearForm {
    bool parity;     // c^T x mod 2
    std::size_t dot; // c^T x over the integers, 0..k
};

/// c^T x, both reduced mod 2 and as an integer count of shared ones. The
/// integer form feeds powers of i, which have period 4.
LinearForm linear_form_gf2(const BitVector &c, const BitVector &x);

/// Uniform draw from all n x k matrices of rank k: fill with fair bits, retry
/// whole matrices until full rank. Throws after 10,000 rejected draws.
BitMatrix random_full_rank_matrix(std::size_t n, std::size_t k, RandomSource &rng);

}  // namespace shadowkit

#endif
