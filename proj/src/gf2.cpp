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

#include "shadowkit/gf2.hpp"

#include <bit>
#include <string>

#include "shadowkit/error.hpp"

namespace shadowkit {

namespace {

std::size_t word_count(std::size_t bits) {
    return (bits + 63) / 64;
}

constexpr std::size_t kMaxFullRankAttempts = 10000;

}  // namespace

BitVector::BitVector(std::size_t size) : size_(size), words_(word_count(size), 0) {
}

BitVector::BitVector(std::initializer_list<int> bits) : BitVector(bits.size()) {
    std::size_t i = 0;
    for (int b : bits) {
        require(b == 0 || b == 1, ErrorCode::InvalidArgument, "bit values must be 0 or 1");
        set(i++, b == 1);
    }
}

void BitVector::set(std::size_t i, bool value) {
    std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (value) {
        words_[i >> 6] |= mask;
    } else {
        words_[i >> 6] &= ~mask;
    }
}

std::size_t BitVector::popcount() const {
    std::size_t total = 0;
    for (auto w : words_) {
        total += static_cast<std::size_t>(std::popcount(w));
    }
    return total;
}

bool BitVector::is_zero() const {
    for (auto w : words_) {
        if (w != 0) {
            return false;
        }
    }
    return true;
}

BitVector &BitVector::operator^=(const BitVector &other) {
    require(size_ == other.size_, ErrorCode::DimensionMismatch, "BitVector xor: length mismatch");
    for (std::size_t i = 0; i < words_.size(); i++) {
        words_[i] ^= other.words_[i];
    }
    return *this;
}

BitVector BitVector::random(std::size_t size, RandomSource &rng) {
    BitVector v(size);
    for (std::size_t i = 0; i < size; i++) {
        v.set(i, rng.bit());
    }
    return v;
}

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVector(cols)) {
    require(rows > 0 && cols > 0, ErrorCode::InvalidArgument, "BitMatrix must be nonempty");
}

BitMatrix::BitMatrix(std::initializer_list<std::initializer_list<int>> rows) {
    require(rows.size() > 0 && rows.begin()->size() > 0, ErrorCode::InvalidArgument, "BitMatrix must be nonempty");
    cols_ = rows.begin()->size();
    for (const auto &r : rows) {
        require(r.size() == cols_, ErrorCode::DimensionMismatch, "BitMatrix rows must have equal length");
        rows_.emplace_back(r);
    }
}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; i++) {
        m.set(i, i, true);
    }
    return m;
}

BitMatrix BitMatrix::random(std::size_t rows, std::size_t cols, RandomSource &rng) {
    BitMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; r++) {
        for (std::size_t c = 0; c < cols; c++) {
            m.set(r, c, rng.bit());
        }
    }
    return m;
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) {
    std::swap(rows_[a], rows_[b]);
}

void BitMatrix::xor_row_into(std::size_t src, std::size_t dst) {
    rows_[dst] ^= rows_[src];
}

std::size_t rank_gf2(const BitMatrix &m) {
    require(!m.empty(), ErrorCode::InvalidArgument, "rank_gf2: empty matrix");
    BitMatrix work = m;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < work.cols() && rank < work.rows(); col++) {
        std::size_t pivot = rank;
        while (pivot < work.rows() && !work.get(pivot, col)) {
            pivot++;
        }
        if (pivot == work.rows()) {
            continue;
        }
        work.swap_rows(rank, pivot);
        for (std::size_t r = 0; r < work.rows(); r++) {
            if (r != rank && work.get(r, col)) {
                work.xor_row_into(rank, r);
            }
        }
        rank++;
    }
    return rank;
}

BitVector matvec_gf2(const BitMatrix &m, const BitVector &v) {
    require(v.size() == m.cols(), ErrorCode::DimensionMismatch, "matvec_gf2: vector length must equal matrix cols");
    BitVector out(m.rows());
    for (std::size_t r = 0; r < m.rows(); r++) {
        const auto &row = m.row(r).words();
        const auto &vw = v.words();
        std::uint64_t acc = 0;
        for (std::size_t w = 0; w < row.size(); w++) {
            acc ^= row[w] & vw[w];
        }
        out.set(r, (std::popcount(acc) & 1) != 0);
    }
    return out;
}

bool quadratic_form_gf2(const BitMatrix &q, const BitVector &x) {
    require(q.rows() == q.cols(), ErrorCode::DimensionMismatch, "quadratic_form_gf2: Q must be square");
    require(x.size() == q.rows(), ErrorCode::DimensionMismatch, "quadratic_form_gf2: x length must equal dim Q");
    BitVector qx = matvec_gf2(q, x);
    return linear_form_gf2(x, qx).parity;
}

LinearForm linear_form_gf2(const BitVector &c, const BitVector &x) {
    require(c.size() == x.size(), ErrorCode::DimensionMismatch, "linear_form_gf2: length mismatch");
    std::size_t dot = 0;
    for (std::size_t w = 0; w < c.words().size(); w++) {
        dot += static_cast<std::size_t>(std::popcount(c.words()[w] & x.words()[w]));
    }
    return {(dot & 1) != 0, dot};
}

BitMatrix random_full_rank_matrix(std::size_t n, std::size_t k, RandomSource &rng) {
    require(k >= 1 && k <= n, ErrorCode::InvalidArgument, "random_full_rank_matrix: need 1 <= k <= n");
    for (std::size_t attempt = 0; attempt < kMaxFullRankAttempts; attempt++) {
        BitMatrix m = BitMatrix::random(n, k, rng);
        if (rank_gf2(m) == k) {
            return m;
        }
    }
    fail(ErrorCode::Numerical,
         "random_full_rank_matrix: no full-rank draw in " + std::to_string(kMaxFullRankAttempts) + " attempts");
}

}  // namespace shadowkit
