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

#ifndef SHADOWKIT_RANDOM_HPP
#define SHADOWKIT_RANDOM_HPP

#include <complex>
#include <cstdint>
#include <random>

namespace shadowkit {

/// Mixes a master seed with a stream index. Used to hand every parallel unit
/// (repetition, worker, pipeline stage) its own reproducible generator.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Seeded source of randomness. Not thread-safe: each concurrent caller owns
/// its own instance.
class RandomSource {
   public:
    explicit RandomSource(std::uint64_t seed) : engine_(seed), seed_(seed) {
    }

    /// Child generator for stream `index`, independent of this one's state.
    RandomSource derive(std::uint64_t index) const {
        return RandomSource(derive_seed(seed_, index));
    }

    std::uint64_t seed() const {
        return seed_;
    }

    std::uint64_t next_u64() {
        return engine_();
    }
    bool bit() {
        return (engine_() >> 63) != 0;
    }
    /// Uniform on [0, 1).
    double uniform();
    /// Standard normal.
    double normal();
    /// Complex number with independent standard normal real and imaginary parts.
    std::complex<double> complex_normal();
    /// Poisson with the given mean; mean 0 yields 0.
    std::uint64_t poisson(double mean);

    std::mt19937_64 &engine() {
        return engine_;
    }

   private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uint64_t seed_;
};

}  // namespace shadowkit

#endif
