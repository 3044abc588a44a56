// Copyright 2026 The speclocc developers

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Reproducible randomness and measurement-outcome sampling.
 *
 * The generator is Philox4x32-10, a counter-based generator whose output is
 * a pure function of (key, counter). A stream is keyed by the 64-bit master
 * seed, with the 64-bit stream index occupying half of the 128-bit counter;
 * draws advance the other half. Identical (master_seed, stream_index) pairs
 * therefore reproduce identical sequences on any platform, and distinct
 * stream indices yield statistically independent streams, one per Monte
 * Carlo trial.
 */

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "speclocc/linalg.hpp"

namespace speclocc {

/// Counter-based random stream (Philox4x32-10).
class RngStream {
  public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
        : key_{static_cast<std::uint32_t>(master_seed),
               static_cast<std::uint32_t>(master_seed >> 32)},
          stream_index_(stream_index) {}

    std::uint64_t master_seed() const {
        return static_cast<std::uint64_t>(key_[0]) |
               (static_cast<std::uint64_t>(key_[1]) << 32);
    }
    std::uint64_t stream_index() const { return stream_index_; }

    /// Next 64 uniform bits.
    std::uint64_t next_u64();

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double();

    /// Bernoulli(prob) draw.
    bool next_bernoulli(double prob) { return next_double() < prob; }

    /// Uniform double in [lo, hi).
    double next_uniform(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    /// Uniform integer in [0, n).
    std::uint64_t next_below(std::uint64_t n);

    /// Standard normal via Box-Muller (uses two uniforms per pair).
    double next_normal();

  private:
    void refill();

    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_index_ = 0;
    std::uint64_t draw_counter_ = 0;
    std::array<std::uint64_t, 2> buffer_{};
    int buffered_ = 0;
    bool have_cached_normal_ = false;
    double cached_normal_ = 0.0;
};

/// Counts per measurement outcome; sum(counts) == total.
struct OutcomeCounts {
    std::vector<long long> counts;
    long long total = 0;
};

/// Outcome probabilities q_k = <v_k| rho |v_k> of the rank-one projective
/// measurement given by the orthonormal columns of `frame`. Values are
/// clamped to [0,1] and renormalized to sum exactly to one; the deviation
/// before renormalization must not exceed 1e-10.
Eigen::VectorXd projective_probs(const Matrix &rho, const Matrix &frame);

/// Exact Bin(n, prob) draw, implemented as n Bernoulli draws. Exactness and
/// portability beat speed here; n stays modest in every caller.
long long sample_binomial(long long n, double prob, RngStream &rng);

/// Exact multinomial draw by sequential conditional binomials.
OutcomeCounts sample_multinomial(long long n, const Eigen::VectorXd &probs, RngStream &rng);

} // namespace speclocc
