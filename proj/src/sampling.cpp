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

#include "speclocc/sampling.hpp"

#include <cmath>

#include "speclocc/errors.hpp"

namespace speclocc {

namespace {

// Philox4x32-10 round constants (multipliers and Weyl key increments).
constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void philox_round(std::array<std::uint32_t, 4> &ctr,
                         const std::array<std::uint32_t, 2> &key) {
    const std::uint64_t prod0 = static_cast<std::uint64_t>(kPhiloxM0) * ctr[0];
    const std::uint64_t prod1 = static_cast<std::uint64_t>(kPhiloxM1) * ctr[2];
    const std::uint32_t hi0 = static_cast<std::uint32_t>(prod0 >> 32);
    const std::uint32_t lo0 = static_cast<std::uint32_t>(prod0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(prod1 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(prod1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

std::array<std::uint32_t, 4> philox10(std::array<std::uint32_t, 4> ctr,
                                      std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        philox_round(ctr, key);
        key[0] += kPhiloxW0;
        key[1] += kPhiloxW1;
    }
    return ctr;
}

} // namespace

void RngStream::refill() {
    const std::array<std::uint32_t, 4> ctr = {
        static_cast<std::uint32_t>(draw_counter_),
        static_cast<std::uint32_t>(draw_counter_ >> 32),
        static_cast<std::uint32_t>(stream_index_),
        static_cast<std::uint32_t>(stream_index_ >> 32)};
    const std::array<std::uint32_t, 4> out = philox10(ctr, key_);
    ++draw_counter_;
    buffer_[0] = static_cast<std::uint64_t>(out[0]) |
                 (static_cast<std::uint64_t>(out[1]) << 32);
    buffer_[1] = static_cast<std::uint64_t>(out[2]) |
                 (static_cast<std::uint64_t>(out[3]) << 32);
    buffered_ = 2;
}

std::uint64_t RngStream::next_u64() {
    if (buffered_ == 0) {
        refill();
    }
    return buffer_[--buffered_];
}

double RngStream::next_double() {
    // Top 53 bits scaled into [0,1).
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t RngStream::next_below(std::uint64_t n) {
    if (n == 0) {
        throw ValidationError("next_below: n must be positive");
    }
    // Rejection sampling over the largest multiple of n; unbiased.
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % n);
    std::uint64_t u = next_u64();
    while (u >= limit) {
        u = next_u64();
    }
    return u % n;
}

double RngStream::next_normal() {
    if (have_cached_normal_) {
        have_cached_normal_ = false;
        return cached_normal_;
    }
    double u1 = next_double();
    while (u1 == 0.0) {
        u1 = next_double();
    }
    const double u2 = next_double();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    constexpr double two_pi = 6.283185307179586476925286766559;
    cached_normal_ = radius * std::sin(two_pi * u2);
    have_cached_normal_ = true;
    return radius * std::cos(two_pi * u2);
}

Eigen::VectorXd projective_probs(const Matrix &rho, const Matrix &frame) {
    if (rho.rows() != rho.cols() || frame.rows() != rho.rows() ||
        frame.cols() != rho.rows()) {
        throw ValidationError("projective_probs: dimension mismatch");
    }
    if (!has_orthonormal_columns(frame, 1e-10)) {
        throw ValidationError("projective_probs: frame columns must be orthonormal");
    }
    const int d = static_cast<int>(rho.rows());
    Eigen::VectorXd q(d);
    for (int k = 0; k < d; ++k) {
        const Complex value = frame.col(k).dot(rho * frame.col(k));
        if (std::abs(value.imag()) > 1e-12) {
            throw NumericError("projective_probs: probability has imaginary part");
        }
        q(k) = value.real();
    }
    // Eigendecomposition round-off can push entries infinitesimally outside
    // [0,1]; clamp, then renormalize so the vector sums exactly to one.
    for (int k = 0; k < d; ++k) {
        if (q(k) < -1e-12 || q(k) > 1.0 + 1e-12) {
            throw NumericError("projective_probs: probability outside [0,1]");
        }
        q(k) = std::min(std::max(q(k), 0.0), 1.0);
    }
    const double total = q.sum();
    if (std::abs(total - 1.0) > 1e-10) {
        throw NumericError("projective_probs: probabilities do not sum to one");
    }
    return q / total;
}

long long sample_binomial(long long n, double prob, RngStream &rng) {
    if (n < 0) {
        throw ValidationError("sample_binomial: n must be nonnegative");
    }
    if (!(prob >= 0.0 && prob <= 1.0)) {
        throw ValidationError("sample_binomial: prob must lie in [0,1]");
    }
    if (prob == 0.0) {
        return 0;
    }
    if (prob == 1.0) {
        return n;
    }
    long long successes = 0;
    for (long long i = 0; i < n; ++i) {
        successes += rng.next_bernoulli(prob) ? 1 : 0;
    }
    return successes;
}

OutcomeCounts sample_multinomial(long long n, const Eigen::VectorXd &probs, RngStream &rng) {
    if (n < 0) {
        throw ValidationError("sample_multinomial: n must be nonnegative");
    }
    const int cells = static_cast<int>(probs.size());
    if (cells < 1) {
        throw ValidationError("sample_multinomial: need at least one cell");
    }
    if (probs.minCoeff() < 0.0) {
        throw ValidationError("sample_multinomial: negative probability");
    }
    if (std::abs(probs.sum() - 1.0) > 1e-9) {
        throw ValidationError("sample_multinomial: probabilities must sum to one");
    }

    OutcomeCounts out;
    out.counts.assign(static_cast<std::size_t>(cells), 0);
    out.total = n;

    long long remaining = n;
    double mass_left = 1.0;
    for (int k = 0; k < cells - 1 && remaining > 0; ++k) {
        if (mass_left <= 0.0) {
            break;
        }
        const double conditional = std::min(1.0, std::max(0.0, probs(k) / mass_left));
        const long long draw = sample_binomial(remaining, conditional, rng);
        out.counts[static_cast<std::size_t>(k)] = draw;
        remaining -= draw;
        mass_left -= probs(k);
    }
    out.counts[static_cast<std::size_t>(cells - 1)] += remaining;
    return out;
}

} // namespace speclocc
