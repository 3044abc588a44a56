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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "speclocc/bench.hpp"
#include "speclocc/errors.hpp"

using namespace speclocc;

namespace {

SpectrumParams params_of(int d, std::initializer_list<double> values) {
    SpectrumParams params;
    params.d = d;
    params.p.resize(static_cast<int>(values.size()));
    int k = 0;
    for (double v : values) {
        params.p(k++) = v;
    }
    return params;
}

} // namespace

TEST_CASE("conditional_mse_closed_form") {
    SUBCASE("q = p reduces to the multinomial covariance over n_final") {
        const SpectrumParams params = params_of(3, {0.5, 0.3});
        Eigen::VectorXd q(3);
        q << 0.5, 0.3, 0.2;
        const Eigen::MatrixXd mse = conditional_mse_closed_form(q, params, 100);
        CHECK(mse(0, 0) == doctest::Approx(0.25 / 100));
        CHECK(mse(0, 1) == doctest::Approx(-0.15 / 100));
        CHECK(mse(1, 1) == doctest::Approx(0.21 / 100));
    }
    SUBCASE("worked d=2 example") {
        const SpectrumParams params = params_of(2, {0.7});
        Eigen::VectorXd q(2);
        q << 0.6, 0.4;
        const Eigen::MatrixXd mse = conditional_mse_closed_form(q, params, 100);
        CHECK(mse(0, 0) == doctest::Approx(0.0124).epsilon(1e-12));
    }
    SUBCASE("infinite n_final limit is the pure bias square") {
        const SpectrumParams params = params_of(2, {0.7});
        Eigen::VectorXd q(2);
        q << 0.6, 0.4;
        const Eigen::MatrixXd mse =
            conditional_mse_closed_form(q, params, 4000000000000LL);
        CHECK(mse(0, 0) == doctest::Approx(0.01).epsilon(1e-9));
    }
    SUBCASE("validation") {
        const SpectrumParams params = params_of(2, {0.7});
        Eigen::VectorXd q(2);
        q << 0.6, 0.4;
        CHECK_THROWS_AS(conditional_mse_closed_form(q, params, 0), ValidationError);
        Eigen::VectorXd bad(2);
        bad << 0.9, 0.4;
        CHECK_THROWS_AS(conditional_mse_closed_form(bad, params, 10), ValidationError);
    }
}

TEST_CASE("known-basis Monte Carlo matches the inverse QFI") {
    const SpectrumParams params = params_of(3, {0.5, 0.3});
    const Matrix frame = Matrix::Identity(3, 3);
    const MseReport report = mse_monte_carlo(params, frame, 10000, 0.6, 400,
                                             6061, Strategy::kKnownBasis);
    for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) {
            CHECK(std::abs(report.scaled_mse(k, l) - report.qcrb_target(k, l)) <=
                  4.0 * report.standard_errors(k, l));
        }
    }
    CHECK(report.qcrb_target(0, 0) == doctest::Approx(0.25));
    CHECK(report.qcrb_target(0, 1) == doctest::Approx(-0.15));
    CHECK(report.qcrb_target(1, 1) == doctest::Approx(0.21));
}

TEST_CASE("mse_monte_carlo reports are deterministic") {
    const SpectrumParams params = params_of(2, {0.7});
    const Matrix frame = Matrix::Identity(2, 2);
    const MseReport a =
        mse_monte_carlo(params, frame, 2000, 0.6, 2, 17, Strategy::kAdaptive);
    const MseReport b =
        mse_monte_carlo(params, frame, 2000, 0.6, 2, 17, Strategy::kAdaptive);
    CHECK(a.mse(0, 0) == b.mse(0, 0));
    CHECK(a.bias(0) == b.bias(0));
    CHECK(a.standard_errors(0, 0) == b.standard_errors(0, 0));
}

TEST_CASE("law of total expectation ties the conditional and unconditional MSE") {
    // Flip-free regime so the descending pairing never disagrees with the
    // frame pairing: d=2, p=(0.8,0.2), generous first stage.
    const SpectrumParams params = params_of(2, {0.8});
    const Matrix frame = Matrix::Identity(2, 2);
    const long long n = 20000;
    const double mu = 0.7;
    const long long trials = 500;

    const MseReport unconditional =
        mse_monte_carlo(params, frame, n, mu, trials, 881, Strategy::kAdaptive);

    // Independent first stages; average the exact conditional MSE over them.
    const Matrix rho = rho_from_spectrum(params, frame);
    const HermitianBasis basis = gell_mann_basis(2);
    const CopySplit split = split_copies(n, mu, 2);
    double sum = 0.0;
    double sum_sq = 0.0;
    const int outer = 500;
    for (int i = 0; i < outer; ++i) {
        RngStream rng(882, static_cast<std::uint64_t>(i));
        const TomographyEstimate first = plain_tomography(rho, split.n0, basis, rng);
        const Eigen::VectorXd q =
            projective_probs(rho, first.eigensystem.eigenvectors);
        const double value =
            conditional_mse_closed_form(q, params, split.n_final)(0, 0);
        sum += value;
        sum_sq += value * value;
    }
    const double conditional_mean = sum / outer;
    const double conditional_se =
        std::sqrt((sum_sq / outer - conditional_mean * conditional_mean) / outer);

    const double lhs = unconditional.mse(0, 0);
    const double rhs = conditional_mean;
    const double combined_se = std::hypot(
        unconditional.standard_errors(0, 0) / static_cast<double>(n), conditional_se);
    CHECK(std::abs(lhs - rhs) <= 3.0 * combined_se);
}

TEST_CASE("gap diagonal shrinks with N for mu above one half") {
    const SpectrumParams params = params_of(2, {0.7});
    const Matrix frame = Matrix::Identity(2, 2);
    const std::vector<long long> grid = {10000, 100000, 1000000};
    int monotone_seeds = 0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        std::vector<double> gaps;
        for (long long n : grid) {
            const MseReport report = mse_monte_carlo(params, frame, n, 0.7, 200,
                                                     3000 + seed, Strategy::kAdaptive);
            gaps.push_back(report.gap(0, 0));
        }
        if (gaps[0] > gaps[1] && gaps[1] > gaps[2]) {
            ++monotone_seeds;
        }
    }
    CHECK(monotone_seeds >= 3);
}

TEST_CASE("mu_threshold_sweep is exactly zero for the maximally mixed state") {
    const SpectrumParams params = params_of(2, {0.5});
    const Matrix frame = Matrix::Identity(2, 2);
    const std::vector<SweepCell> cells =
        mu_threshold_sweep(params, frame, {1000, 10000}, {0.3, 0.6}, 50, 11);
    REQUIRE(cells.size() == 4);
    for (const SweepCell &cell : cells) {
        CHECK(cell.scaled_bias_sq(0, 0) == 0.0);
        CHECK(cell.standard_errors(0, 0) == 0.0);
    }
}

TEST_CASE("mu_threshold_sweep shows growth below the mu threshold") {
    const SpectrumParams params = params_of(2, {0.7});
    const Matrix frame = Matrix::Identity(2, 2);
    const std::vector<SweepCell> cells = mu_threshold_sweep(
        params, frame, {1000, 10000, 100000}, {0.3}, 2000, 4242);
    REQUIRE(cells.size() == 3);
    CHECK(cells[0].scaled_bias_sq(0, 0) < cells[1].scaled_bias_sq(0, 0));
    CHECK(cells[1].scaled_bias_sq(0, 0) < cells[2].scaled_bias_sq(0, 0));
}

TEST_CASE("mu_threshold_sweep replays deterministically") {
    const SpectrumParams params = params_of(2, {0.7});
    const Matrix frame = Matrix::Identity(2, 2);
    const auto a = mu_threshold_sweep(params, frame, {1000}, {0.6}, 100, 5);
    const auto b = mu_threshold_sweep(params, frame, {1000}, {0.6}, 100, 5);
    CHECK(a[0].scaled_bias_sq(0, 0) == b[0].scaled_bias_sq(0, 0));
}
