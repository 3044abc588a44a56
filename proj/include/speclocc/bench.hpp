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
 * Monte Carlo mean-square-error benchmarking of the spectrum estimator
 * against the inverse quantum Fisher information, plus the exact conditional
 * MSE decomposition and the mu-threshold sweep of the first-stage bias term.
 */

#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "speclocc/estimator.hpp"
#include "speclocc/model.hpp"

namespace speclocc {

/// Exact second-stage MSE conditional on a frame with outcome probabilities
/// q: (q_k delta_kl - q_k q_l)/n_final + (p_k - q_k)(p_l - q_l) over the
/// d-1 free parameters.
Eigen::MatrixXd conditional_mse_closed_form(const Eigen::VectorXd &q,
                                            const SpectrumParams &params,
                                            long long n_final);

enum class Strategy {
    kAdaptive,   ///< two-stage scheme; the frame is estimated
    kKnownBasis, ///< all copies measured in the supplied true eigenbasis
};

/// Monte Carlo estimate of the (d-1)x(d-1) MSE matrix of the spectrum
/// estimator, with per-entry Monte Carlo standard errors and the gap to the
/// inverse QFI. Errors are computed between descending-sorted estimate and
/// descending-sorted truth.
struct MseReport {
    int d = 0;
    long long n = 0;
    double mu = 0.0;
    long long trials = 0;
    std::uint64_t seed = 0;
    Strategy strategy = Strategy::kAdaptive;
    Eigen::MatrixXd mse;
    Eigen::MatrixXd scaled_mse; // n * mse
    Eigen::MatrixXd qcrb_target; // qfi_inverse at the (sorted) truth
    Eigen::MatrixXd gap;         // scaled_mse - qcrb_target
    Eigen::MatrixXd standard_errors; // of scaled_mse entries
    Eigen::VectorXd bias;
};

/// Runs `trials` independent estimates of rho_from_spectrum(params, frame).
/// Trial r consumes stream (seed, r); aggregation is a fixed pairwise tree,
/// so the report is identical no matter how trials are scheduled.
MseReport mse_monte_carlo(const SpectrumParams &params, const Matrix &frame,
                          long long n, double mu, long long trials,
                          std::uint64_t seed, Strategy strategy = Strategy::kAdaptive);

/// One (n, mu) cell of the first-stage bias sweep: Monte Carlo mean of
/// n * (q_k - p_k)(q_l - p_l) with q the exact outcome probabilities of the
/// estimated frame. No second stage is sampled.
struct SweepCell {
    long long n = 0;
    double mu = 0.0;
    std::uint64_t seed = 0;
    long long trials = 0;
    Eigen::MatrixXd scaled_bias_sq;
    Eigen::MatrixXd standard_errors;
};

std::vector<SweepCell> mu_threshold_sweep(const SpectrumParams &params,
                                          const Matrix &frame,
                                          const std::vector<long long> &n_grid,
                                          const std::vector<double> &mu_list,
                                          long long trials, std::uint64_t seed);

} // namespace speclocc
