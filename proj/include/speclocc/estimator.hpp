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
 * The two-stage adaptive spectrum estimator. Stage one ("plain tomography")
 * measures each su(d) generator on an equal share of N^mu copies and
 * assembles a rough state estimate sigma; stage two measures the projective
 * frame given by sigma's eigenvectors on all remaining copies and estimates
 * the spectrum from outcome frequencies.
 */

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "speclocc/linalg.hpp"
#include "speclocc/sampling.hpp"

namespace speclocc {

/// Copy budget for the two stages. n_initial = n0 * (d^2 - 1) copies go to
/// stage one, the remaining n_final to stage two.
struct CopySplit {
    long long n0 = 0;
    long long n_initial = 0;
    long long n_final = 0;
    double mu = 0.0;
};

/// n0 = max(1, floor(N^mu / (d^2-1))). Raises ValidationError when nothing
/// is left for the second stage.
CopySplit split_copies(long long n_total, double mu, int d);

/// First-stage output: generator expectations, the assembled estimate
/// sigma = I/d + sum_a theta_hat_a T_a (Hermitian, unit trace, possibly not
/// positive), and its eigensystem.
struct TomographyEstimate {
    Eigen::VectorXd theta_hat;
    Matrix sigma;
    EigenSystem eigensystem;
    std::vector<long long> plus_counts;
    long long n0 = 0;
};

/// Measures (I + T_a)/2 vs (I - T_a)/2 on n0 copies per generator and sets
/// theta_hat_a = 2 w_a / n0 - 1 from the number w_a of "+" outcomes.
TomographyEstimate plain_tomography(const Matrix &rho, long long n0,
                                    const HermitianBasis &basis, RngStream &rng);

struct SecondStage {
    OutcomeCounts counts;
    Eigen::VectorXd p_hat; // counts / n_final, in frame order
};

/// Projective measurement in the orthonormal `frame` on n_final copies;
/// p_hat_k = N_k / n_final.
SecondStage second_stage(const Matrix &rho, const Matrix &frame,
                         long long n_final, RngStream &rng);

/// Final estimate. p_hat is sorted descending; comparisons against a true
/// spectrum use the same descending convention on both sides.
struct SpectrumEstimate {
    Eigen::VectorXd p_hat;
    OutcomeCounts second_stage_counts; // in frame order
    CopySplit split;
    Eigen::VectorXd sigma_eigenvalues;
    /// Set when sigma's smallest eigenvalue gap is below twice the
    /// first-stage noise scale sqrt((d^2-1)/n0); the descending pairing
    /// between estimated and true eigenvalues is then unreliable.
    bool close_eigenvalues = false;
};

SpectrumEstimate adaptive_estimate(const Matrix &rho, long long n_total, double mu,
                                   const HermitianBasis &basis, RngStream &rng);

} // namespace speclocc
