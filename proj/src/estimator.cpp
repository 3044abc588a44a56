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

#include "speclocc/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "speclocc/errors.hpp"

namespace speclocc {

CopySplit split_copies(long long n_total, double mu, int d) {
    if (d < 2) {
        throw ValidationError("split_copies: dimension must be at least 2");
    }
    if (!(mu > 0.0 && mu < 1.0)) {
        throw ValidationError("split_copies: mu must lie in (0,1)");
    }
    const long long groups = static_cast<long long>(d) * d - 1;
    if (n_total < groups) {
        throw ValidationError("split_copies: fewer copies than generator groups");
    }
    CopySplit split;
    split.mu = mu;
    split.n0 = std::max<long long>(
        1, static_cast<long long>(std::floor(
               std::pow(static_cast<double>(n_total), mu) / static_cast<double>(groups))));
    split.n_initial = split.n0 * groups;
    split.n_final = n_total - split.n_initial;
    if (split.n_final <= 0) {
        throw ValidationError("split_copies: no copies left for the second stage");
    }
    return split;
}

TomographyEstimate plain_tomography(const Matrix &rho, long long n0,
                                    const HermitianBasis &basis, RngStream &rng) {
    if (n0 < 1) {
        throw ValidationError("plain_tomography: n0 must be at least 1");
    }
    require_finite(rho, "plain_tomography");
    const int d = basis.dim;
    const int generators = basis.size();

    TomographyEstimate estimate;
    estimate.n0 = n0;
    estimate.theta_hat.resize(generators);
    estimate.plus_counts.resize(static_cast<std::size_t>(generators));

    Matrix sigma = Matrix::Identity(d, d) / static_cast<double>(d);
    for (int a = 0; a < generators; ++a) {
        const Matrix &t = basis.generators[static_cast<std::size_t>(a)];
        // Outcome "+" of the binary measurement {(I + T_a)/2, (I - T_a)/2}
        // has probability (1 + tr(rho T_a))/2.
        const double theta = (rho * t).trace().real();
        const double prob = std::min(1.0, std::max(0.0, 0.5 * (1.0 + theta)));
        const long long plus = sample_binomial(n0, prob, rng);
        estimate.plus_counts[static_cast<std::size_t>(a)] = plus;
        const double theta_hat =
            2.0 * static_cast<double>(plus) / static_cast<double>(n0) - 1.0;
        estimate.theta_hat(a) = theta_hat;
        sigma += theta_hat * t;
    }
    estimate.sigma = std::move(sigma);
    estimate.eigensystem = eig_hermitian(estimate.sigma);
    return estimate;
}

SecondStage second_stage(const Matrix &rho, const Matrix &frame,
                         long long n_final, RngStream &rng) {
    if (n_final < 1) {
        throw ValidationError("second_stage: n_final must be at least 1");
    }
    const Eigen::VectorXd q = projective_probs(rho, frame);
    SecondStage stage;
    stage.counts = sample_multinomial(n_final, q, rng);
    stage.p_hat.resize(q.size());
    for (int k = 0; k < q.size(); ++k) {
        stage.p_hat(k) = static_cast<double>(stage.counts.counts[static_cast<std::size_t>(k)]) /
                         static_cast<double>(n_final);
    }
    return stage;
}

SpectrumEstimate adaptive_estimate(const Matrix &rho, long long n_total, double mu,
                                   const HermitianBasis &basis, RngStream &rng) {
    const CopySplit split = split_copies(n_total, mu, basis.dim);
    const TomographyEstimate first = plain_tomography(rho, split.n0, basis, rng);

    // Eigenvectors come back sorted by descending eigenvalue of sigma.
    const SecondStage second =
        second_stage(rho, first.eigensystem.eigenvectors, split.n_final, rng);

    SpectrumEstimate estimate;
    estimate.split = split;
    estimate.second_stage_counts = second.counts;
    estimate.sigma_eigenvalues = first.eigensystem.eigenvalues;

    estimate.p_hat = second.p_hat;
    std::sort(estimate.p_hat.data(), estimate.p_hat.data() + estimate.p_hat.size(),
              std::greater<double>());

    const int d = basis.dim;
    double min_gap = std::numeric_limits<double>::infinity();
    for (int k = 0; k + 1 < d; ++k) {
        min_gap = std::min(min_gap, first.eigensystem.eigenvalues(k) -
                                        first.eigensystem.eigenvalues(k + 1));
    }
    const double noise_scale =
        std::sqrt(static_cast<double>(basis.size()) / static_cast<double>(split.n0));
    estimate.close_eigenvalues = min_gap < 2.0 * noise_scale;
    return estimate;
}

} // namespace speclocc
