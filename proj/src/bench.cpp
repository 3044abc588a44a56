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

#include "speclocc/bench.hpp"

#include <algorithm>
#include <cmath>

#include "detail/reduction.hpp"
#include "speclocc/errors.hpp"

namespace speclocc {

namespace {

Eigen::VectorXd sorted_descending(const Eigen::VectorXd &v) {
    Eigen::VectorXd out = v;
    std::sort(out.data(), out.data() + out.size(), std::greater<double>());
    return out;
}

// Mean and Monte Carlo standard error of the mean by pairwise summation.
struct MeanWithError {
    double mean = 0.0;
    double stderr_of_mean = 0.0;
};

MeanWithError reduce(std::span<const double> values) {
    const auto count = static_cast<double>(values.size());
    MeanWithError out;
    out.mean = detail::pairwise_sum(values) / count;
    if (values.size() >= 2) {
        std::vector<double> sq(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) {
            const double centered = values[i] - out.mean;
            sq[i] = centered * centered;
        }
        const double var = detail::pairwise_sum(sq) / (count - 1.0);
        out.stderr_of_mean = std::sqrt(var / count);
    }
    return out;
}

// Joint descending reorder of eigenvalues and the matching frame columns.
Matrix frame_sorted_by_values(const Matrix &frame, const Eigen::VectorXd &values) {
    std::vector<int> order(static_cast<std::size_t>(values.size()));
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = static_cast<int>(i);
    }
    std::stable_sort(order.begin(), order.end(),
                     [&values](int a, int b) { return values(a) > values(b); });
    Matrix out(frame.rows(), frame.cols());
    for (int k = 0; k < frame.cols(); ++k) {
        out.col(k) = frame.col(order[static_cast<std::size_t>(k)]);
    }
    return out;
}

} // namespace

Eigen::MatrixXd conditional_mse_closed_form(const Eigen::VectorXd &q,
                                            const SpectrumParams &params,
                                            long long n_final) {
    params.validate();
    if (n_final < 1) {
        throw ValidationError("conditional_mse_closed_form: n_final must be at least 1");
    }
    if (q.size() != params.d || q.minCoeff() < -1e-12 ||
        std::abs(q.sum() - 1.0) > 1e-9) {
        throw ValidationError("conditional_mse_closed_form: q must be a length-d probability vector");
    }
    const int m = params.d - 1;
    Eigen::MatrixXd mse(m, m);
    for (int k = 0; k < m; ++k) {
        for (int l = 0; l < m; ++l) {
            const double variance =
                ((k == l ? q(k) : 0.0) - q(k) * q(l)) / static_cast<double>(n_final);
            const double bias_sq = (params.p(k) - q(k)) * (params.p(l) - q(l));
            mse(k, l) = variance + bias_sq;
        }
    }
    return mse;
}

MseReport mse_monte_carlo(const SpectrumParams &params, const Matrix &frame,
                          long long n, double mu, long long trials,
                          std::uint64_t seed, Strategy strategy) {
    params.validate();
    if (trials < 2) {
        throw ValidationError("trials: at least 2 Monte Carlo trials required");
    }
    const int d = params.d;
    const int m = d - 1;
    const Matrix rho = rho_from_spectrum(params, frame);
    const Eigen::VectorXd p_desc = sorted_descending(params.full());

    SpectrumParams sorted_params{d, p_desc.head(m)};

    const HermitianBasis basis = gell_mann_basis(d);
    // Known-basis mode measures in the true eigenframe, columns ordered by
    // descending true eigenvalue so outcome k estimates p_desc(k).
    const Matrix known_frame = frame_sorted_by_values(frame, params.full());

    if (strategy == Strategy::kAdaptive) {
        // Validates the split before spending any sampling effort.
        (void)split_copies(n, mu, d);
    }

    Eigen::MatrixXd errors(trials, m);
    detail::parallel_for_index(trials, [&](long long r) {
        RngStream rng(seed, static_cast<std::uint64_t>(r));
        Eigen::VectorXd p_hat;
        if (strategy == Strategy::kAdaptive) {
            p_hat = adaptive_estimate(rho, n, mu, basis, rng).p_hat;
        } else {
            p_hat = second_stage(rho, known_frame, n, rng).p_hat;
        }
        for (int k = 0; k < m; ++k) {
            errors(r, k) = p_hat(k) - p_desc(k);
        }
    });

    MseReport report;
    report.d = d;
    report.n = n;
    report.mu = strategy == Strategy::kAdaptive ? mu : 0.0;
    report.trials = trials;
    report.seed = seed;
    report.strategy = strategy;
    report.qcrb_target = qfi_inverse(sorted_params);
    report.mse.resize(m, m);
    report.scaled_mse.resize(m, m);
    report.gap.resize(m, m);
    report.standard_errors.resize(m, m);
    report.bias.resize(m);

    std::vector<double> products(static_cast<std::size_t>(trials));
    for (int k = 0; k < m; ++k) {
        for (int l = 0; l < m; ++l) {
            for (long long r = 0; r < trials; ++r) {
                products[static_cast<std::size_t>(r)] = errors(r, k) * errors(r, l);
            }
            const MeanWithError stats = reduce(products);
            report.mse(k, l) = stats.mean;
            report.scaled_mse(k, l) = static_cast<double>(n) * stats.mean;
            report.standard_errors(k, l) =
                static_cast<double>(n) * stats.stderr_of_mean;
        }
        for (long long r = 0; r < trials; ++r) {
            products[static_cast<std::size_t>(r)] = errors(r, k);
        }
        report.bias(k) = reduce(products).mean;
    }
    report.gap = report.scaled_mse - report.qcrb_target;
    return report;
}

std::vector<SweepCell> mu_threshold_sweep(const SpectrumParams &params,
                                          const Matrix &frame,
                                          const std::vector<long long> &n_grid,
                                          const std::vector<double> &mu_list,
                                          long long trials, std::uint64_t seed) {
    params.validate();
    if (n_grid.empty() || mu_list.empty()) {
        throw ValidationError("sweep: n_grid and mu_list must be nonempty");
    }
    if (trials < 2) {
        throw ValidationError("trials: at least 2 Monte Carlo trials required");
    }
    const int d = params.d;
    const int m = d - 1;
    const Matrix rho = rho_from_spectrum(params, frame);
    const Eigen::VectorXd p_desc = sorted_descending(params.full());
    const HermitianBasis basis = gell_mann_basis(d);

    std::vector<SweepCell> cells;
    cells.reserve(n_grid.size() * mu_list.size());

    std::uint64_t stream_base = 0;
    for (double mu : mu_list) {
        for (long long n : n_grid) {
            const CopySplit split = split_copies(n, mu, d);

            Eigen::MatrixXd errors(trials, m);
            detail::parallel_for_index(trials, [&](long long r) {
                RngStream rng(seed, stream_base + static_cast<std::uint64_t>(r));
                const TomographyEstimate first =
                    plain_tomography(rho, split.n0, basis, rng);
                const Eigen::VectorXd q =
                    projective_probs(rho, first.eigensystem.eigenvectors);
                for (int k = 0; k < m; ++k) {
                    errors(r, k) = q(k) - p_desc(k);
                }
            });
            stream_base += static_cast<std::uint64_t>(trials);

            SweepCell cell;
            cell.n = n;
            cell.mu = mu;
            cell.seed = seed;
            cell.trials = trials;
            cell.scaled_bias_sq.resize(m, m);
            cell.standard_errors.resize(m, m);
            std::vector<double> products(static_cast<std::size_t>(trials));
            for (int k = 0; k < m; ++k) {
                for (int l = 0; l < m; ++l) {
                    for (long long r = 0; r < trials; ++r) {
                        products[static_cast<std::size_t>(r)] =
                            static_cast<double>(n) * errors(r, k) * errors(r, l);
                    }
                    const MeanWithError stats = reduce(products);
                    cell.scaled_bias_sq(k, l) = stats.mean;
                    cell.standard_errors(k, l) = stats.stderr_of_mean;
                }
            }
            cells.push_back(std::move(cell));
        }
    }
    return cells;
}

} // namespace speclocc
