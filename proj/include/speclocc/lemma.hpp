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
 * Numerical verification of the eigenvalue/eigenspace perturbation lemma
 * behind the second-stage frame choice, and of the binomial tail bound
 * chain that controls the first-stage error.
 *
 * The lemma: write rho = sum_a p_a Pi_a over its n >= 2 distinct
 * eigenvalues with spectral gap Delta = min |p_a - p_b|, and let sigma be
 * Hermitian with eigensystem (s_k, psi_k). If the Hilbert-Schmidt distance
 * between rho and sigma is at most delta < Delta/(1 + sqrt(d)), then
 *   1. |p_a - s_k| sqrt(<psi_k|Pi_a|psi_k>) <= delta for all a, k;
 *   2. the matching sets M_a = {k : |p_a - s_k| <= delta} are nonempty,
 *      cover every k, and are pairwise disjoint;
 *   3. for k outside M_a, sqrt(<psi_k|Pi_a|psi_k>) <= delta/(Delta - delta);
 *   4. |M_a| equals the degeneracy of p_a;
 *   5. for k in M_a, |p_a - <psi_k|rho|psi_k>| <= c(rho) delta^2 with
 *      c(rho) = 4(d-1)/Delta.
 */

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "speclocc/linalg.hpp"
#include "speclocc/model.hpp"
#include "speclocc/sampling.hpp"

namespace speclocc {

/// Distinct eigenvalues of a Hermitian matrix with their eigenprojectors,
/// degeneracies, and the spectral gap Delta.
struct SpectralStructure {
    int dim = 0;
    std::vector<double> values;      ///< distinct eigenvalues, descending
    std::vector<Matrix> projectors;  ///< orthogonal, complete
    std::vector<int> degeneracies;
    double gap = 0.0; ///< min distance between distinct eigenvalues

    int distinct_count() const { return static_cast<int>(values.size()); }

    /// 4(d-1)/Delta.
    double lemma_constant() const;
};

/// Clusters the eigenvalues of rho at `merge_tol` and builds projectors.
/// A state indistinguishable from I/d (a single cluster) raises
/// DegenerateModelError.
SpectralStructure spectral_structure(const Matrix &rho, double merge_tol = 1e-9);

enum class PerturbMode {
    kRotation, ///< conjugation by a random unitary only
    kShift,    ///< random trace-zero eigenvalue shift only
    kBoth,
};

struct PerturbedSigma {
    Matrix sigma;
    PerturbMode mode = PerturbMode::kBoth;
};

/// Random Hermitian unit-trace sigma with hs_distance(rho, sigma) <= delta,
/// built as U (rho + D) U^dagger from a trace-zero shift D commuting with
/// rho and a unitary U = exp(i eta . T), then contracted toward rho when the
/// raw perturbation overshoots delta. The three modes are drawn with equal
/// weight so eigenvalue motion and eigenvector motion are both exercised.
PerturbedSigma perturbed_sigma(const Matrix &rho, double delta, RngStream &rng,
                               const HermitianBasis &basis);

/// M_a = {k : |p_a - s_k| <= delta (+ slack)} for each distinct eigenvalue.
struct MatchingSets {
    std::vector<std::vector<int>> sets;
    bool nonempty_both_ways = false; ///< every a matched and every k matched
    bool pairwise_disjoint = false;
};

MatchingSets matching_sets(const SpectralStructure &structure,
                           const Eigen::VectorXd &sigma_values, double delta,
                           double slack = 1e-9);

/// Outcome of checking the five lemma points on one (rho, sigma, delta)
/// instance. margin[i] is the worst value of (left side - right side) over
/// point i's inequalities; the point is violated when it exceeds `slack`.
struct LemmaCheck {
    std::array<double, 5> margin{};
    std::array<bool, 5> violated{};

    bool any_violated() const {
        for (bool v : violated) {
            if (v) {
                return true;
            }
        }
        return false;
    }
};

/// Evaluates all five points with numerical slack. Inputs violating the
/// hypothesis (distance above delta, or delta >= Delta/(1+sqrt(d))) raise
/// HypothesisError; that is not a lemma violation.
LemmaCheck check_lemma1(const Matrix &rho, const Matrix &sigma, double delta,
                        double slack = 1e-9);

/// Aggregate of a randomized verification run.
struct ViolationReport {
    long long samples_tested = 0;
    long long degenerate_instances = 0;
    std::array<long long, 5> violations{};
    std::array<double, 5> worst_margins{};

    bool clean() const {
        for (long long v : violations) {
            if (v != 0) {
                return false;
            }
        }
        return true;
    }
};

/// Runs `samples` random admissible (rho, sigma, delta) instances, cycling
/// through `dims` and mixing nondegenerate with degenerate spectra.
ViolationReport run_lemma1_suite(long long samples, const std::vector<int> &dims,
                                 std::uint64_t seed);

/// Two-sided binomial concentration bound 2 exp(-2 lambda^2 / n) on
/// Pr[|X - np| >= lambda] for X ~ Bin(n, p).
double chernoff_bound(long long n, double lambda);

/// Exact two-sided tail Pr[|X - np| >= lambda] by direct summation of the
/// Bin(n, p) mass function in extended precision. Independent of
/// chernoff_bound; used to verify it.
long double exact_binomial_two_sided_tail(long long n, double p, double lambda);

/// Closed-form bound on Pr[sqrt(N) |q_k - p_k| >= epsilon] for the
/// two-stage scheme: 2 (d^2-1) exp(-epsilon N^(mu-1/2) / (2 c (d^2-1)^2))
/// with c = 4(d-1)/Delta. May exceed 1 (vacuous) at small N.
double tail_probability_bound(double epsilon, double n_total, double mu,
                              const SpectralStructure &structure, int d);

/// Fraction of `trials` first stages in which
/// max_k sqrt(N) |q_k - p_k| >= epsilon, with q the exact outcome
/// probabilities of the estimated frame and both sides sorted descending.
double empirical_tail(const SpectrumParams &params, const Matrix &frame,
                      long long n, double mu, double epsilon, long long trials,
                      std::uint64_t seed);

} // namespace speclocc
