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
#include <set>
#include <vector>

#include "speclocc/errors.hpp"
#include "speclocc/lemma.hpp"

using namespace speclocc;

namespace {

Matrix diag_state(std::initializer_list<double> values) {
    Matrix rho = Matrix::Zero(static_cast<int>(values.size()),
                              static_cast<int>(values.size()));
    int k = 0;
    for (double v : values) {
        rho(k, k) = v;
        ++k;
    }
    return rho;
}

} // namespace

TEST_CASE("spectral_structure clusters eigenvalues") {
    SUBCASE("nondegenerate") {
        const SpectralStructure s = spectral_structure(diag_state({0.5, 0.3, 0.2}));
        CHECK(s.distinct_count() == 3);
        CHECK(s.gap == doctest::Approx(0.1));
        CHECK(s.degeneracies == std::vector<int>{1, 1, 1});
    }
    SUBCASE("degenerate") {
        const SpectralStructure s = spectral_structure(diag_state({0.4, 0.4, 0.2}));
        CHECK(s.distinct_count() == 2);
        CHECK(s.degeneracies == std::vector<int>{2, 1});
        CHECK(s.gap == doctest::Approx(0.2));
        CHECK((s.projectors[0] + s.projectors[1] - Matrix::Identity(3, 3))
                  .cwiseAbs()
                  .maxCoeff() < 1e-10);
    }
    SUBCASE("maximally mixed is rejected") {
        CHECK_THROWS_AS(
            spectral_structure(Matrix::Identity(3, 3) / 3.0),
            DegenerateModelError);
    }
    SUBCASE("worked d=2 constants") {
        const SpectralStructure s = spectral_structure(diag_state({0.75, 0.25}));
        CHECK(s.gap == doctest::Approx(0.5));
        CHECK(s.lemma_constant() == doctest::Approx(8.0));
        // Admissible radius Delta/(1+sqrt(2)).
        CHECK(s.gap / (1.0 + std::sqrt(2.0)) == doctest::Approx(0.20710678).epsilon(1e-6));
    }
}

TEST_CASE("perturbed_sigma respects the distance budget") {
    const HermitianBasis basis = gell_mann_basis(3);
    const Matrix rho = diag_state({0.5, 0.3, 0.2});
    RngStream rng(606, 0);

    SUBCASE("delta zero returns rho") {
        const PerturbedSigma p = perturbed_sigma(rho, 0.0, rng, basis);
        CHECK(hs_distance(rho, p.sigma) == 0.0);
    }
    SUBCASE("distance stays within delta") {
        for (int i = 0; i < 300; ++i) {
            const double delta = rng.next_double() * 0.03;
            const PerturbedSigma p = perturbed_sigma(rho, delta, rng, basis);
            CHECK(hs_distance(rho, p.sigma) <= delta + 1e-12);
            CHECK(std::abs(p.sigma.trace().real() - 1.0) < 1e-10);
        }
    }
    SUBCASE("all perturbation modes occur") {
        std::set<PerturbMode> seen;
        for (int i = 0; i < 1000 && seen.size() < 3; ++i) {
            RngStream draw_rng(607, static_cast<std::uint64_t>(i));
            seen.insert(perturbed_sigma(rho, 0.01, draw_rng, basis).mode);
        }
        CHECK(seen.size() == 3);
    }
}

TEST_CASE("check_lemma1 with sigma equal to rho is slack everywhere") {
    const Matrix rho = diag_state({0.5, 0.3, 0.2});
    const LemmaCheck check = check_lemma1(rho, rho, 0.02);
    CHECK_FALSE(check.any_violated());
    for (double margin : check.margin) {
        CHECK(margin <= 1e-9);
    }
}

TEST_CASE("check_lemma1 enforces its hypothesis") {
    const HermitianBasis basis = gell_mann_basis(2);
    const Matrix rho = diag_state({0.75, 0.25});
    // Admissible radius is about 0.2071.
    CHECK_THROWS_AS(check_lemma1(rho, rho, 0.21), HypothesisError);
    RngStream rng(608, 0);
    const PerturbedSigma p = perturbed_sigma(rho, 0.1, rng, basis);
    // Claimed delta below the actual distance.
    CHECK_THROWS_AS(check_lemma1(rho, p.sigma, 1e-6), HypothesisError);
    CHECK_NOTHROW(check_lemma1(rho, p.sigma, 0.2));
}

TEST_CASE("matching sets are disjoint and exhaustive on admissible instances") {
    const HermitianBasis basis = gell_mann_basis(3);
    const Matrix rho = diag_state({0.4, 0.4, 0.2});
    const SpectralStructure structure = spectral_structure(rho);
    const double admissible = structure.gap / (1.0 + std::sqrt(3.0));
    RngStream rng(609, 0);
    for (int i = 0; i < 100; ++i) {
        const double delta = rng.next_double() * 0.98 * admissible;
        const PerturbedSigma p = perturbed_sigma(rho, delta, rng, basis);
        const EigenSystem sig = eig_hermitian(p.sigma);
        const MatchingSets sets = matching_sets(structure, sig.eigenvalues, delta);
        CHECK(sets.nonempty_both_ways);
        CHECK(sets.pairwise_disjoint);
        std::size_t covered = 0;
        for (const auto &set : sets.sets) {
            covered += set.size();
        }
        CHECK(covered == 3);
        // Degeneracy matching (point 4) on this instance family.
        CHECK(sets.sets[0].size() == 2);
        CHECK(sets.sets[1].size() == 1);
    }
}

TEST_CASE("randomized lemma suite runs clean") {
    const ViolationReport report = run_lemma1_suite(2000, {2, 3, 4}, 987654321);
    CHECK(report.samples_tested == 2000);
    CHECK(report.degenerate_instances > 0);
    CHECK(report.clean());
    for (double margin : report.worst_margins) {
        CHECK(margin <= 1e-9);
    }
}

TEST_CASE("chernoff_bound values and validation") {
    CHECK(chernoff_bound(100, 0.0) == doctest::Approx(2.0));
    CHECK(chernoff_bound(100, 10.0) == doctest::Approx(2.0 * std::exp(-2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(chernoff_bound(0, 1.0), ValidationError);
    CHECK_THROWS_AS(chernoff_bound(10, -1.0), ValidationError);
}

TEST_CASE("exact_binomial_two_sided_tail against hand computations") {
    // n=4, p=0.5: Pr[|X-2| >= 2] = P(0) + P(4) = 2/16.
    CHECK(static_cast<double>(exact_binomial_two_sided_tail(4, 0.5, 2.0)) ==
          doctest::Approx(0.125).epsilon(1e-12));
    // Lambda zero captures everything.
    CHECK(static_cast<double>(exact_binomial_two_sided_tail(50, 0.3, 0.0)) ==
          doctest::Approx(1.0));
    // The spec's worked point: exact tail below the bound 2 e^{-2}.
    const long double tail = exact_binomial_two_sided_tail(100, 0.5, 10.0);
    CHECK(static_cast<double>(tail) <= 0.27067057);
    CHECK(static_cast<double>(tail) > 0.0);
}

TEST_CASE("chernoff bound dominates the exact tail on a spot grid") {
    for (long long n : {10LL, 100LL}) {
        for (double p : {0.1, 0.3, 0.5}) {
            for (long long lambda = 0; lambda <= n / 2; ++lambda) {
                const long double exact =
                    exact_binomial_two_sided_tail(n, p, static_cast<double>(lambda));
                CHECK(static_cast<double>(exact) <=
                      chernoff_bound(n, static_cast<double>(lambda)) + 1e-12);
            }
        }
    }
}

TEST_CASE("tail_probability_bound closed form and monotonicity") {
    const SpectralStructure structure = spectral_structure(diag_state({0.7, 0.3}));
    CHECK(structure.gap == doctest::Approx(0.4));
    CHECK(structure.lemma_constant() == doctest::Approx(10.0));

    const double bound = tail_probability_bound(1.0, 1e6, 0.6, structure, 2);
    const double expected = 6.0 * std::exp(-std::pow(1e6, 0.1) / 180.0);
    CHECK(bound == doctest::Approx(expected).epsilon(1e-12));

    double previous = tail_probability_bound(1.0, 1e2, 0.6, structure, 2);
    for (double n : {1e4, 1e6, 1e8, 1e10}) {
        const double current = tail_probability_bound(1.0, n, 0.6, structure, 2);
        CHECK(current < previous);
        previous = current;
    }
}

TEST_CASE("N^h times the tail bound vanishes for mu above one half") {
    const SpectralStructure structure = spectral_structure(diag_state({0.7, 0.3}));
    for (int h : {0, 1, 2}) {
        // mu = 0.9 makes the decay visible within N <= 1e12.
        double previous = std::numeric_limits<double>::infinity();
        bool decreasing_at_end = true;
        double last = 0.0;
        for (double n : {1e8, 1e9, 1e10, 1e11, 1e12}) {
            const double value =
                std::pow(n, h) * tail_probability_bound(1.0, n, 0.9, structure, 2);
            decreasing_at_end = decreasing_at_end && value < previous;
            previous = value;
            last = value;
        }
        CHECK(decreasing_at_end);
        CHECK(last < 1e-100);
    }
}

TEST_CASE("empirical_tail basics") {
    SpectrumParams mixed;
    mixed.d = 2;
    mixed.p = Eigen::VectorXd::Constant(1, 0.5);
    const Matrix frame = Matrix::Identity(2, 2);
    // Maximally mixed: q = p in any frame, so the statistic is exactly zero.
    CHECK(empirical_tail(mixed, frame, 1000, 0.6, 0.1, 200, 3) == 0.0);

    SpectrumParams skew;
    skew.d = 2;
    skew.p = Eigen::VectorXd::Constant(1, 0.7);
    const double f = empirical_tail(skew, frame, 1000, 0.6, 0.5, 500, 4);
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
    CHECK(empirical_tail(skew, frame, 1000, 0.6, 0.5, 500, 4) == f);
}

TEST_CASE("empirical_tail trends downward in N for mu above one half") {
    // The sequence is not strictly monotone at the small-N end (the frame
    // error saturates there), so the trend is judged by the majority of
    // pairwise orderings, per seed, over five seeds.
    SpectrumParams params;
    params.d = 2;
    params.p = Eigen::VectorXd::Constant(1, 0.7);
    const Matrix frame = Matrix::Identity(2, 2);
    const std::vector<long long> grid = {1000, 10000, 100000};
    int downward_seeds = 0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        std::vector<double> freq;
        for (long long n : grid) {
            freq.push_back(empirical_tail(params, frame, n, 0.6, 0.5, 4000, 100 + seed));
        }
        int kendall = 0;
        for (std::size_t i = 0; i < freq.size(); ++i) {
            for (std::size_t j = i + 1; j < freq.size(); ++j) {
                kendall += freq[i] > freq[j] ? 1 : (freq[i] < freq[j] ? -1 : 0);
            }
        }
        if (kendall > 0) {
            ++downward_seeds;
        }
    }
    CHECK(downward_seeds >= 3);
}
