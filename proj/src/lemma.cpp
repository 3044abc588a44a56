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

#include "speclocc/lemma.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "detail/reduction.hpp"
#include "speclocc/errors.hpp"
#include "speclocc/estimator.hpp"

namespace speclocc {

double SpectralStructure::lemma_constant() const {
    return 4.0 * (dim - 1) / gap;
}

SpectralStructure spectral_structure(const Matrix &rho, double merge_tol) {
    if (rho.rows() != rho.cols() || rho.rows() < 2) {
        throw ValidationError("spectral_structure: need a square matrix, d >= 2");
    }
    const EigenSystem sys = eig_hermitian(rho);
    const int d = sys.dim();

    SpectralStructure structure;
    structure.dim = d;

    // Eigenvalues are descending; chain-cluster values closer than merge_tol.
    int start = 0;
    for (int k = 1; k <= d; ++k) {
        const bool boundary =
            k == d || sys.eigenvalues(k - 1) - sys.eigenvalues(k) > merge_tol;
        if (!boundary) {
            continue;
        }
        const int size = k - start;
        double value = 0.0;
        Matrix projector = Matrix::Zero(d, d);
        for (int j = start; j < k; ++j) {
            value += sys.eigenvalues(j);
            projector += sys.eigenvectors.col(j) * sys.eigenvectors.col(j).adjoint();
        }
        structure.values.push_back(value / size);
        structure.projectors.push_back(std::move(projector));
        structure.degeneracies.push_back(size);
        start = k;
    }

    if (structure.distinct_count() < 2) {
        throw DegenerateModelError(
            "spectral_structure: state is maximally mixed within tolerance");
    }
    structure.gap = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a + 1 < structure.values.size(); ++a) {
        structure.gap =
            std::min(structure.gap, structure.values[a] - structure.values[a + 1]);
    }
    return structure;
}

PerturbedSigma perturbed_sigma(const Matrix &rho, double delta, RngStream &rng,
                               const HermitianBasis &basis) {
    if (delta < 0.0) {
        throw ValidationError("perturbed_sigma: delta must be nonnegative");
    }
    PerturbedSigma out;
    out.mode = static_cast<PerturbMode>(rng.next_below(3));
    if (delta == 0.0) {
        out.sigma = rho;
        return out;
    }
    const int d = static_cast<int>(rho.rows());
    const bool rotate =
        out.mode == PerturbMode::kRotation || out.mode == PerturbMode::kBoth;
    const bool shift =
        out.mode == PerturbMode::kShift || out.mode == PerturbMode::kBoth;

    Matrix shifted = rho;
    if (shift) {
        const EigenSystem sys = eig_hermitian(rho);
        Eigen::VectorXd g(d);
        for (int k = 0; k < d; ++k) {
            g(k) = rng.next_normal();
        }
        g.array() -= g.mean(); // trace-zero
        const double norm = g.norm();
        if (norm > 0.0) {
            g *= delta / norm;
            for (int k = 0; k < d; ++k) {
                shifted += g(k) * sys.eigenvectors.col(k) *
                           sys.eigenvectors.col(k).adjoint();
            }
        }
    }
    Matrix sigma = shifted;
    if (rotate) {
        Eigen::VectorXd eta(basis.size());
        for (int a = 0; a < basis.size(); ++a) {
            eta(a) = rng.next_normal();
        }
        const double norm = eta.norm();
        if (norm > 0.0) {
            eta *= delta / norm;
            const Matrix u = unitary_from_generators(eta, basis);
            sigma = u * shifted * u.adjoint();
        }
    }

    // Contract toward rho when the raw draw overshoots; the hypothesis only
    // cares about the distance, not the path.
    const double dist = hs_distance(rho, sigma);
    if (dist > delta) {
        sigma = rho + (0.999 * delta / dist) * (sigma - rho);
    }
    if (hs_distance(rho, sigma) > delta + 1e-12) {
        throw NumericError("perturbed_sigma: rescaling failed");
    }
    out.sigma = 0.5 * (sigma + sigma.adjoint());
    return out;
}

MatchingSets matching_sets(const SpectralStructure &structure,
                           const Eigen::VectorXd &sigma_values, double delta,
                           double slack) {
    const int n = structure.distinct_count();
    const int d = static_cast<int>(sigma_values.size());

    MatchingSets out;
    out.sets.assign(static_cast<std::size_t>(n), {});
    std::vector<int> memberships(static_cast<std::size_t>(d), 0);
    for (int a = 0; a < n; ++a) {
        for (int k = 0; k < d; ++k) {
            if (std::abs(structure.values[static_cast<std::size_t>(a)] -
                         sigma_values(k)) <= delta + slack) {
                out.sets[static_cast<std::size_t>(a)].push_back(k);
                ++memberships[static_cast<std::size_t>(k)];
            }
        }
    }
    out.nonempty_both_ways = true;
    for (const auto &set : out.sets) {
        if (set.empty()) {
            out.nonempty_both_ways = false;
        }
    }
    out.pairwise_disjoint = true;
    for (int k = 0; k < d; ++k) {
        if (memberships[static_cast<std::size_t>(k)] == 0) {
            out.nonempty_both_ways = false;
        }
        if (memberships[static_cast<std::size_t>(k)] > 1) {
            out.pairwise_disjoint = false;
        }
    }
    return out;
}

LemmaCheck check_lemma1(const Matrix &rho, const Matrix &sigma, double delta,
                        double slack) {
    const SpectralStructure structure = spectral_structure(rho);
    const int d = structure.dim;
    const double admissible = structure.gap / (1.0 + std::sqrt(static_cast<double>(d)));
    if (!(delta < admissible)) {
        throw HypothesisError("check_lemma1: delta must be below Delta/(1+sqrt(d))");
    }
    if (hs_distance(rho, sigma) > delta + 1e-12) {
        throw HypothesisError("check_lemma1: hs_distance(rho, sigma) exceeds delta");
    }

    const EigenSystem sig = eig_hermitian(sigma);
    const int n = structure.distinct_count();

    // overlaps(a, k) = <psi_k| Pi_a |psi_k> >= 0.
    Eigen::MatrixXd overlaps(n, d);
    for (int a = 0; a < n; ++a) {
        for (int k = 0; k < d; ++k) {
            const Complex v = sig.eigenvectors.col(k).dot(
                structure.projectors[static_cast<std::size_t>(a)] *
                sig.eigenvectors.col(k));
            overlaps(a, k) = std::max(0.0, v.real());
        }
    }

    LemmaCheck check;
    for (auto &m : check.margin) {
        m = -std::numeric_limits<double>::infinity();
    }

    // Point 1.
    for (int a = 0; a < n; ++a) {
        for (int k = 0; k < d; ++k) {
            const double lhs =
                std::abs(structure.values[static_cast<std::size_t>(a)] -
                         sig.eigenvalues(k)) *
                std::sqrt(overlaps(a, k));
            check.margin[0] = std::max(check.margin[0], lhs - delta);
        }
    }

    // Point 2: matching sets nonempty in both directions and disjoint.
    const MatchingSets sets = matching_sets(structure, sig.eigenvalues, delta, slack);
    {
        double worst = -std::numeric_limits<double>::infinity();
        for (int a = 0; a < n; ++a) {
            double best = std::numeric_limits<double>::infinity();
            for (int k = 0; k < d; ++k) {
                best = std::min(best,
                                std::abs(structure.values[static_cast<std::size_t>(a)] -
                                         sig.eigenvalues(k)));
            }
            worst = std::max(worst, best - delta);
        }
        for (int k = 0; k < d; ++k) {
            double best = std::numeric_limits<double>::infinity();
            for (int a = 0; a < n; ++a) {
                best = std::min(best,
                                std::abs(structure.values[static_cast<std::size_t>(a)] -
                                         sig.eigenvalues(k)));
            }
            worst = std::max(worst, best - delta);
        }
        check.margin[1] = worst;
        if (!sets.pairwise_disjoint) {
            check.margin[1] = std::numeric_limits<double>::infinity();
        }
    }

    // Point 3: vectors matched elsewhere are almost orthogonal to Pi_a.
    const double cross_bound = delta / (structure.gap - delta);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (b == a) {
                continue;
            }
            for (int k : sets.sets[static_cast<std::size_t>(b)]) {
                const double lhs = std::sqrt(overlaps(a, k));
                check.margin[2] = std::max(check.margin[2], lhs - cross_bound);
            }
        }
    }

    // Point 4: matched multiplicities equal degeneracies.
    {
        double worst = 0.0;
        for (int a = 0; a < n; ++a) {
            worst = std::max(
                worst, std::abs(static_cast<double>(
                                    sets.sets[static_cast<std::size_t>(a)].size()) -
                                structure.degeneracies[static_cast<std::size_t>(a)]));
        }
        check.margin[3] = worst;
    }

    // Point 5: Rayleigh quotients of matched vectors are delta^2-close.
    const double quad_bound = structure.lemma_constant() * delta * delta;
    for (int a = 0; a < n; ++a) {
        for (int k : sets.sets[static_cast<std::size_t>(a)]) {
            const Complex v =
                sig.eigenvectors.col(k).dot(rho * sig.eigenvectors.col(k));
            const double lhs =
                std::abs(structure.values[static_cast<std::size_t>(a)] - v.real());
            check.margin[4] = std::max(check.margin[4], lhs - quad_bound);
        }
    }

    for (int i = 0; i < 5; ++i) {
        check.violated[static_cast<std::size_t>(i)] =
            check.margin[static_cast<std::size_t>(i)] > slack;
    }
    return check;
}

namespace {

struct SpectrumDraw {
    Eigen::VectorXd eigenvalues; // length d, descending, with multiplicities
    bool degenerate = false;
    double gap = 0.0;
};

// Random spectrum with distinct cluster values separated by at least 0.05,
// optionally with a degenerate cluster pattern.
SpectrumDraw draw_spectrum(int d, RngStream &rng) {
    std::vector<std::vector<int>> patterns = {{std::vector<int>(static_cast<std::size_t>(d), 1)}};
    if (d == 3) {
        patterns.push_back({2, 1});
    } else if (d == 4) {
        patterns.push_back({2, 1, 1});
        patterns.push_back({2, 2});
        patterns.push_back({3, 1});
    }
    const std::vector<int> &pattern =
        patterns[rng.next_below(patterns.size())];
    const int n = static_cast<int>(pattern.size());

    SpectrumDraw draw;
    draw.degenerate = n < d;
    constexpr double kMinGap = 0.05;
    for (int attempt = 0; attempt < 10000; ++attempt) {
        Eigen::VectorXd cluster(n);
        double total = 0.0;
        for (int a = 0; a < n; ++a) {
            cluster(a) = 0.05 + rng.next_double();
            total += cluster(a) * pattern[static_cast<std::size_t>(a)];
        }
        cluster /= total;
        std::sort(cluster.data(), cluster.data() + n, std::greater<double>());
        double gap = std::numeric_limits<double>::infinity();
        for (int a = 0; a + 1 < n; ++a) {
            gap = std::min(gap, cluster(a) - cluster(a + 1));
        }
        if (gap < kMinGap || cluster(n - 1) < 0.01) {
            continue;
        }
        draw.gap = gap;
        draw.eigenvalues.resize(d);
        int pos = 0;
        for (int a = 0; a < n; ++a) {
            for (int copy = 0; copy < pattern[static_cast<std::size_t>(a)]; ++copy) {
                draw.eigenvalues(pos++) = cluster(a);
            }
        }
        return draw;
    }
    throw NumericError("draw_spectrum: rejection sampling failed");
}

} // namespace

ViolationReport run_lemma1_suite(long long samples, const std::vector<int> &dims,
                                 std::uint64_t seed) {
    if (samples < 1 || dims.empty()) {
        throw ValidationError("lemma suite: need samples >= 1 and a nonempty dim list");
    }
    for (int d : dims) {
        if (d < 2) {
            throw ValidationError("lemma suite: dimensions must be at least 2");
        }
    }

    std::vector<HermitianBasis> bases;
    bases.reserve(dims.size());
    for (int d : dims) {
        bases.push_back(gell_mann_basis(d));
    }

    std::vector<LemmaCheck> checks(static_cast<std::size_t>(samples));
    std::vector<char> degenerate(static_cast<std::size_t>(samples), 0);

    detail::parallel_for_index(samples, [&](long long i) {
        const std::size_t which = static_cast<std::size_t>(i) % dims.size();
        const int d = dims[which];
        const HermitianBasis &basis = bases[which];
        RngStream rng(seed, static_cast<std::uint64_t>(i));

        const SpectrumDraw spectrum = draw_spectrum(d, rng);
        degenerate[static_cast<std::size_t>(i)] = spectrum.degenerate ? 1 : 0;

        Eigen::VectorXd eta(basis.size());
        for (int a = 0; a < basis.size(); ++a) {
            eta(a) = rng.next_uniform(-2.0, 2.0);
        }
        const Matrix u = unitary_from_generators(eta, basis);
        Matrix rho = Matrix::Zero(d, d);
        for (int k = 0; k < d; ++k) {
            rho += spectrum.eigenvalues(k) * u.col(k) * u.col(k).adjoint();
        }

        const double admissible =
            spectrum.gap / (1.0 + std::sqrt(static_cast<double>(d)));
        const double delta = rng.next_double() * 0.98 * admissible;
        const PerturbedSigma perturbed = perturbed_sigma(rho, delta, rng, basis);
        checks[static_cast<std::size_t>(i)] =
            check_lemma1(rho, perturbed.sigma, delta);
    });

    ViolationReport report;
    report.samples_tested = samples;
    for (auto &m : report.worst_margins) {
        m = -std::numeric_limits<double>::infinity();
    }
    for (long long i = 0; i < samples; ++i) {
        report.degenerate_instances += degenerate[static_cast<std::size_t>(i)];
        const LemmaCheck &check = checks[static_cast<std::size_t>(i)];
        for (std::size_t point = 0; point < 5; ++point) {
            report.violations[point] += check.violated[point] ? 1 : 0;
            report.worst_margins[point] =
                std::max(report.worst_margins[point], check.margin[point]);
        }
    }
    return report;
}

double chernoff_bound(long long n, double lambda) {
    if (n < 1) {
        throw ValidationError("chernoff_bound: n must be at least 1");
    }
    if (lambda < 0.0) {
        throw ValidationError("chernoff_bound: lambda must be nonnegative");
    }
    return 2.0 * std::exp(-2.0 * lambda * lambda / static_cast<double>(n));
}

long double exact_binomial_two_sided_tail(long long n, double p, double lambda) {
    if (n < 1) {
        throw ValidationError("exact_binomial_two_sided_tail: n must be at least 1");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ValidationError("exact_binomial_two_sided_tail: p must lie in [0,1]");
    }
    if (p == 0.0 || p == 1.0) {
        return lambda <= 0.0 ? 1.0L : 0.0L;
    }
    const long double np = static_cast<long double>(n) * static_cast<long double>(p);
    const long double log_p = std::log(static_cast<long double>(p));
    const long double log_q = std::log(1.0L - static_cast<long double>(p));
    const long double lgn = std::lgamma(static_cast<long double>(n) + 1.0L);

    // Membership uses a hair of inward tolerance, so a k exactly at distance
    // lambda is never dropped to rounding; this can only enlarge the tail.
    const long double threshold = static_cast<long double>(lambda) - 1e-9L;
    long double tail = 0.0L;
    for (long long k = 0; k <= n; ++k) {
        const long double dist = std::fabs(static_cast<long double>(k) - np);
        if (dist < threshold) {
            continue;
        }
        const long double log_pmf =
            lgn - std::lgamma(static_cast<long double>(k) + 1.0L) -
            std::lgamma(static_cast<long double>(n - k) + 1.0L) +
            static_cast<long double>(k) * log_p +
            static_cast<long double>(n - k) * log_q;
        tail += std::exp(log_pmf);
    }
    return std::min(tail, 1.0L);
}

double tail_probability_bound(double epsilon, double n_total, double mu,
                              const SpectralStructure &structure, int d) {
    if (epsilon <= 0.0) {
        throw ValidationError("tail_probability_bound: epsilon must be positive");
    }
    if (structure.gap <= 0.0) {
        throw ValidationError("tail_probability_bound: structure must have a positive gap");
    }
    const double groups = static_cast<double>(d) * d - 1.0;
    const double c = structure.lemma_constant();
    const double exponent = -epsilon * std::pow(n_total, mu - 0.5) /
                            (2.0 * c * groups * groups);
    return 2.0 * groups * std::exp(exponent);
}

double empirical_tail(const SpectrumParams &params, const Matrix &frame,
                      long long n, double mu, double epsilon, long long trials,
                      std::uint64_t seed) {
    params.validate();
    if (trials < 1) {
        throw ValidationError("empirical_tail: trials must be at least 1");
    }
    const int d = params.d;
    const Matrix rho = rho_from_spectrum(params, frame);
    Eigen::VectorXd p_desc = params.full();
    std::sort(p_desc.data(), p_desc.data() + d, std::greater<double>());
    const HermitianBasis basis = gell_mann_basis(d);
    const CopySplit split = split_copies(n, mu, d);
    const double sqrt_n = std::sqrt(static_cast<double>(n));

    std::vector<double> exceed(static_cast<std::size_t>(trials));
    detail::parallel_for_index(trials, [&](long long r) {
        RngStream rng(seed, static_cast<std::uint64_t>(r));
        const TomographyEstimate first = plain_tomography(rho, split.n0, basis, rng);
        const Eigen::VectorXd q =
            projective_probs(rho, first.eigensystem.eigenvectors);
        double worst = 0.0;
        for (int k = 0; k < d; ++k) {
            worst = std::max(worst, sqrt_n * std::abs(q(k) - p_desc(k)));
        }
        exceed[static_cast<std::size_t>(r)] = worst >= epsilon ? 1.0 : 0.0;
    });
    return detail::pairwise_sum(exceed) / static_cast<double>(trials);
}

} // namespace speclocc
