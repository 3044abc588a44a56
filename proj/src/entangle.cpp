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

#include "speclocc/entangle.hpp"

#include <cmath>

#include "speclocc/errors.hpp"

namespace speclocc {

void BipartitePureState::validate() const {
    if (d < 2 || amplitudes.rows() != d || amplitudes.cols() != d) {
        throw ValidationError("bipartite state: amplitudes must be d x d with d >= 2");
    }
    require_finite(amplitudes, "bipartite state");
    if (std::abs(amplitudes.squaredNorm() - 1.0) > 1e-12) {
        throw ValidationError("bipartite state: amplitudes must have unit norm");
    }
}

BipartitePureState state_from_schmidt(const SpectrumParams &params,
                                      const Matrix &unitary_a,
                                      const Matrix &unitary_b) {
    params.validate();
    const int d = params.d;
    const Eigen::VectorXd values = params.full();
    Matrix c = Matrix::Zero(d, d);
    for (int k = 0; k < d; ++k) {
        c(k, k) = std::sqrt(values(k));
    }
    if (unitary_a.size() != 0) {
        c = unitary_a * c;
    }
    if (unitary_b.size() != 0) {
        c = c * unitary_b.transpose();
    }
    BipartitePureState psi;
    psi.d = d;
    psi.amplitudes = std::move(c);
    psi.validate();
    return psi;
}

Matrix reduced_state(const BipartitePureState &psi) {
    psi.validate();
    return psi.amplitudes * psi.amplitudes.adjoint();
}

Eigen::VectorXd schmidt_spectrum(const BipartitePureState &psi) {
    const Matrix rho_a = reduced_state(psi);
    const EigenSystem sys = eig_hermitian(rho_a);
    Eigen::VectorXd values = sys.eigenvalues;
    for (int k = 0; k < values.size(); ++k) {
        // rho_A is positive semidefinite; anything below zero is round-off.
        values(k) = std::max(0.0, values(k));
    }
    if (std::abs(values.sum() - 1.0) > 1e-10) {
        throw NumericError("schmidt_spectrum: eigenvalues do not sum to one");
    }
    return values;
}

double entanglement_entropy(const Eigen::VectorXd &probs) {
    if (probs.size() < 1) {
        throw ValidationError("entanglement_entropy: empty probability vector");
    }
    double entropy = 0.0;
    double total = 0.0;
    for (int k = 0; k < probs.size(); ++k) {
        const double p = probs(k);
        if (p < -1e-12) {
            throw ValidationError("entanglement_entropy: negative probability entry");
        }
        if (p > 0.0) {
            entropy -= p * std::log2(p);
        }
        total += std::max(0.0, p);
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw ValidationError("entanglement_entropy: probabilities must sum to one");
    }
    return std::max(0.0, entropy);
}

double estimate_entanglement(const BipartitePureState &psi, long long n_total,
                             double mu, RngStream &rng) {
    const Matrix rho_a = reduced_state(psi);
    const HermitianBasis basis = gell_mann_basis(psi.d);
    const SpectrumEstimate estimate =
        adaptive_estimate(rho_a, n_total, mu, basis, rng);
    return entanglement_entropy(estimate.p_hat);
}

} // namespace speclocc
