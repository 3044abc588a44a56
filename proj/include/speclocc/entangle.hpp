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
 * Bipartite pure-state entanglement through the spectrum of the reduced
 * state: the Schmidt coefficients of |psi_AB> are the square roots of the
 * eigenvalues of rho_A, so entanglement entropy is estimable with
 * measurements on subsystem A alone.
 */

#pragma once

#include <Eigen/Dense>

#include "speclocc/estimator.hpp"
#include "speclocc/linalg.hpp"
#include "speclocc/model.hpp"
#include "speclocc/sampling.hpp"

namespace speclocc {

/// Pure state on H_A (x) H_B with equal local dimensions d; amplitudes(i,j)
/// is the coefficient of |i> (x) |e_j>, with unit Frobenius norm.
struct BipartitePureState {
    int d = 0;
    Matrix amplitudes;

    void validate() const;
};

/// State with Schmidt coefficients sqrt(p_k) and local bases rotated by the
/// given unitaries (identity when empty): amplitudes = U_A diag(sqrt p) U_B^T.
BipartitePureState state_from_schmidt(const SpectrumParams &params,
                                      const Matrix &unitary_a = Matrix(),
                                      const Matrix &unitary_b = Matrix());

/// rho_A = tr_B |psi><psi| = C C^dagger with C the amplitude matrix.
Matrix reduced_state(const BipartitePureState &psi);

/// Descending eigenvalues of the reduced state (the squared Schmidt
/// coefficients); clamped at zero, summing to one within 1e-10.
Eigen::VectorXd schmidt_spectrum(const BipartitePureState &psi);

/// -sum p_k log2 p_k in bits, with 0 log 0 = 0. Entries below -1e-12 are
/// rejected; the value lies in [0, log2 d].
double entanglement_entropy(const Eigen::VectorXd &probs);

/// Runs the full two-stage adaptive estimator on rho_A (measurements on
/// subsystem A only) and returns the plug-in entropy of the estimated
/// spectrum. No bias correction is applied.
double estimate_entanglement(const BipartitePureState &psi, long long n_total,
                             double mu, RngStream &rng);

} // namespace speclocc
