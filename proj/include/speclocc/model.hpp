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
 * The parametric spectrum model: rho(p) with free eigenvalues p_1..p_{d-1}
 * and p_d implied, its symmetric logarithmic derivatives, and the quantum
 * Fisher information together with its closed-form inverse.
 */

#pragma once

#include <Eigen/Dense>

#include "speclocc/linalg.hpp"

namespace speclocc {

/// Operations whose Fisher information diverges reject parameters closer to
/// the simplex boundary than this.
inline constexpr double kInteriorEps = 1e-9;

/// The d-1 free eigenvalues of a d-dimensional state; the last eigenvalue is
/// 1 - sum(p).
struct SpectrumParams {
    int d = 0;
    Eigen::VectorXd p;

    double last() const { return 1.0 - p.sum(); }

    /// All d eigenvalues, the implied one appended.
    Eigen::VectorXd full() const;

    bool in_simplex(double tol = 1e-12) const;
    bool interior(double eps = kInteriorEps) const;

    /// Raises ValidationError unless the parameter lies in the simplex.
    void validate() const;
};

/// rho = sum_k p_k |v_k><v_k| with the supplied orthonormal columns as
/// eigenvectors (the last column carries the implied eigenvalue).
Matrix rho_from_spectrum(const SpectrumParams &params, const Matrix &eigenvectors);

/// Symmetric logarithmic derivative for parameter k (0-based, k < d-1), in
/// eigenbasis coordinates: diag with 1/p_k at k and -1/p_d at d-1.
/// Boundary parameters raise SingularModelError.
Matrix sld(const SpectrumParams &params, int k);

/// Quantum Fisher information H_kl = delta_kl / p_k + 1 / p_d on the
/// interior of the simplex.
Eigen::MatrixXd qfi(const SpectrumParams &params);

/// Closed-form inverse, valid on the whole simplex:
/// (H^-1)_kl = p_k delta_kl - p_k p_l. This is the multinomial covariance
/// structure of the free eigenvalues.
Eigen::MatrixXd qfi_inverse(const SpectrumParams &params);

} // namespace speclocc
