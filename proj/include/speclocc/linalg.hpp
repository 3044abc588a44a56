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
 * Small-dimension complex Hermitian linear algebra: orthonormal traceless
 * generator bases, a cyclic Jacobi eigensolver, Hilbert-Schmidt distance,
 * and unitaries generated by Hermitian exponents.
 */

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace speclocc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Orthonormal traceless Hermitian generators T_1..T_{d^2-1} of su(d),
/// normalized so tr(T_a T_b) = delta_ab.
struct HermitianBasis {
    int dim = 0;
    std::vector<Matrix> generators;

    int size() const { return static_cast<int>(generators.size()); }
};

/// Generalized Gell-Mann construction. Ordering is fixed: the (d^2-d)/2
/// symmetric off-diagonal generators first, then the (d^2-d)/2 antisymmetric
/// ones, then the d-1 diagonal ones; off-diagonal blocks run over index
/// pairs (j,k), j < k, in lexicographic order. For d = 2 this yields the
/// Pauli matrices divided by sqrt(2), in the order x, y, z.
HermitianBasis gell_mann_basis(int d);

/// Eigenvalues sorted descending; column k of `eigenvectors` belongs to
/// eigenvalue k. Columns are orthonormal.
struct EigenSystem {
    Eigen::VectorXd eigenvalues;
    Matrix eigenvectors;

    int dim() const { return static_cast<int>(eigenvalues.size()); }
};

/// Full eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// The input is symmetrized as (H + H^dagger)/2 first, which absorbs
/// floating-point asymmetry from accumulation. Sweeps stop once every
/// off-diagonal magnitude falls below `tol * max(1, max|H_ij|)`; more than
/// `kJacobiMaxSweeps` sweeps raises ConvergenceError. Degenerate eigenspaces
/// come back with an arbitrary orthonormal basis.
EigenSystem eig_hermitian(const Matrix &h, double tol = 1e-13);

inline constexpr int kJacobiMaxSweeps = 100;

/// Hilbert-Schmidt distance sqrt(tr((A-B)^2)) between Hermitian matrices of
/// equal dimension.
double hs_distance(const Matrix &a, const Matrix &b);

/// exp(i * sum_a eta_a T_a), evaluated through the eigendecomposition of the
/// Hermitian exponent. Unitary to within the eigensolver's accuracy.
Matrix unitary_from_generators(const RealVector &eta, const HermitianBasis &basis);

/// True when the columns of `m` form an orthonormal family within `tol`
/// (max-norm deviation of the Gram matrix from the identity).
bool has_orthonormal_columns(const Matrix &m, double tol = 1e-10);

/// Raises ValidationError when entries are not all finite.
void require_finite(const Matrix &m, const char *what);

} // namespace speclocc
