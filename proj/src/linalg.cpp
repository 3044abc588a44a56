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

#include "speclocc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "speclocc/errors.hpp"

namespace speclocc {

void require_finite(const Matrix &m, const char *what) {
    if (!m.allFinite()) {
        throw ValidationError(std::string(what) + ": entries must be finite");
    }
}

bool has_orthonormal_columns(const Matrix &m, double tol) {
    const Matrix gram = m.adjoint() * m;
    const Matrix eye = Matrix::Identity(m.cols(), m.cols());
    return (gram - eye).cwiseAbs().maxCoeff() <= tol;
}

HermitianBasis gell_mann_basis(int d) {
    if (d < 2) {
        throw ValidationError("gell_mann_basis: dimension must be at least 2");
    }
    HermitianBasis basis;
    basis.dim = d;
    basis.generators.reserve(static_cast<std::size_t>(d) * d - 1);

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    // Symmetric block: (E_jk + E_kj)/sqrt(2), j < k lexicographic.
    for (int j = 0; j < d; ++j) {
        for (int k = j + 1; k < d; ++k) {
            Matrix t = Matrix::Zero(d, d);
            t(j, k) = inv_sqrt2;
            t(k, j) = inv_sqrt2;
            basis.generators.push_back(std::move(t));
        }
    }
    // Antisymmetric block: (-i E_jk + i E_kj)/sqrt(2).
    for (int j = 0; j < d; ++j) {
        for (int k = j + 1; k < d; ++k) {
            Matrix t = Matrix::Zero(d, d);
            t(j, k) = Complex(0.0, -inv_sqrt2);
            t(k, j) = Complex(0.0, inv_sqrt2);
            basis.generators.push_back(std::move(t));
        }
    }
    // Diagonal block: l-th generator is diag(1,..,1,-l,0,..,0)/sqrt(l(l+1))
    // with l ones, which is traceless and has unit Hilbert-Schmidt norm.
    for (int l = 1; l < d; ++l) {
        Matrix t = Matrix::Zero(d, d);
        const double norm = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
        for (int j = 0; j < l; ++j) {
            t(j, j) = norm;
        }
        t(l, l) = -static_cast<double>(l) * norm;
        basis.generators.push_back(std::move(t));
    }
    return basis;
}

namespace {

// One two-sided Jacobi rotation zeroing a(p,q). The pivot's phase is folded
// into the rotation so the 2x2 subproblem is real symmetric; the inner
// rotation uses the classic smaller-root tangent, which keeps |t| <= 1 and
// the sweep unconditionally stable.
void apply_rotation(Matrix &a, Matrix &v, int p, int q) {
    const Complex apq = a(p, q);
    const double r = std::abs(apq);
    if (r == 0.0) {
        return;
    }
    const Complex phase = apq / r;

    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double tau = (aqq - app) / (2.0 * r);
    // Smaller root of t^2 + 2*tau*t - 1 = 0.
    double t;
    if (tau >= 0.0) {
        t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
    } else {
        t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
    }
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    // Unitary in the (p,q) plane:
    //   U(p,p) = c            U(p,q) = s * phase
    //   U(q,p) = -s * conj(phase)   U(q,q) = c
    // so that U^dagger A U has a zero at (p,q).
    const int n = static_cast<int>(a.rows());
    for (int i = 0; i < n; ++i) {
        const Complex aip = a(i, p);
        const Complex aiq = a(i, q);
        a(i, p) = c * aip - s * std::conj(phase) * aiq;
        a(i, q) = s * phase * aip + c * aiq;
    }
    for (int j = 0; j < n; ++j) {
        const Complex apj = a(p, j);
        const Complex aqj = a(q, j);
        a(p, j) = c * apj - s * phase * aqj;
        a(q, j) = s * std::conj(phase) * apj + c * aqj;
    }
    // Clean the pivot pair exactly; round-off there would otherwise
    // accumulate across sweeps.
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = Complex(a(p, p).real(), 0.0);
    a(q, q) = Complex(a(q, q).real(), 0.0);

    for (int i = 0; i < n; ++i) {
        const Complex vip = v(i, p);
        const Complex viq = v(i, q);
        v(i, p) = c * vip - s * std::conj(phase) * viq;
        v(i, q) = s * phase * vip + c * viq;
    }
}

double max_offdiag(const Matrix &a) {
    double m = 0.0;
    const int n = static_cast<int>(a.rows());
    for (int p = 0; p < n; ++p) {
        for (int q = p + 1; q < n; ++q) {
            m = std::max(m, std::abs(a(p, q)));
        }
    }
    return m;
}

} // namespace

EigenSystem eig_hermitian(const Matrix &h, double tol) {
    if (h.rows() != h.cols() || h.rows() < 1) {
        throw ValidationError("eig_hermitian: matrix must be square and nonempty");
    }
    require_finite(h, "eig_hermitian");

    const int n = static_cast<int>(h.rows());
    Matrix a = 0.5 * (h + h.adjoint());
    Matrix v = Matrix::Identity(n, n);

    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    const double threshold = tol * scale;

    int sweeps = 0;
    while (max_offdiag(a) > threshold) {
        if (++sweeps > kJacobiMaxSweeps) {
            throw ConvergenceError("eig_hermitian: no convergence after 100 Jacobi sweeps");
        }
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                if (std::abs(a(p, q)) > threshold) {
                    apply_rotation(a, v, p, q);
                }
            }
        }
    }

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&a](int i, int j) { return a(i, i).real() > a(j, j).real(); });

    EigenSystem sys;
    sys.eigenvalues.resize(n);
    sys.eigenvectors.resize(n, n);
    for (int k = 0; k < n; ++k) {
        sys.eigenvalues(k) = a(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]).real();
        sys.eigenvectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
    }
    return sys;
}

double hs_distance(const Matrix &a, const Matrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ValidationError("hs_distance: dimension mismatch");
    }
    // For Hermitian A, B: tr((A-B)^2) = ||A-B||_F^2.
    return (a - b).norm();
}

Matrix unitary_from_generators(const RealVector &eta, const HermitianBasis &basis) {
    if (eta.size() != basis.size()) {
        throw ValidationError("unitary_from_generators: eta length must match basis size");
    }
    if (!eta.allFinite()) {
        throw ValidationError("unitary_from_generators: eta must be finite");
    }
    const int d = basis.dim;
    Matrix exponent = Matrix::Zero(d, d);
    for (int a = 0; a < basis.size(); ++a) {
        exponent += eta(a) * basis.generators[static_cast<std::size_t>(a)];
    }
    const EigenSystem sys = eig_hermitian(exponent);
    Matrix u = Matrix::Zero(d, d);
    for (int k = 0; k < d; ++k) {
        const Complex phase = std::exp(Complex(0.0, sys.eigenvalues(k)));
        u += phase * sys.eigenvectors.col(k) * sys.eigenvectors.col(k).adjoint();
    }
    return u;
}

} // namespace speclocc
