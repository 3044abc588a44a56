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

#include "speclocc/model.hpp"

#include "speclocc/errors.hpp"

namespace speclocc {

Eigen::VectorXd SpectrumParams::full() const {
    Eigen::VectorXd all(d);
    all.head(d - 1) = p;
    all(d - 1) = last();
    return all;
}

bool SpectrumParams::in_simplex(double tol) const {
    if (d < 2 || p.size() != d - 1 || !p.allFinite()) {
        return false;
    }
    if (p.minCoeff() < -tol || p.maxCoeff() > 1.0 + tol) {
        return false;
    }
    return last() >= -tol;
}

bool SpectrumParams::interior(double eps) const {
    return in_simplex() && p.minCoeff() >= eps && last() >= eps;
}

void SpectrumParams::validate() const {
    if (d < 2) {
        throw ValidationError("spectrum: dimension must be at least 2");
    }
    if (p.size() != d - 1) {
        throw ValidationError("spectrum: expected d-1 entries");
    }
    if (!in_simplex()) {
        throw ValidationError(
            "spectrum: entries must lie in [0,1] and sum to at most 1");
    }
}

Matrix rho_from_spectrum(const SpectrumParams &params, const Matrix &eigenvectors) {
    params.validate();
    if (eigenvectors.rows() != params.d || eigenvectors.cols() != params.d) {
        throw ValidationError("eigenvectors: expected a d x d frame");
    }
    if (!has_orthonormal_columns(eigenvectors, 1e-10)) {
        throw ValidationError("eigenvectors: columns must be orthonormal");
    }
    const Eigen::VectorXd values = params.full();
    Matrix rho = Matrix::Zero(params.d, params.d);
    for (int k = 0; k < params.d; ++k) {
        rho += values(k) * eigenvectors.col(k) * eigenvectors.col(k).adjoint();
    }
    return rho;
}

Matrix sld(const SpectrumParams &params, int k) {
    params.validate();
    if (k < 0 || k >= params.d - 1) {
        throw ValidationError("sld: parameter index out of range");
    }
    const double pk = params.p(k);
    const double pd = params.last();
    if (pk < kInteriorEps || pd < kInteriorEps) {
        throw SingularModelError("sld: parameter on the simplex boundary");
    }
    Matrix lambda = Matrix::Zero(params.d, params.d);
    lambda(k, k) = 1.0 / pk;
    lambda(params.d - 1, params.d - 1) = -1.0 / pd;
    return lambda;
}

Eigen::MatrixXd qfi(const SpectrumParams &params) {
    params.validate();
    if (!params.interior()) {
        throw SingularModelError("qfi: parameter on the simplex boundary");
    }
    const int m = params.d - 1;
    const double inv_pd = 1.0 / params.last();
    Eigen::MatrixXd h = Eigen::MatrixXd::Constant(m, m, inv_pd);
    for (int k = 0; k < m; ++k) {
        h(k, k) += 1.0 / params.p(k);
    }
    return h;
}

Eigen::MatrixXd qfi_inverse(const SpectrumParams &params) {
    params.validate();
    const int m = params.d - 1;
    Eigen::MatrixXd inv(m, m);
    for (int k = 0; k < m; ++k) {
        for (int l = 0; l < m; ++l) {
            inv(k, l) = (k == l ? params.p(k) : 0.0) - params.p(k) * params.p(l);
        }
    }
    return inv;
}

} // namespace speclocc
