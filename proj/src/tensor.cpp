// Copyright 2026 The bellsim Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "bellsim/tensor.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "bellsim/errors.hpp"

#ifdef BELLSIM_HAVE_LAPACKE
#include <vector>

#include <lapacke.h>
#endif

namespace bellsim {

namespace {

void check_dim(std::size_t dim, std::size_t max_dim, const char *what) {
    if (dim > max_dim) {
        throw ConfigError(std::string(what) + ": dimension " +
                          std::to_string(dim) + " exceeds the maximum of " +
                          std::to_string(max_dim));
    }
}

} // namespace

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b,
                   std::size_t max_dim) {
    const auto rows = a.rows() * b.rows();
    const auto cols = a.cols() * b.cols();
    check_dim(static_cast<std::size_t>(rows), max_dim, "kron");
    check_dim(static_cast<std::size_t>(cols), max_dim, "kron");

    ComplexMatrix out(rows, cols);
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b;
        }
    }
    return out;
}

StateVector kron(const StateVector &a, const StateVector &b,
                 std::size_t max_dim) {
    check_dim(static_cast<std::size_t>(a.size() * b.size()), max_dim, "kron");
    StateVector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

double hermitian_defect(const ComplexMatrix &m) {
    if (m.rows() != m.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix &m, double tol) {
    return m.rows() == m.cols() && hermitian_defect(m) <= tol;
}

Spectrum hermitian_spectrum(const ComplexMatrix &h) {
    if (!is_hermitian(h)) {
        throw std::invalid_argument(
            "hermitian_spectrum: matrix is not Hermitian (defect " +
            std::to_string(hermitian_defect(h)) + ")");
    }
#ifdef BELLSIM_HAVE_LAPACKE
    // zheevr, not zheevd: some OpenBLAS builds return wrong eigenvectors from
    // the divide-and-conquer driver at n >= 512.
    const auto n = static_cast<lapack_int>(h.rows());
    ComplexMatrix work = h;
    Spectrum out{RealVector(n), ComplexMatrix(n, n)};
    std::vector<lapack_int> support(2 * static_cast<std::size_t>(n));
    lapack_int found = 0;
    const lapack_int info = LAPACKE_zheevr(
        LAPACK_COL_MAJOR, 'V', 'A', 'L', n,
        reinterpret_cast<lapack_complex_double *>(work.data()), n, 0.0, 0.0, 0,
        0, 0.0, &found, out.values.data(),
        reinterpret_cast<lapack_complex_double *>(out.vectors.data()), n,
        support.data());
    if (info != 0 || found != n) {
        throw InvariantError("hermitian_spectrum: zheevr failed (info " +
                             std::to_string(info) + ")");
    }
    return out;
#else
    const Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    if (solver.info() != Eigen::Success) {
        throw InvariantError("hermitian_spectrum: eigensolver did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
#endif
}

ComplexMatrix expm_hermitian(const ComplexMatrix &h, double theta,
                             std::size_t max_dim) {
    check_dim(static_cast<std::size_t>(h.rows()), max_dim, "expm_hermitian");
    return expm_hermitian(hermitian_spectrum(h), theta);
}

ComplexMatrix expm_hermitian(const Spectrum &spectrum, double theta) {
    const Eigen::VectorXcd phases =
        (Complex(0.0, -theta) * spectrum.values.cast<Complex>()).array().exp();
    return spectrum.vectors * phases.asDiagonal() * spectrum.vectors.adjoint();
}

StateVector expm_hermitian_apply(const ComplexMatrix &h, double theta,
                                 const StateVector &psi, std::size_t max_dim) {
    check_dim(static_cast<std::size_t>(h.rows()), max_dim,
              "expm_hermitian_apply");
    if (psi.size() != h.cols()) {
        throw std::invalid_argument("expm_hermitian_apply: shape mismatch");
    }
    const Spectrum spectrum = hermitian_spectrum(h);
    const Eigen::VectorXcd phases =
        (Complex(0.0, -theta) * spectrum.values.cast<Complex>()).array().exp();
    const StateVector coeffs = spectrum.vectors.adjoint() * psi;
    return spectrum.vectors * phases.cwiseProduct(coeffs);
}

double commutator_norm(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
        throw std::invalid_argument("commutator_norm: shape mismatch");
    }
    return (a * b - b * a).norm();
}

double max_off_diagonal(const ComplexMatrix &m) {
    double worst = 0.0;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            if (i != j) {
                worst = std::max(worst, std::abs(m(i, j)));
            }
        }
    }
    return worst;
}

double unitarity_defect(const ComplexMatrix &u) {
    const ComplexMatrix id = ComplexMatrix::Identity(u.rows(), u.cols());
    return (u * u.adjoint() - id).cwiseAbs().maxCoeff();
}

DensityMatrix::DensityMatrix(ComplexMatrix entries, double tol)
    : entries_(std::move(entries)) {
    if (entries_.rows() == 0 || entries_.rows() != entries_.cols()) {
        throw std::invalid_argument("DensityMatrix: matrix must be square");
    }
    if (const double defect = hermitian_defect(entries_); defect > tol) {
        throw InvariantError("DensityMatrix: hermiticity defect " +
                             std::to_string(defect));
    }
    if (const double tr = trace(); std::abs(tr - 1.0) > tol) {
        throw InvariantError("DensityMatrix: trace " + std::to_string(tr));
    }
}

DensityMatrix DensityMatrix::from_pure(const StateVector &psi, double tol) {
    return DensityMatrix(psi * psi.adjoint(), tol);
}

double DensityMatrix::purity() const {
    // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
    return entries_.squaredNorm();
}

double DensityMatrix::min_eigenvalue() const {
    const Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
        entries_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

} // namespace bellsim
