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
/**
 * @file
 * Dense complex linear algebra used by the simulator: Kronecker products,
 * exponentials of Hermitian generators, density matrices and norms.
 */

#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace bellsim {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Largest total Hilbert dimension the dense kernels will build.
inline constexpr std::size_t kDefaultMaxDim = 4096;

/// Elementwise tolerance used to accept a matrix as Hermitian.
inline constexpr double kHermitianTol = 1e-12;

/// Kronecker product; throws ConfigError if either output dimension exceeds
/// `max_dim`.
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b,
                   std::size_t max_dim = kDefaultMaxDim);

/// Kronecker product of two kets.
StateVector kron(const StateVector &a, const StateVector &b,
                 std::size_t max_dim = kDefaultMaxDim);

/// max |M - M^dagger| over all entries.
double hermitian_defect(const ComplexMatrix &m);

bool is_hermitian(const ComplexMatrix &m, double tol = kHermitianTol);

/// Spectral decomposition h = V diag(e) V^dagger of a Hermitian matrix.
struct Spectrum {
    RealVector values;
    ComplexMatrix vectors;
};

/// Uses LAPACK (zheevr) when the library was built with it, Eigen otherwise.
/// Throws std::invalid_argument if `h` is not Hermitian within kHermitianTol.
Spectrum hermitian_spectrum(const ComplexMatrix &h);

/// exp(-i * theta * h) computed from the spectral decomposition of `h`.
/// Rejects non-Hermitian input with std::invalid_argument and oversized input
/// with ConfigError.
ComplexMatrix expm_hermitian(const ComplexMatrix &h, double theta,
                             std::size_t max_dim = kDefaultMaxDim);

/// Same, reusing a precomputed spectrum.
ComplexMatrix expm_hermitian(const Spectrum &spectrum, double theta);

/// exp(-i * theta * h) * psi without forming the exponential.
StateVector expm_hermitian_apply(const ComplexMatrix &h, double theta,
                                 const StateVector &psi,
                                 std::size_t max_dim = kDefaultMaxDim);

/// Frobenius norm of [a, b] = ab - ba.
double commutator_norm(const ComplexMatrix &a, const ComplexMatrix &b);

/// max |m(i,j)| over i != j.
double max_off_diagonal(const ComplexMatrix &m);

/// max |u u^dagger - I|.
double unitarity_defect(const ComplexMatrix &u);

/**
 * Density operator over some composite space.
 *
 * Construction checks hermiticity and unit trace against `tol`; positivity
 * is exposed through min_eigenvalue() because it needs a full
 * diagonalization, which is too expensive to run on every construction.
 */
class DensityMatrix {
  public:
    explicit DensityMatrix(ComplexMatrix entries, double tol = 1e-10);

    /// |psi><psi| for a normalized ket.
    static DensityMatrix from_pure(const StateVector &psi, double tol = 1e-10);

    [[nodiscard]] std::size_t dim() const {
        return static_cast<std::size_t>(entries_.rows());
    }
    [[nodiscard]] const ComplexMatrix &matrix() const { return entries_; }
    [[nodiscard]] Complex operator()(std::size_t i, std::size_t j) const {
        return entries_(static_cast<Eigen::Index>(i),
                        static_cast<Eigen::Index>(j));
    }

    [[nodiscard]] double trace() const { return entries_.trace().real(); }
    [[nodiscard]] double purity() const;
    [[nodiscard]] double min_eigenvalue() const;
    [[nodiscard]] double max_off_diagonal() const {
        return bellsim::max_off_diagonal(entries_);
    }

  private:
    ComplexMatrix entries_;
};

} // namespace bellsim
