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
 * Independent reference computations for the tests. Nothing here calls into
 * the bellsim kernels it is used to check: Kronecker products are scalar
 * loops, the exponential is a scaled-and-squared Taylor series, and partial
 * traces are explicit index sums.
 */

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            for (Eigen::Index k = 0; k < b.rows(); ++k)
                for (Eigen::Index l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return out;
}

inline Vector kron(const Vector &a, const Vector &b) {
    Vector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i)
        for (Eigen::Index k = 0; k < b.size(); ++k)
            out(i * b.size() + k) = a(i) * b(k);
    return out;
}

/// exp(-i theta h) by scaling and squaring a 40-term Taylor series.
inline Matrix taylor_expm(const Matrix &h, double theta, int terms = 40) {
    const Matrix a = Complex(0.0, -theta) * h;
    const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    while (norm / std::pow(2.0, squarings) > 0.5) {
        ++squarings;
    }
    const Matrix scaled = a / std::pow(2.0, squarings);
    Matrix term = Matrix::Identity(h.rows(), h.cols());
    Matrix sum = term;
    for (int k = 1; k < terms; ++k) {
        term = (term * scaled / static_cast<double>(k)).eval();
        sum += term;
    }
    for (int s = 0; s < squarings; ++s) {
        sum = (sum * sum).eval();
    }
    return sum;
}

/// Trace out every subsystem whose position is not in `keep` (sorted).
inline Matrix partial_trace(const Matrix &rho, const std::vector<std::size_t> &dims,
                            const std::vector<std::size_t> &keep) {
    const std::size_t n = dims.size();
    std::size_t total = 1;
    for (auto d : dims) total *= d;
    auto digits_of = [&](std::size_t idx) {
        std::vector<std::size_t> digits(n);
        for (std::size_t p = n; p-- > 0;) {
            digits[p] = idx % dims[p];
            idx /= dims[p];
        }
        return digits;
    };
    std::vector<bool> kept(n, false);
    std::size_t kd = 1;
    for (auto p : keep) {
        kept[p] = true;
        kd *= dims[p];
    }
    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(kd),
                              static_cast<Eigen::Index>(kd));
    for (std::size_t i = 0; i < total; ++i) {
        const auto di = digits_of(i);
        for (std::size_t j = 0; j < total; ++j) {
            const auto dj = digits_of(j);
            bool traced_equal = true;
            std::size_t ki = 0, kj = 0;
            for (std::size_t p = 0; p < n; ++p) {
                if (kept[p]) {
                    ki = ki * dims[p] + di[p];
                    kj = kj * dims[p] + dj[p];
                } else if (di[p] != dj[p]) {
                    traced_equal = false;
                }
            }
            if (traced_equal) {
                out(static_cast<Eigen::Index>(ki), static_cast<Eigen::Index>(kj)) +=
                    rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            }
        }
    }
    return out;
}

inline Matrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64 &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j)
            m(i, j) = Complex(g(rng), g(rng));
    return m;
}

/// (M + M^dagger) / 2 of a gaussian matrix.
inline Matrix random_hermitian(Eigen::Index dim, std::mt19937_64 &rng) {
    const Matrix m = random_matrix(dim, dim, rng);
    return 0.5 * (m + m.adjoint());
}

inline Vector random_state(Eigen::Index dim, std::mt19937_64 &rng) {
    Vector v = random_matrix(dim, 1, rng).col(0);
    return v / v.norm();
}

/// G G^dagger / tr(G G^dagger).
inline Matrix random_density(Eigen::Index dim, std::mt19937_64 &rng) {
    const Matrix g = random_matrix(dim, dim, rng);
    Matrix rho = g * g.adjoint();
    return rho / rho.trace().real();
}

inline double uniform(std::mt19937_64 &rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline double max_abs(const Matrix &m) { return m.cwiseAbs().maxCoeff(); }

/// Outcome probabilities (++, +-, -+, --) of the ideal measurement.
struct Ideal {
    double pp, pm, mp, mm;
};

inline Ideal ideal_probabilities(double alpha, double beta) {
    const double c = std::cos(alpha - beta);
    const double s = std::sin(alpha - beta);
    return {0.5 * c * c, 0.5 * s * s, 0.5 * s * s, 0.5 * c * c};
}

} // namespace oracle
